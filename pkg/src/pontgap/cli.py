"""Command-line interface: analyze, verify, sweep, examples.

Consumers are scripts and CI.  All documents go to stdout (or ``--out``)
in the deterministic format of :mod:`pontgap.instancefile`; diagnostics
go to stderr.  Exit codes: 0 ok, 1 expectation mismatch, 2 input error,
3 ill-posed interval (including an endpoint ambiguously close to an
eigenvalue), 4 bound violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import instancefile, linalg
from .errors import (
    EndpointInSpectrumError,
    IllPosedIntervalError,
    InstanceFormatError,
    PontgapError,
)
from .gen import GenConfig, builtin_fixtures, random_pair, random_space
from .indefinite import IndefiniteSpace, subspace_inertia, validate_space
from .instancefile import (
    SCHEMA_VERSION,
    InstanceRecord,
    dumps_instance,
    format_float,
    gap_report_node,
    interval_node,
    parse_instance,
    spectrum_node,
    stable_dumps,
    tolerance_node,
    witness_report_node,
)
from .linalg import DEFAULT_TOL, Tolerance
from .perturbation import OperatorPair, make_pair
from .spectral import (
    ENDPOINT_GUARD_SCALE,
    Interval,
    JSelfadjointOperator,
    gap_subspace,
    spectrum,
    validate_operator,
)
from .theorem import GapReport, proof_witness, verify_main_theorem

__all__ = ["main"]

EXIT_OK = 0
EXIT_EXPECTATION_MISMATCH = 1
EXIT_INPUT_ERROR = 2
EXIT_ILL_POSED_INTERVAL = 3
EXIT_BOUND_VIOLATION = 4

CSV_HEADER = "d,kplus,kminus,n,lower,upper,eig1,eig2,sig1,sig2,slack"

#: candidate sweep endpoints must clear both spectra by this multiple of
#: the larger endpoint guard band
_SWEEP_MARGIN_FACTOR = 100.0


def _tolerance(args) -> Tolerance:
    return Tolerance(rel=args.tol_rel, abs=args.tol_abs)


def _parse_cli_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise InstanceFormatError(
            f"--interval expects 'lower,upper', got {text!r}"
        )
    values = []
    for part in parts:
        try:
            values.append(float(part.strip()))
        except ValueError:
            raise InstanceFormatError(
                f"--interval endpoint {part.strip()!r} is not a number"
            ) from None
    return Interval(values[0], values[1])


def _load_record(path: str) -> InstanceRecord:
    return parse_instance(Path(path).read_text())


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _space_node(space: IndefiniteSpace) -> dict:
    return {
        "dim": space.dim,
        "kappa_plus": space.kappa_plus,
        "kappa_minus": space.kappa_minus,
    }


def _build_operators(
    record: InstanceRecord, tol: Tolerance
) -> tuple[IndefiniteSpace, JSelfadjointOperator, JSelfadjointOperator | None]:
    space = validate_space(record.gram, tol)
    op1 = validate_operator(space, record.a1, tol)
    op2 = validate_operator(space, record.a2, tol) if record.a2 is not None else None
    return space, op1, op2


def _effective_intervals(record: InstanceRecord, args) -> tuple[Interval, ...]:
    if args.interval:
        return tuple(_parse_cli_interval(text) for text in args.interval)
    return record.intervals


# ---------------------------------------------------------------------------
# analyze


def _interval_section(space, ops: dict, interval: Interval, tol: Tolerance) -> dict:
    eig, sig, inertia = {}, {}, {}
    for label, op in ops.items():
        sub = gap_subspace(op, interval, tol)
        found = subspace_inertia(space, sub, tol)
        eig[label] = sub.dim
        sig[label] = found.sig
        inertia[label] = instancefile.inertia_node(found)
    return {
        "interval": interval_node(interval),
        "eig": eig,
        "sig": sig,
        "inertia": inertia,
    }


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    record = _load_record(args.path)
    space, op1, op2 = _build_operators(record, tol)
    ops = {"a1": op1}
    if op2 is not None:
        ops["a2"] = op2
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tolerance": tolerance_node(tol),
        "space": _space_node(space),
        "spectra": {
            label: spectrum_node(spectrum(op, tol)) for label, op in ops.items()
        },
        "intervals": [
            _interval_section(space, ops, interval, tol)
            for interval in _effective_intervals(record, args)
        ],
    }
    if record.name is not None:
        doc["name"] = record.name
    _emit(stable_dumps(doc), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _report_expectations(expected: dict, report: GapReport) -> dict:
    computed = {
        "n": report.n,
        "kappa": report.kappa,
        "eig1": report.eig1,
        "eig2": report.eig2,
        "sig1": report.sig1,
        "sig2": report.sig2,
        "slack": report.slack,
    }
    return {
        key: {"expected": expected[key], "computed": computed[key]}
        for key in sorted(expected)
        if computed[key] != expected[key]
    }


def _bounds_hold(report: GapReport) -> bool:
    return (
        report.sig_bound_holds
        and report.eig_bound_holds
        and report.equal_kappa_bound_holds
        and report.min_kappa_bound_holds
    )


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    record = _load_record(args.path)
    space, op1, op2 = _build_operators(record, tol)
    if op2 is None:
        print("error: verify needs an instance with both a1 and a2", file=sys.stderr)
        return EXIT_INPUT_ERROR
    pair = make_pair(op1, op2, tol)
    intervals = _effective_intervals(record, args)
    reports, nodes, all_ok = [], [], True
    for interval in intervals:
        report = verify_main_theorem(pair, interval, tol)
        reports.append(report)
        node = gap_report_node(report)
        all_ok = all_ok and _bounds_hold(report)
        if args.witness:
            witness = proof_witness(pair, interval, tol)
            node["witness"] = witness_report_node(witness)
            all_ok = all_ok and (
                witness.q1_injective_on_k
                and witness.lower_bound_ok
                and witness.upper_bound_ok
                and witness.chain_holds
                and witness.sig_chain_holds
            )
        nodes.append(node)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tolerance": tolerance_node(tol),
        "space": _space_node(space),
        "n": pair.n,
        "kappa": space.kappa_minus,
        "reports": nodes,
        "all_bounds_hold": all_ok,
    }
    if record.name is not None:
        doc["name"] = record.name
    mismatches = {}
    if record.expected is not None and reports:
        mismatches = _report_expectations(record.expected, reports[0])
        doc["expectation"] = {
            "matches": not mismatches,
            "mismatches": mismatches,
        }
    _emit(stable_dumps(doc), args.out)
    if not all_ok:
        return EXIT_BOUND_VIOLATION
    if mismatches:
        return EXIT_EXPECTATION_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise InstanceFormatError(f"{flag} expects comma-separated integers") from None
    if not values:
        raise InstanceFormatError(f"{flag} must not be empty")
    return values


def _sweep_intervals(pair: OperatorPair, tol: Tolerance) -> list[Interval]:
    """Full line plus the cuts between well-separated joint eigenvalues."""
    values1 = spectrum(pair.op1, tol).values()
    values2 = spectrum(pair.op2, tol).values()
    margin = _SWEEP_MARGIN_FACTOR * max(
        ENDPOINT_GUARD_SCALE * max(1.0, linalg.frob(pair.op1.matrix)),
        ENDPOINT_GUARD_SCALE * max(1.0, linalg.frob(pair.op2.matrix)),
    )
    reals = sorted(
        v.real for v in values1 + values2 if v.imag == 0.0
    )
    cuts = []
    for left, right in zip(reals, reals[1:]):
        cut = 0.5 * (left + right)
        if all(abs(v - cut) >= margin for v in values1 + values2):
            if not cuts or cut - cuts[-1] > 1e-9 * max(1.0, abs(cut)):
                cuts.append(cut)
    intervals = [Interval(-math.inf, math.inf)]
    if cuts:
        intervals.append(Interval(-math.inf, cuts[0]))
        intervals.extend(Interval(a, b) for a, b in zip(cuts, cuts[1:]))
        intervals.append(Interval(cuts[-1], math.inf))
    return intervals


def _csv_endpoint(x: float) -> str:
    if math.isinf(x):
        return "-inf" if x < 0 else "+inf"
    return format_float(x)


def cmd_sweep(args) -> int:
    tol = _tolerance(args)
    dims = _parse_int_list(args.dims, "--dims")
    kappas = _parse_int_list(args.kappas, "--kappas")
    ranks = _parse_int_list(args.ranks, "--ranks")
    if args.seeds < 1:
        raise InstanceFormatError("--seeds must be at least 1")
    rows = [CSV_HEADER]
    cells: dict[tuple[int, int], dict] = {}
    instances = 0
    violations = []
    for d in dims:
        for kappa in kappas:
            if kappa > d:
                continue
            for rank in ranks:
                if rank > d:
                    continue
                for offset in range(args.seeds):
                    cfg = GenConfig(
                        dim=d,
                        kappa_minus=kappa,
                        pert_rank=rank,
                        seed=args.seed + offset,
                    )
                    space = random_space(cfg, tol)
                    pair = random_pair(space, cfg, tol)
                    instances += 1
                    for interval in _sweep_intervals(pair, tol):
                        report = verify_main_theorem(pair, interval, tol)
                        rows.append(
                            ",".join(
                                [
                                    str(d),
                                    str(space.kappa_plus),
                                    str(space.kappa_minus),
                                    str(pair.n),
                                    _csv_endpoint(interval.lower),
                                    _csv_endpoint(interval.upper),
                                    str(report.eig1),
                                    str(report.eig2),
                                    str(report.sig1),
                                    str(report.sig2),
                                    str(report.slack),
                                ]
                            )
                        )
                        cell = cells.setdefault(
                            (kappa, rank), {"min_slack": None, "rows": 0}
                        )
                        cell["rows"] += 1
                        if cell["min_slack"] is None or report.slack < cell["min_slack"]:
                            cell["min_slack"] = report.slack
                        if not _bounds_hold(report):
                            violations.append((cfg, pair, interval, report))
    csv_text = "\n".join(rows) + "\n"
    Path(args.out).write_text(csv_text)
    for index, (cfg, pair, interval, _) in enumerate(violations):
        dump = InstanceRecord(
            gram=pair.space.gram,
            a1=pair.op1.matrix,
            a2=pair.op2.matrix,
            intervals=(interval,),
            name=(
                f"violation-d{cfg.dim}-k{cfg.kappa_minus}"
                f"-n{cfg.pert_rank}-seed{cfg.seed}"
            ),
        )
        path = Path(args.out).with_suffix(f".violation{index}.json")
        path.write_text(dumps_instance(dump))
        print(f"bound violation dumped to {path}", file=sys.stderr)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tolerance": tolerance_node(tol),
        "csv": args.out,
        "instances": instances,
        "rows": len(rows) - 1,
        "violations": len(violations),
        "cells": [
            {
                "kappa": kappa,
                "n": rank,
                "min_slack": cell["min_slack"],
                "rows": cell["rows"],
            }
            for (kappa, rank), cell in sorted(cells.items())
        ],
    }
    sys.stdout.write(stable_dumps(doc))
    return EXIT_BOUND_VIOLATION if violations else EXIT_OK


# ---------------------------------------------------------------------------
# examples


def _fixture_record(fixture) -> InstanceRecord:
    return InstanceRecord(
        gram=fixture.pair.space.gram,
        a1=fixture.pair.op1.matrix,
        a2=fixture.pair.op2.matrix,
        intervals=(fixture.interval,),
        name=fixture.name,
        expected=fixture.expected,
    )


def cmd_examples(args) -> int:
    fixtures = {f.name: f for f in builtin_fixtures()}
    if args.name is not None:
        if args.name not in fixtures:
            names = ", ".join(sorted(fixtures))
            print(f"error: unknown fixture {args.name!r}; valid: {names}",
                  file=sys.stderr)
            return EXIT_INPUT_ERROR
        _emit(dumps_instance(_fixture_record(fixtures[args.name])), args.out)
        return EXIT_OK
    all_match = True
    for name in sorted(fixtures):
        fixture = fixtures[name]
        report = verify_main_theorem(fixture.pair, fixture.interval)
        mismatches = _report_expectations(fixture.expected, report)
        for key in sorted(fixture.expected):
            computed = fixture.expected[key] if key not in mismatches else (
                mismatches[key]["computed"]
            )
            status = "MISMATCH" if key in mismatches else "ok"
            print(f"{name} {key}: expected {fixture.expected[key]} "
                  f"computed {computed} {status}")
        all_match = all_match and not mismatches
    return EXIT_OK if all_match else EXIT_EXPECTATION_MISMATCH


# ---------------------------------------------------------------------------
# entry point


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-rel", type=float, default=DEFAULT_TOL.rel,
                        help="relative tolerance (default %(default)g)")
    parser.add_argument("--tol-abs", type=float, default=DEFAULT_TOL.abs,
                        help="absolute tolerance floor (default %(default)g)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pontgap",
        description="Eigenvalue counting in spectral gaps on indefinite "
                    "inner-product spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="spectra and per-interval counts for one instance")
    p_analyze.add_argument("path", help="instance file")
    p_analyze.add_argument("--interval", action="append", default=None,
                           metavar="A,B",
                           help="override instance intervals (repeatable; "
                                "inf literals allowed)")
    p_analyze.add_argument("--out", default=None, help="write report here "
                           "instead of stdout")
    _add_tolerance_flags(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_verify = sub.add_parser(
        "verify", help="check the counting bounds on a two-operator instance")
    p_verify.add_argument("path", help="instance file with a1 and a2")
    p_verify.add_argument("--interval", action="append", default=None,
                          metavar="A,B",
                          help="override instance intervals (repeatable)")
    p_verify.add_argument("--witness", action="store_true",
                          help="reconstruct and check the proof objects")
    p_verify.add_argument("--out", default=None, help="write report here "
                          "instead of stdout")
    _add_tolerance_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser(
        "sweep", help="seeded random ensemble; CSV rows plus summary")
    p_sweep.add_argument("--dims", default="2,3,4",
                         help="comma list of dimensions (default %(default)s)")
    p_sweep.add_argument("--kappas", default="0,1",
                         help="comma list of negative-square counts "
                              "(default %(default)s)")
    p_sweep.add_argument("--ranks", default="0,1,2",
                         help="comma list of perturbation ranks "
                              "(default %(default)s)")
    p_sweep.add_argument("--seeds", type=int, default=10,
                         help="seeds per cell (default %(default)s)")
    p_sweep.add_argument("--seed", type=int, default=0,
                         help="base seed (default %(default)s)")
    p_sweep.add_argument("--out", default="sweep.csv",
                         help="CSV output path (default %(default)s)")
    _add_tolerance_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_examples = sub.add_parser(
        "examples", help="verify the bundled fixtures, or emit one by name")
    p_examples.add_argument("name", nargs="?", default=None,
                            help="fixture to emit as an instance file")
    p_examples.add_argument("--out", default=None,
                            help="write the instance file here")
    p_examples.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IllPosedIntervalError, EndpointInSpectrumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILL_POSED_INTERVAL
    except (PontgapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
