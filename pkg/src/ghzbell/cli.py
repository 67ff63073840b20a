"""Command-line front end.

Subcommands cover the closed-form Bell/PPT values, the dense operator
equivalence check, split censuses, bound-entanglement certificates, the
violation-vs-settings CSV sweep, and depolarization of dense matrices.
All numbers print with 12 significant digits so identical invocations are
byte-identical.  Exit codes: 0 success, 1 validation or domain failure,
2 parse or I/O failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bell, oracle, splits, states
from .errors import NumericalError, ParseError

FAMILIES = ("varrho", "varrho3p", "ghz", "mixed")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _add_state_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--state", help="path to a ghz-diagonal state file")
    source.add_argument(
        "--family", choices=FAMILIES,
        help="named state: varrho (Bell witness), varrho3p (PPT witness), "
             "ghz (pure), mixed (maximally mixed)",
    )
    parser.add_argument(
        "--n", type=int, help="qubit count (required for most families)"
    )


def _resolve_state(args: argparse.Namespace) -> states.GhzDiagonalState:
    if args.state is not None:
        state = states.read_lambda_file(args.state)
        if args.n is not None and args.n != state.n_qubits:
            raise ValueError(
                f"--n {args.n} does not match state file N {state.n_qubits}"
            )
        return state
    if args.family == "varrho3p":
        if args.n not in (None, 3):
            raise ValueError("--family varrho3p is a 3-qubit state")
        return states.ppt_witness_state()
    if args.n is None:
        raise ValueError(f"--family {args.family} requires --n")
    if args.family == "varrho":
        return states.bell_witness_state(args.n)
    if args.family == "ghz":
        return states.ghz_pure(args.n)
    return states.maximally_mixed(args.n)


def _normalization_residue(state: states.GhzDiagonalState) -> float:
    weights = [state.lambda0_plus, state.lambda0_minus]
    weights.extend(2.0 * w for w in state.lambdas.values())
    return math.fsum(weights) - 1.0


def cmd_bell_value(args: argparse.Namespace) -> int:
    state = _resolve_state(args)
    scenario = bell.BellScenario(state.n_qubits, args.m)
    value = bell.bell_value(state, scenario)
    print(f"N {state.n_qubits}")
    print(f"M {args.m}")
    print(f"delta {_fmt(state.delta)}")
    print(f"scale {_fmt(scenario.scale)}")
    print(f"value {_fmt(value)}")
    print(f"margin {_fmt(value - 1.0)}")
    print(f"verdict {'VIOLATION' if bell.violates(value) else 'NO-VIOLATION'}")
    return 0


def cmd_operator_check(args: argparse.Namespace) -> int:
    scenario = bell.BellScenario(args.n, args.m)
    comparison = oracle.compare_bell_operators(args.n, args.m, args.tol)
    eigs = oracle.eigenvalues(oracle.bell_sum_operator(scenario))
    targets = (-scenario.scale, 0.0, scenario.scale)
    eig_dev = max(min(abs(e - t) for t in targets) for e in eigs)
    ok = comparison.equal and eig_dev <= args.tol
    print(f"N {args.n}")
    print(f"M {args.m}")
    print(f"terms {args.m ** args.n}")
    print(f"scale {_fmt(scenario.scale)}")
    print(f"max deviation {_fmt(comparison.max_abs_deviation)}")
    print(f"eigenvalue deviation {_fmt(eig_dev)}")
    print(f"verdict {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_splits(args: argparse.Namespace) -> int:
    state = _resolve_state(args)
    scenario = (
        bell.BellScenario(state.n_qubits, args.m)
        if args.m is not None else None
    )
    cen = splits.census(state, scenario)
    print(f"N {state.n_qubits}")
    print(f"delta {_fmt(cen.delta)}")
    for record in cen.records:
        verdict = "distillable" if record.distillable else "not-distillable"
        print(
            f"j {record.j}  split {record.split.label()}  "
            f"2lambda {_fmt(record.double_weight)}  "
            f"delta {_fmt(cen.delta)}  verdict {verdict}"
        )
    print(f"distillable {cen.distillable_count}")
    if scenario is not None:
        print(f"bell value {_fmt(cen.bell_value)}")
        print(f"floor bound {cen.floor_bound}")
        flag = "CONSISTENT" if cen.consistent else "INCONSISTENT"
        print(f"consistency {flag}")
    return 0


def cmd_certify_be(args: argparse.Namespace) -> int:
    state = _resolve_state(args)
    scenario = (
        bell.BellScenario(state.n_qubits, args.m)
        if args.m is not None else None
    )
    cert = splits.certify_bound_entangled(state, scenario, args.tol)
    print(f"N {state.n_qubits}")
    if cert.evidence_kind == "bell-violation":
        print(f"evidence bell-violation value {_fmt(cert.evidence_value)}")
    elif cert.evidence_kind == "npt-split":
        print(
            f"evidence npt-split j {cert.npt_split} "
            f"eigenvalue {_fmt(cert.evidence_value)}"
        )
    else:
        print("evidence none")
    print(f"ppt-inequality value {_fmt(bell.ppt_value(state))}")
    for j in cert.ppt_splits:
        split = splits.split_from_index(state.n_qubits, j)
        print(
            f"ppt split j {j} {split.label()} "
            f"min eigenvalue {_fmt(cert.ppt_eigenvalues[j])}"
        )
    for j in cert.failed_splits:
        print(f"ppt check failed j {j}")
    for (i, k), j in sorted(cert.coverage.items()):
        if j is None:
            print(f"pair {i},{k} uncovered")
        else:
            print(f"pair {i},{k} covered by j {j}")
    print(f"verdict {'VALID' if cert.valid else 'INVALID'}")
    return 0


def cmd_figure1(args: argparse.Namespace) -> int:
    if args.n_min < 3:
        raise ValueError(f"--n-min must be at least 3, got {args.n_min}")
    if args.m_min < 2:
        raise ValueError(f"--m-min must be at least 2, got {args.m_min}")
    if args.n_max < args.n_min or args.m_max < args.m_min:
        raise ValueError("empty sweep range")
    lines = ["N,M,value,limit"]
    for n in range(args.n_min, args.n_max + 1):
        limit = bell.large_m_limit(n)
        for m in range(args.m_min, args.m_max + 1):
            value = bell.witness_bell_value(n, m)
            lines.append(f"{n},{m},{_fmt(value)},{_fmt(limit)}")
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {len(lines) - 1} rows to {args.out}")
    return 0


def cmd_depolarize(args: argparse.Namespace) -> int:
    rho = oracle.read_dense_file(args.dense)
    state = oracle.depolarize(rho)
    print(f"N {state.n_qubits}")
    print(f"delta {_fmt(state.delta)}")
    print(f"normalization residue {_fmt(_normalization_residue(state))}")
    text = states.format_lambda_file(state)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {args.out}")
    return 0


def cmd_min_m(args: argparse.Namespace) -> int:
    result = bell.min_violating_m(args.n, args.m_max)
    print(f"N {args.n}")
    print(f"m-max {args.m_max}")
    print(f"min violating M {result if result is not None else 'NONE'}")
    return 0


def cmd_lemma_bound(args: argparse.Namespace) -> int:
    scenario = bell.BellScenario(args.n, args.m)
    print(f"N {args.n}")
    print(f"M {args.m}")
    print(f"scale {_fmt(scenario.scale)}")
    print(f"bound {splits.distillable_floor(scenario)}")
    return 0


def cmd_ppt_value(args: argparse.Namespace) -> int:
    state = _resolve_state(args)
    value = bell.ppt_value(state)
    print(f"N {state.n_qubits}")
    print(f"delta {_fmt(state.delta)}")
    print(f"value {_fmt(value)}")
    print(f"margin {_fmt(value - 1.0)}")
    print(f"verdict {'VIOLATION' if bell.violates(value) else 'NO-VIOLATION'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzbell",
        description="GHZ-diagonal states, multi-setting Bell operators, "
                    "and bipartite-split analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "bell-value", help="closed-form Bell value of a state"
    )
    _add_state_source(p)
    p.add_argument("--m", type=int, required=True, help="settings per party")
    p.set_defaults(func=cmd_bell_value)

    p = sub.add_parser(
        "operator-check",
        help="dense check that the operator sum matches its closed form",
    )
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--m", type=int, required=True, help="settings per party")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="entrywise tolerance (default 1e-9)")
    p.set_defaults(func=cmd_operator_check)

    p = sub.add_parser(
        "splits", help="distillability census over all bipartite splits"
    )
    _add_state_source(p)
    p.add_argument("--m", type=int,
                   help="settings per party (adds the counting bound)")
    p.set_defaults(func=cmd_splits)

    p = sub.add_parser(
        "certify-be", help="bound-entanglement certificate for a state"
    )
    _add_state_source(p)
    p.add_argument("--m", type=int,
                   help="settings per party (enables Bell-violation evidence)")
    p.add_argument("--tol", type=float, default=splits.PPT_TOL,
                   help="PPT acceptance tolerance (default 1e-10)")
    p.set_defaults(func=cmd_certify_be)

    p = sub.add_parser(
        "figure1",
        help="CSV sweep of witness Bell values over qubit and setting counts",
    )
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-min", type=int, default=6)
    p.add_argument("--m-max", type=int, default=50)
    p.add_argument("--out", default="-",
                   help="output CSV path, or - for standard output")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser(
        "depolarize",
        help="project a dense density matrix onto the GHZ-diagonal family",
    )
    p.add_argument("--dense", required=True, help="path to a dense file")
    p.add_argument("--out", required=True,
                   help="output state path, or - for standard output")
    p.set_defaults(func=cmd_depolarize)

    p = sub.add_parser(
        "min-m",
        help="smallest setting count violating the inequality for the witness",
    )
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--m-max", type=int, default=100, help="search ceiling")
    p.set_defaults(func=cmd_min_m)

    p = sub.add_parser(
        "lemma-bound",
        help="guaranteed distillable-split count under a Bell violation",
    )
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--m", type=int, required=True, help="settings per party")
    p.set_defaults(func=cmd_lemma_bound)

    p = sub.add_parser(
        "ppt-value", help="PPT-inequality value of a state"
    )
    _add_state_source(p)
    p.set_defaults(func=cmd_ppt_value)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
