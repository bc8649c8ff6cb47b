"""Command-line interface and verification harness.

Four commands: ``analyze-nf`` (number-field datum), ``analyze-ff``
(punctured curve over a finite field), ``essential`` (essential classes
of elementary abelian groups), ``verify`` (brute-force oracle suites and
fixture validation).  Machine mode emits only the line-oriented report
grammar; human mode adds '#' commentary around the same lines.  Output
is deterministic: identical inputs give byte-identical reports.

Exit codes: 0 success, 1 input rejected (single ERROR line), 2 oracle or
fixture verification failure.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .abelian import EnumerationBoundExceeded, FinGenAbGroup
from .arithdata import ArithmeticDatum, DatumError, build_split_datum, load_datum
from .cohomengine import (
    DEFAULT_DEGREE_BOUND,
    GateParams,
    detection_verdict,
    decompose_number_field,
    gate_line,
    machine_lines_function_field,
    machine_lines_number_field,
    refined_gate,
)
from .curve import (
    EllipticMinusPoint,
    P1Minus,
    SingularCurveError,
    field_spec_from_order,
)
from .essential import (
    GradedAlgebraSpec,
    enumerate_proper_subgroups,
    essential_product,
    regularity_check,
    restrict,
    weyl_invariance,
)
from .oracles import run_all_suites

CURVE_PRESETS = {
    "p1_minus_infty": (1,),
    "p1_minus_0_infty": (1, 1),
    "p1_minus_01_infty": (1, 1, 1),
}

_INPUT_ERRORS = (DatumError, SingularCurveError, EnumerationBoundExceeded, ValueError)


def _emit(lines, mode: str, title: str) -> None:
    if mode == "human":
        print(f"# {title}")
        for line in lines:
            print(line)
        print("# end of report")
    else:
        for line in lines:
            print(line)


def resolve_datum_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    shipped = resources.files("sl2cohom").joinpath("data", name)
    if shipped.is_file():
        return Path(str(shipped))
    raise ValueError(f"datum file not found: {name}")


def _load_or_build_datum(args) -> ArithmeticDatum:
    if args.datum:
        return load_datum(resolve_datum_path(args.datum))
    if args.split_class_group is None or args.ell is None or args.unit_rank is None:
        raise ValueError("provide --datum FILE or all of --split-class-group, "
                         "--unit-rank and --ell")
    text = args.split_class_group.strip()
    factors = tuple(int(v) for v in text.split(",") if v != "") if text else ()
    cl_k = FinGenAbGroup.from_cyclic_orders(factors)
    return build_split_datum(cl_k, args.unit_rank, args.ell)


def _cmd_analyze_nf(args) -> int:
    datum = _load_or_build_datum(args)
    lines = machine_lines_number_field(datum, args.degree_bound)
    if args.gate_n is not None:
        detection = detection_verdict(datum, decompose_number_field(datum), args.degree_bound)
        hypothesis = "fails" if detection.outcome == "fails" else "unknown"
        verdict = refined_gate(GateParams(
            ell=datum.ell, n=args.gate_n, zeta_in_K=datum.split,
            s_contains_infinite=args.gate_s_infinite,
            s_contains_ell=args.gate_s_ell,
            detection_hypothesis=hypothesis))
        lines.append(gate_line(verdict))
    _emit(lines, args.mode, "analyze-nf report")
    return 0


def _parse_punctures(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"bad puncture list {text!r}; expected comma-separated integers")


def _cmd_analyze_ff(args) -> int:
    if args.preset:
        if args.preset not in CURVE_PRESETS:
            raise ValueError(f"unknown preset {args.preset!r}; "
                             f"choose from {', '.join(sorted(CURVE_PRESETS))}")
        curve = P1Minus(CURVE_PRESETS[args.preset])
    elif args.curve == "p1":
        if not args.punctures:
            raise ValueError("--curve p1 needs --punctures d1,d2,...")
        curve = P1Minus(_parse_punctures(args.punctures))
    elif args.curve == "elliptic":
        if args.a is None or args.b is None:
            raise ValueError("--curve elliptic needs --a and --b")
        curve = EllipticMinusPoint(args.a, args.b)
    else:
        raise ValueError("choose --curve p1 or --curve elliptic, or a --preset")
    if args.q is None or args.ell is None:
        raise ValueError("analyze-ff needs --q and --ell")
    spec = field_spec_from_order(args.q)
    lines = machine_lines_function_field(curve, spec, args.ell, args.degree_bound)
    _emit(lines, args.mode, "analyze-ff report")
    return 0


def _cmd_essential(args) -> int:
    spec = GradedAlgebraSpec(args.ell, args.rank)
    product = essential_product(spec)
    degree = product.degree()
    subgroups = enumerate_proper_subgroups(spec)
    all_zero = all(restrict(product, m).is_zero for m in subgroups)
    lines = [
        f"ESSENTIAL\tell={spec.ell} rank={spec.n} degree={degree} "
        f"nonzero={'true' if not product.is_zero else 'false'}",
        f"PRODUCT\t{product}",
        f"RESTRICTIONS\tall_proper_zero={'true' if all_zero else 'false'} "
        f"proper_subgroups={len(subgroups)}",
        f"WEYL\tinvariant={'true' if weyl_invariance(product, spec) else 'false'}",
        f"REGULARITY\tnon_zero_divisor={'true' if regularity_check(product, spec) else 'false'}",
    ]
    _emit(lines, args.mode, "essential report")
    return 0


def _cmd_verify(args) -> int:
    lines = []
    ok = True
    for result in run_all_suites():
        lines.append(f"SUITE\t{result.name} {'pass' if result.passed else 'fail'} "
                     f"({result.detail})")
        ok = ok and result.passed
    fixtures = list(args.datum) if args.datum else sorted(
        f.name for f in resources.files("sl2cohom").joinpath("data").iterdir()
        if f.name.endswith(".datum"))
    for name in fixtures:
        try:
            load_datum(resolve_datum_path(name))
        except DatumError as exc:
            lines.append(f"FIXTURE\t{Path(name).name} fail ({exc})")
            ok = False
        else:
            lines.append(f"FIXTURE\t{Path(name).name} pass")
    lines.append(f"VERIFY\t{'pass' if ok else 'fail'}")
    _emit(lines, args.mode, "verification report")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2cohom",
        description="Exact Farrell-Tate cohomology data for rank-one S-arithmetic groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=("human", "machine"), default="machine")
        p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)

    nf = sub.add_parser("analyze-nf", help="analyze a number-field datum")
    nf.add_argument("--datum", help="datum file (path or shipped fixture name)")
    nf.add_argument("--split-class-group",
                    help="comma-separated cyclic orders of the class group (split case)")
    nf.add_argument("--unit-rank", type=int, help="S-unit rank (split case)")
    nf.add_argument("--ell", type=int, help="odd prime (split case)")
    nf.add_argument("--gate-n", type=int,
                    help="also run the refined hypothesis gate for this rank")
    nf.add_argument("--gate-s-infinite", action=argparse.BooleanOptionalAction,
                    default=True, help="S contains the infinite places")
    nf.add_argument("--gate-s-ell", action=argparse.BooleanOptionalAction,
                    default=True, help="S contains the places over ell")
    common(nf)
    nf.set_defaults(func=_cmd_analyze_nf)

    ff = sub.add_parser("analyze-ff", help="analyze a punctured curve over a finite field")
    ff.add_argument("--curve", choices=("p1", "elliptic"))
    ff.add_argument("--preset", help=f"one of: {', '.join(sorted(CURVE_PRESETS))}")
    ff.add_argument("--punctures", help="comma-separated degrees of removed closed points")
    ff.add_argument("--a", type=int, help="elliptic coefficient a (field encoding)")
    ff.add_argument("--b", type=int, help="elliptic coefficient b (field encoding)")
    ff.add_argument("--q", type=int, help="field size (prime power)")
    ff.add_argument("--ell", type=int, help="odd prime dividing q - 1")
    common(ff)
    ff.set_defaults(func=_cmd_analyze_ff)

    es = sub.add_parser("essential", help="essential classes of an elementary abelian group")
    es.add_argument("--ell", type=int, required=True)
    es.add_argument("--rank", type=int, required=True)
    common(es)
    es.set_defaults(func=_cmd_essential)

    vf = sub.add_parser("verify", help="run the brute-force oracle suites")
    vf.add_argument("--datum", action="append", help="extra datum files to validate")
    common(vf)
    vf.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"ERROR\t{exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
