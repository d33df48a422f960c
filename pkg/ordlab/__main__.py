"""
ordlab CLI Entry Point.

Usage:
    ordlab [--n N] [--budget B] [--seed S] [--format json|csv|text] [--log-level LEVEL] <command> ...
    python -m ordlab --help

Exit codes: 0 success, 1 property violation, 2 usage error, 3 budget exhausted.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Optional

from pydantic import ValidationError

from .core.action import act, fixed_point, orbit_witness, stabilizer_generator
from .core.config import SessionConfig, get_settings
from .core.errors import exit_code_for
from .core.group import ball, element_at, enumerate_elements, index_of, inv, mul
from .core.models import (
    Membership,
    PipelineStage,
    SignResult,
    Verdict,
    digit_text,
    encode_base_point,
    encode_cone,
    encode_element,
    encode_nadic,
)
from .core.numeric import (
    NAdic,
    nadic_add,
    nadic_cmp,
    nadic_mul,
    nadic_neg,
    nadic_scale_pow,
    nadic_sub,
    nadic_to_rat,
    parse_nadic,
    rat_text,
)
from .core.reals import Quadratic, Rational, compare_to_rat, digits, sign_affine_form
from .core.words import parse_word
from .orderings.cones import (
    cone_axioms_check,
    cone_from_action,
    cones_conjugate,
    conjugate,
    member,
    order_compare,
    reverse,
)
from .orderings.equivalence import (
    TailWitness,
    reduce,
    reduction_roundtrip_check,
    tail_equivalent,
    witness_to_group,
)
from .orderings.identification import identify, member_from_cuts
from .orderings.realization import (
    build,
    check_free_orbit,
    check_order_embedding,
    partial_act,
    recover_conjugate,
    recover_cone,
    stage_rows,
)
from .pipelines.invariants import InvariantSuitePipeline
from .utils.literals import parse_base_point, parse_cone, parse_rational
from .utils.output import render, render_csv, save_text

logger = logging.getLogger("ordlab")

Result = tuple[Any, int]


# =============================================================================
# HELPERS
# =============================================================================

def _point(text: str, session: SessionConfig):
    return parse_base_point(text, session.n, session.budget)


def _cone(args, session: SessionConfig, tag_attr: str = "cone", base_attr: str = "base"):
    return parse_cone(getattr(args, tag_attr), getattr(args, base_attr), session.n, session.budget)


def _encode_point(x) -> Any:
    if isinstance(x, NAdic):
        return encode_nadic(x)
    if hasattr(x, "denominator"):
        return encode_base_point(Rational(x))
    return encode_base_point(x)


def _membership(answer: Membership) -> Result:
    if answer is Membership.UNKNOWN:
        return {"member": "unknown"}, 3
    return {"member": answer is Membership.YES}, 0


def _verdict(value, key: str = "witness") -> Result:
    if isinstance(value, Verdict):
        return {"equivalent": value.value}, 3 if value is Verdict.UNKNOWN else 0
    return {"equivalent": True, key: encode_element(value)}, 0


def _nadic(text: str, session: SessionConfig) -> NAdic:
    return parse_nadic(text, session.n)


def _stage(args, session: SessionConfig):
    return build(_cone(args, session), args.stage, session.n)


SIGNS = {-1: SignResult.NEGATIVE, 0: SignResult.ZERO, 1: SignResult.POSITIVE}


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_normalize(args, session) -> Result:
    return encode_nadic(NAdic(int(args.m), args.k, session.n)), 0


def cmd_add(args, session) -> Result:
    return encode_nadic(nadic_add(_nadic(args.x, session), _nadic(args.y, session))), 0


def cmd_sub(args, session) -> Result:
    return encode_nadic(nadic_sub(_nadic(args.x, session), _nadic(args.y, session))), 0


def cmd_product(args, session) -> Result:
    return encode_nadic(nadic_mul(_nadic(args.x, session), _nadic(args.y, session))), 0


def cmd_neg(args, session) -> Result:
    return encode_nadic(nadic_neg(_nadic(args.x, session))), 0


def cmd_cmp(args, session) -> Result:
    return {"sign": SIGNS[nadic_cmp(_nadic(args.x, session), _nadic(args.y, session))].value}, 0


def cmd_scale(args, session) -> Result:
    return encode_nadic(nadic_scale_pow(_nadic(args.x, session), args.e)), 0


def cmd_to_rat(args, session) -> Result:
    return {"value": rat_text(nadic_to_rat(_nadic(args.x, session)))}, 0


def cmd_parse(args, session) -> Result:
    return encode_element(parse_word(args.word, session.n)), 0


def cmd_mul(args, session) -> Result:
    return encode_element(mul(parse_word(args.g, session.n), parse_word(args.h, session.n))), 0


def cmd_inv(args, session) -> Result:
    return encode_element(inv(parse_word(args.word, session.n))), 0


def cmd_enumerate(args, session) -> Result:
    if args.index_of:
        return {"index": index_of(parse_word(args.index_of, session.n))}, 0
    if args.count is not None:
        elements = enumerate_elements(args.count, session.n)
        return [{"index": i, **encode_element(g)} for i, g in enumerate(elements)], 0
    return {"index": args.index, **encode_element(element_at(args.index, session.n))}, 0


def cmd_ball(args, session) -> Result:
    enumeration = ball(args.radius, session.n)
    return {
        "radius": args.radius,
        "size": len(enumeration),
        "elements": [{"length": enumeration.length(g), **encode_element(g)} for g in enumeration],
    }, 0


def cmd_act(args, session) -> Result:
    return {"image": _encode_point(act(parse_word(args.elem, session.n), _point(args.point, session)))}, 0


def cmd_fix(args, session) -> Result:
    return {"fixed_point": rat_text(fixed_point(parse_word(args.elem, session.n)))}, 0


def cmd_stab(args, session) -> Result:
    gamma = stabilizer_generator(parse_rational(args.point), session.n)
    return {"generator": encode_element(gamma), "s": -gamma.s}, 0


def cmd_orbit_eq(args, session) -> Result:
    return _verdict(orbit_witness(_point(args.x, session), _point(args.y, session), session.n))


def cmd_sign(args, session) -> Result:
    sign = sign_affine_form(_point(args.point, session), parse_word(args.elem, session.n))
    return {"sign": sign.value}, 3 if sign is SignResult.UNKNOWN else 0


def cmd_digits(args, session) -> Result:
    values = digits(_point(args.point, session), args.count, session.n)
    return {"digits": digit_text(values, session.n)}, 0


def cmd_compare(args, session) -> Result:
    sign = compare_to_rat(_point(args.point, session), parse_rational(args.q))
    return {"sign": sign.value}, 3 if sign is SignResult.UNKNOWN else 0


def cmd_member(args, session) -> Result:
    return _membership(member(_cone(args, session), parse_word(args.elem, session.n)))


def cmd_cut_member(args, session) -> Result:
    g = parse_word(args.elem, session.n)
    return _membership(member_from_cuts(args.cone, parse_rational(args.left), parse_rational(args.right), g))


def cmd_reverse(args, session) -> Result:
    return encode_cone(reverse(_cone(args, session))), 0


def cmd_conjugate(args, session) -> Result:
    return encode_cone(conjugate(_cone(args, session), parse_word(args.elem, session.n))), 0


def cmd_cone_conj(args, session) -> Result:
    source = _cone(args, session)
    target = _cone(args, session, "to_cone", "to_base")
    return _verdict(cones_conjugate(source, target, session.n))


def cmd_order(args, session) -> Result:
    comparison = order_compare(_cone(args, session), parse_word(args.g, session.n), parse_word(args.h, session.n))
    if comparison is None:
        return {"order": "unknown"}, 3
    return {"order": {-1: "<", 0: "=", 1: ">"}[comparison]}, 0


def cmd_from_action(args, session) -> Result:
    points = [_point(text, session) for text in args.points]
    return _membership(cone_from_action(points, parse_word(args.elem, session.n)))


def cmd_identify(args, session) -> Result:
    result = identify(_cone(args, session), args.radius, args.precision, session.n)
    return result, 0


def cmd_check_cone(args, session) -> Result:
    report = cone_axioms_check(_cone(args, session), args.radius, session.n)
    if not report.passed:
        return report, 1
    return report, 3 if report.inconclusive else 0


def cmd_realize(args, session) -> Result:
    rows = stage_rows(build(_cone(args, session), args.stage, session.n))
    if args.csv:
        save_text(args.csv, render_csv(rows))
        logger.info(f"wrote {len(rows)} rows to {args.csv}")
    return rows, 0


def cmd_partial_act(args, session) -> Result:
    image = partial_act(_stage(args, session), parse_word(args.elem, session.n), args.index)
    return {"index": args.index, "image": None if image is None else str(image)}, 0


def cmd_recover(args, session) -> Result:
    st = _stage(args, session)
    g = parse_word(args.elem, session.n)
    if args.conj:
        answer = recover_conjugate(st, g, parse_word(args.conj, session.n))
    else:
        answer = recover_cone(st, g)
    if answer is None:
        return {"member": "untagged"}, 3
    return _membership(answer)


def cmd_free_orbit(args, session) -> Result:
    report = check_free_orbit(_stage(args, session))
    return report, 0 if report.passed else 1


def cmd_embedding(args, session) -> Result:
    violations = check_order_embedding(_stage(args, session))
    return {"stage": args.stage, "passed": not violations, "violations": violations}, 1 if violations else 0


def cmd_reduce(args, session) -> Result:
    return reduce(_point(args.point, session), session.n, args.count or session.budget).to_json(), 0


def cmd_tail_eq(args, session) -> Result:
    x, y = _point(args.x, session), _point(args.y, session)
    decision = tail_equivalent(reduce(x, session.n, session.budget), reduce(y, session.n, session.budget))
    if not isinstance(decision, TailWitness):
        return {"equivalent": decision.value}, 3 if decision is Verdict.UNKNOWN else 0
    out = {"equivalent": True, "p": decision.p, "q": decision.q, "certified": decision.certified}
    if isinstance(x, Rational) and isinstance(y, Rational):
        out["element"] = encode_element(witness_to_group(x, y, decision, session.n))
    return out, 0


def cmd_roundtrip(args, session) -> Result:
    report = reduction_roundtrip_check(parse_rational(args.x), parse_word(args.elem, session.n), session.n)
    return report, 0 if report.passed else 1


def cmd_check_all(args, session) -> Result:
    session = session.model_copy(update={"radius": args.radius})
    bases = {}
    if args.irrational:
        points = [_point(text, session) for text in args.irrational]
        for text, point in zip(args.irrational, points):
            if not isinstance(point, Quadratic):
                raise ValueError(f"--irrational needs a quad:u,v,d literal, got {text!r}")
        bases["irrationals"] = points
    if args.rational:
        bases["rationals"] = [parse_rational(text) for text in args.rational]
    report = InvariantSuitePipeline(session, stages=args.stage or None, **bases).run()
    if report.status == PipelineStage.FAILED:
        return report, 1
    return report, 3 if report.status == PipelineStage.INCONCLUSIVE else 0


# =============================================================================
# PARSER
# =============================================================================

def _add_cone_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cone", required=True, help="Cone tag: Pinf++, Pinf+-, Pinf-+, Pinf--, P+, P-, Q++, Q+-, Q-+, Q--")
    parser.add_argument("--base", default=None, help="Base point literal: rat:p/q, quad:u,v,d or stream:<name>")


def build_parser() -> argparse.ArgumentParser:
    current = get_settings()
    parser = argparse.ArgumentParser(
        prog="ordlab",
        description="ordlab - exact left-orderings of the Baumslag-Solitar groups BS(1,n)",
    )
    parser.add_argument("--n", type=int, default=None, help=f"Group parameter n >= 2 (default: {current.default_n})")
    parser.add_argument("--budget", type=int, default=None, help=f"Digit budget for streams (default: {current.digit_budget})")
    parser.add_argument("--seed", type=int, default=None, help=f"Random seed (default: {current.seed})")
    parser.add_argument("--format", dest="output_format", choices=["json", "csv", "text"], default=None, help="Output format")
    parser.add_argument("--log-level", default=current.log_level, help=f"Logging level on stderr (default: {current.log_level})")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    def command(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("normalize", cmd_normalize, "Canonical form of m/n^k")
    sub.add_argument("m")
    sub.add_argument("k", type=int)

    # Z[1/n] values are written m/n^k, m/d or m; pass negatives after "--"
    for name, handler, help_text in (
        ("add", cmd_add, "Sum x + y in Z[1/n]"),
        ("sub", cmd_sub, "Difference x - y in Z[1/n]"),
        ("product", cmd_product, "Product x * y in Z[1/n]"),
        ("cmp", cmd_cmp, "Sign of x - y in Z[1/n]"),
    ):
        sub = command(name, handler, help_text)
        sub.add_argument("x")
        sub.add_argument("y")

    sub = command("neg", cmd_neg, "Negation -x in Z[1/n]")
    sub.add_argument("x")

    sub = command("scale", cmd_scale, "x * n^e for an integer e")
    sub.add_argument("x")
    sub.add_argument("e", type=int)

    sub = command("to-rat", cmd_to_rat, "Exact rational value of an element of Z[1/n]")
    sub.add_argument("x")

    sub = command("parse", cmd_parse, "Normal form of a word")
    sub.add_argument("word")

    sub = command("mul", cmd_mul, "Product of two words")
    sub.add_argument("g")
    sub.add_argument("h")

    sub = command("inv", cmd_inv, "Inverse of a word")
    sub.add_argument("word")

    sub = command("enumerate", cmd_enumerate, "Element g_i of the fixed enumeration")
    sub.add_argument("index", type=int, nargs="?", default=0)
    sub.add_argument("--count", type=int, default=None, help="List g_0 .. g_{count-1}")
    sub.add_argument("--index-of", default=None, help="Index of the given word instead")

    sub = command("ball", cmd_ball, "Elements of word length <= radius")
    sub.add_argument("--radius", type=int, default=current.default_radius)

    sub = command("act", cmd_act, "Evaluate the affine action")
    sub.add_argument("--elem", required=True)
    sub.add_argument("--point", required=True)

    sub = command("fix", cmd_fix, "Fixed point of an element with s != 0")
    sub.add_argument("--elem", required=True)

    sub = command("stab", cmd_stab, "Stabilizer generator of a rational")
    sub.add_argument("--point", required=True)

    sub = command("orbit-eq", cmd_orbit_eq, "Orbit equivalence witness of two exact points")
    sub.add_argument("--x", required=True)
    sub.add_argument("--y", required=True)

    sub = command("sign", cmd_sign, "Sign of rho(g)(eps) - eps")
    sub.add_argument("--point", required=True)
    sub.add_argument("--elem", required=True)

    sub = command("digits", cmd_digits, "Base-n digits of the fractional part")
    sub.add_argument("--point", required=True)
    sub.add_argument("--count", type=int, default=16)

    sub = command("compare", cmd_compare, "Sign of eps - q")
    sub.add_argument("--point", required=True)
    sub.add_argument("--q", required=True)

    sub = command("member", cmd_member, "Cone membership")
    _add_cone_args(sub)
    sub.add_argument("--elem", required=True)

    sub = command("cut-member", cmd_cut_member, "Membership from a bracketing interval of the base")
    sub.add_argument("--cone", required=True)
    sub.add_argument("--left", required=True)
    sub.add_argument("--right", required=True)
    sub.add_argument("--elem", required=True)

    sub = command("reverse", cmd_reverse, "Cone of the reversed ordering")
    _add_cone_args(sub)

    sub = command("conjugate", cmd_conjugate, "Conjugate a cone by an element")
    _add_cone_args(sub)
    sub.add_argument("--elem", required=True)

    sub = command("cone-conj", cmd_cone_conj, "Element conjugating one cone to another")
    _add_cone_args(sub)
    sub.add_argument("--to-cone", required=True)
    sub.add_argument("--to-base", default=None)

    sub = command("order", cmd_order, "Compare two elements in the cone's order")
    _add_cone_args(sub)
    sub.add_argument("--g", required=True)
    sub.add_argument("--h", required=True)

    sub = command("from-action", cmd_from_action, "Membership read off the action on a point sequence")
    sub.add_argument("--points", nargs="+", required=True)
    sub.add_argument("--elem", required=True)

    sub = command("identify", cmd_identify, "Classify a cone from its membership answers")
    _add_cone_args(sub)
    sub.add_argument("--radius", type=int, default=current.identify_radius)
    sub.add_argument("--precision", type=int, default=current.identify_precision)

    sub = command("check-cone", cmd_check_cone, "Check the cone axioms on a ball")
    _add_cone_args(sub)
    sub.add_argument("--radius", type=int, default=current.default_radius)

    sub = command("realize", cmd_realize, "Tags of a dynamical realization stage")
    _add_cone_args(sub)
    sub.add_argument("--stage", type=int, default=current.realization_stage)
    sub.add_argument("--csv", default=None, help="Also write the stage as CSV to this path")

    sub = command("partial-act", cmd_partial_act, "t(g g_i) on a realization stage")
    _add_cone_args(sub)
    sub.add_argument("--stage", type=int, default=current.realization_stage)
    sub.add_argument("--elem", required=True)
    sub.add_argument("--index", type=int, required=True)

    sub = command("recover", cmd_recover, "Membership read off a realization stage")
    _add_cone_args(sub)
    sub.add_argument("--stage", type=int, default=current.realization_stage)
    sub.add_argument("--elem", required=True)
    sub.add_argument("--conj", default=None, help="Membership in the conjugate cone by this element instead")

    sub = command("free-orbit", cmd_free_orbit, "Check that the orbit of 0 is free on a stage")
    _add_cone_args(sub)
    sub.add_argument("--stage", type=int, default=current.realization_stage)

    sub = command("embedding", cmd_embedding, "Check that stage tags embed the cone's order")
    _add_cone_args(sub)
    sub.add_argument("--stage", type=int, default=current.realization_stage)

    sub = command("reduce", cmd_reduce, "Digit word of a point")
    sub.add_argument("--point", required=True)
    sub.add_argument("--count", type=int, default=None, help="Prefix length for irrational points")

    sub = command("tail-eq", cmd_tail_eq, "Tail equivalence of two digit words")
    sub.add_argument("--x", required=True)
    sub.add_argument("--y", required=True)

    sub = command("roundtrip", cmd_roundtrip, "Digit reduction round trip for x and g")
    sub.add_argument("--x", required=True)
    sub.add_argument("--elem", required=True)

    sub = command("check-all", cmd_check_all, "Run the full invariant suite")
    sub.add_argument("--radius", type=int, default=current.default_radius)
    sub.add_argument("--stage", action="append", default=None, help="Run only this stage (repeatable)")
    sub.add_argument("--irrational", action="append", default=None, help="P cone base quad:u,v,d (repeatable)")
    sub.add_argument("--rational", action="append", default=None, help="Q cone base p/q (repeatable)")

    return parser


# =============================================================================
# ENTRY POINT
# =============================================================================

def run(argv: Optional[list[str]] = None) -> tuple[str, int]:
    """Execute one command and return (rendered output, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return "", 2

    try:
        session = SessionConfig.from_settings(
            n=args.n, budget=args.budget, seed=args.seed, output_format=args.output_format
        )
    except ValidationError as e:
        return "", _report_error(e, 2)

    try:
        payload, code = args.handler(args, session)
    except Exception as e:
        return "", _report_error(e, exit_code_for(e))
    return render(payload, session.output_format), code


def _report_error(error: BaseException, code: int) -> int:
    print(f"ordlab: error: {error}", file=sys.stderr)
    logger.debug("command failed", exc_info=error)
    return code


def main(argv: Optional[list[str]] = None) -> int:
    output, code = run(argv)
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
