"""Command-line front end.

Exit status: 0 on success, 2 on invalid input, 64 for an unknown
subcommand, 66 when an input file is missing.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import jsonio
from .errors import ValidationError
from .functors import classify, ternary_factorize
from .groupoids import functor_groupoid, functor_groupoid_cardinality, groupoid_cardinality
from .homotopy import homotopy_cardinality
from .relational import count_homs, count_injective_homs, lovasz_iso_test
from .relfin import (
    counting_distinguisher,
    decide_equivalence,
    faithful_hom_cardinality,
    hom_groupoid_cardinality,
)
from .series import (
    DEFAULT_TRUNCATION,
    RepComponentParams,
    gl_order,
    gset_egf,
    gset_groupoid_exponent,
    rep_component_series,
    tameness_bound_check,
)

EX_USAGE = 64
EX_NOINPUT = 66
EX_INVALID = 2

COMMANDS = (
    "card",
    "functor-card",
    "factorize",
    "gset-egf",
    "gset-card",
    "gl-order",
    "rep-series",
    "relfin-hom",
    "relfin-equiv",
    "relfin-distinguish",
    "homcount",
    "lovasz-test",
    "homotopy-card",
)


class _MissingFile(Exception):
    pass


def _load(path):
    try:
        return jsonio.load(path)
    except FileNotFoundError:
        raise _MissingFile(path) from None


def _num(x: Fraction, as_float: bool) -> str:
    return format(float(x), ".15g") if as_float else jsonio.fraction_str(x)


def _emit(args, text, payload):
    print(jsonio.dumps(payload) if args.json else text)


# -- handlers -------------------------------------------------------------------


def _card(args):
    g = jsonio.groupoid_from_json(_load(args.groupoid))
    c = groupoid_cardinality(g)
    _emit(args, _num(c, args.float), {"cardinality": jsonio.fraction_str(c)})


def _functor_card(args):
    h = jsonio.groupoid_from_json(_load(args.source))
    g = jsonio.groupoid_from_json(_load(args.target))
    c = functor_groupoid_cardinality(h, g)
    payload = {"cardinality": jsonio.fraction_str(c)}
    if args.brute:
        b = groupoid_cardinality(functor_groupoid(h, g))
        payload["brute_force"] = jsonio.fraction_str(b)
        text = f"{_num(c, args.float)} (brute force: {_num(b, args.float)})"
    else:
        text = _num(c, args.float)
    _emit(args, text, payload)


def _flags(c):
    return {"full": c.full, "faithful": c.faithful, "essentially_surjective": c.essentially_surjective}


def _factorize(args):
    src = jsonio.groupoid_from_json(_load(args.source))
    tgt = jsonio.groupoid_from_json(_load(args.target))
    f = jsonio.functor_from_json(_load(args.functor), src, tgt)
    t = ternary_factorize(f)
    c2, c1 = groupoid_cardinality(t.im2), groupoid_cardinality(t.im1)
    cls = classify(f)
    lines = [
        "functor: " + ", ".join(f"{k}={str(v).lower()}" for k, v in _flags(cls).items()),
        f"|source| = {_num(groupoid_cardinality(src), args.float)}",
        f"|im2| = {_num(c2, args.float)} ({len(t.im2.objects)} objects, {len(t.im2.morphisms)} morphisms)",
        f"|im1| = {_num(c1, args.float)} ({len(t.im1.objects)} objects, {len(t.im1.morphisms)} morphisms)",
        f"|target| = {_num(groupoid_cardinality(tgt), args.float)}",
    ]
    payload = {
        "classification": _flags(cls),
        "im2": jsonio.groupoid_to_json(t.im2),
        "im1": jsonio.groupoid_to_json(t.im1),
        "im2_card": jsonio.fraction_str(c2),
        "im1_card": jsonio.fraction_str(c1),
        "f2": jsonio.functor_to_json(t.f2),
        "f1": jsonio.functor_to_json(t.f1),
        "f0": jsonio.functor_to_json(t.f0),
    }
    _emit(args, "\n".join(lines), payload)


def _series_text(s, as_float):
    if not as_float:
        return str(s)
    return " + ".join(f"{format(float(c), '.15g')} x^{k}" for k, c in enumerate(s.coeffs) if c)


def _gset_egf(args):
    g = jsonio.group_from_json(_load(args.group))
    s = gset_egf(g, args.N)
    _emit(args, _series_text(s, args.float), jsonio.series_to_json(s))


def _gset_card(args):
    g = jsonio.groupoid_from_json(_load(args.groupoid))
    e = gset_groupoid_exponent(g)
    text = f"exp({jsonio.fraction_str(e.exponent)}) = {format(e.value, '.15g')}"
    _emit(args, text, {"exponent": jsonio.fraction_str(e.exponent), "value": format(e.value, ".15g")})


def _gl_order(args):
    v = gl_order(args.n, args.q)
    _emit(args, str(v), {"order": v})


def _rep_series(args):
    p = RepComponentParams(args.dim, args.q, args.d)
    s = rep_component_series(p, args.N)
    t = tameness_bound_check(p, args.N)
    text = "\n".join(
        [
            _series_text(s, args.float),
            f"partial sum at x=1: {_num(t.partial_sum, args.float)}",
            f"triangular bound: {_num(t.bound, args.float)}",
            f"bound holds: {str(t.holds).lower()}",
        ]
    )
    payload = {
        "series": jsonio.series_to_json(s),
        "partial_sum": jsonio.fraction_str(t.partial_sum),
        "bound": jsonio.fraction_str(t.bound),
        "holds": t.holds,
    }
    _emit(args, text, payload)


def _relfin_hom(args):
    s = jsonio.relfin_from_json(_load(args.source))
    f = jsonio.relfin_from_json(_load(args.target))
    c = faithful_hom_cardinality(s, f) if args.faithful else hom_groupoid_cardinality(s, f)
    _emit(args, _num(c, args.float), {"cardinality": jsonio.fraction_str(c)})


def _relfin_equiv(args):
    a = jsonio.relfin_from_json(_load(args.first))
    b = jsonio.relfin_from_json(_load(args.second))
    v = decide_equivalence(a, b)
    text = f"equivalent: {str(v.equivalent).lower()}"
    if v.equivalent:
        text += f"; matching: {list(v.matching)}"
    payload = {"equivalent": v.equivalent, "matching": list(v.matching) if v.matching is not None else None}
    _emit(args, text, payload)


def _relfin_distinguish(args):
    a = jsonio.relfin_from_json(_load(args.first))
    b = jsonio.relfin_from_json(_load(args.second))
    w = counting_distinguisher(a, b, exhaustive=args.exhaustive)
    if not w:
        _emit(args, "NoneFound", {"witness": None})
        return
    text = (
        f"witness: {jsonio.dumps(jsonio.hom_component_to_json(w.probe))}\n"
        f"cardinalities: {_num(w.card_left, args.float)} vs {_num(w.card_right, args.float)}"
    )
    payload = {
        "witness": jsonio.hom_component_to_json(w.probe),
        "cardinalities": [jsonio.fraction_str(w.card_left), jsonio.fraction_str(w.card_right)],
    }
    _emit(args, text, payload)


def _homcount(args):
    c = jsonio.structure_from_json(_load(args.source))
    a = jsonio.structure_from_json(_load(args.target))
    v = count_injective_homs(c, a) if args.injective else count_homs(c, a)
    _emit(args, str(v), {"count": v})


def _lovasz(args):
    a = jsonio.structure_from_json(_load(args.first))
    b = jsonio.structure_from_json(_load(args.second))
    bound = args.bound if args.bound is not None else max(a.n, b.n)
    v = lovasz_iso_test(a, b, bound)
    if v.indistinguishable:
        _emit(args, "indistinguishable; isomorphic: true", {"distinguished_by": None, "isomorphic": True})
        return
    ha, hb = v.hom_counts
    text = (
        f"distinguished by: {jsonio.dumps(v.distinguished_by.to_json())}\n"
        f"hom counts: {ha} vs {hb}; isomorphic: false"
    )
    payload = {"distinguished_by": v.distinguished_by.to_json(), "hom_counts": [ha, hb], "isomorphic": False}
    _emit(args, text, payload)


def _homotopy(args):
    x = jsonio.space_from_json(_load(args.space))
    c = homotopy_cardinality(x)
    _emit(args, _num(c, args.float), {"cardinality": jsonio.fraction_str(c)})


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--float", action="store_true", help="decimal output, 15 significant digits")

    p = argparse.ArgumentParser(
        prog="groupoidcard",
        description="Exact groupoid cardinalities and the counting theorems built on them.",
        epilog=jsonio.SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for arg, h in positional:
            sp.add_argument(arg, help=h)
        sp.set_defaults(func=fn)
        return sp

    add("card", _card, "cardinality of a groupoid", ("groupoid", "groupoid JSON"))
    sp = add(
        "functor-card",
        _functor_card,
        "cardinality of the functor groupoid [source, target]",
        ("source", "groupoid JSON"),
        ("target", "groupoid JSON"),
    )
    sp.add_argument("--brute", action="store_true", help="also build the functor groupoid explicitly")
    add(
        "factorize",
        _factorize,
        "ternary factorization of a functor",
        ("source", "groupoid JSON"),
        ("target", "groupoid JSON"),
        ("functor", "functor JSON"),
    )
    sp = add("gset-egf", _gset_egf, "generating function of finite G-sets", ("group", "group JSON"))
    sp.add_argument("--N", type=int, default=DEFAULT_TRUNCATION, help="truncation order (default 16)")
    add("gset-card", _gset_card, "cardinality of finite-set-valued functors on a groupoid", ("groupoid", "groupoid JSON"))
    sp = add("gl-order", _gl_order, "order of GL_n over the field with q elements")
    sp.add_argument("n", type=int)
    sp.add_argument("q", type=int)
    sp = add("rep-series", _rep_series, "series of one irreducible representation and its bound")
    sp.add_argument("--dim", type=int, required=True, help="dimension of V")
    sp.add_argument("--q", type=int, required=True, help="size of the ground field (prime power)")
    sp.add_argument("--d", type=int, default=1, help="degree of the endomorphism field over it")
    sp.add_argument("--N", type=int, default=DEFAULT_TRUNCATION, help="truncation order (default 16)")
    sp = add(
        "relfin-hom",
        _relfin_hom,
        "hom groupoid cardinality between objects over BG",
        ("source", "relfin JSON"),
        ("target", "relfin JSON"),
    )
    sp.add_argument("--faithful", action="store_true", help="only faithful morphisms")
    add("relfin-equiv", _relfin_equiv, "decide equivalence of objects over BG", ("first", "relfin JSON"), ("second", "relfin JSON"))
    sp = add(
        "relfin-distinguish",
        _relfin_distinguish,
        "search for a probe with different hom cardinalities",
        ("first", "relfin JSON"),
        ("second", "relfin JSON"),
    )
    sp.add_argument("--exhaustive", action="store_true", help="probe with every small group")
    sp = add("homcount", _homcount, "number of homomorphisms C -> A", ("source", "structure JSON"), ("target", "structure JSON"))
    sp.add_argument("--injective", action="store_true")
    sp = add(
        "lovasz-test",
        _lovasz,
        "compare hom counts from all small structures",
        ("first", "structure JSON"),
        ("second", "structure JSON"),
    )
    sp.add_argument("--bound", type=int, default=None, help="probe size bound (default: max universe size)")
    add("homotopy-card", _homotopy, "homotopy cardinality", ("space", "space JSON"))
    return p


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is not None and first not in COMMANDS:
        print(f"groupoidcard: unknown subcommand {first!r}", file=sys.stderr)
        return EX_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_INVALID
    try:
        args.func(args)
    except _MissingFile as exc:
        print(f"groupoidcard: file not found: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except ValidationError as exc:
        print(f"groupoidcard: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_INVALID
    return 0


def main():
    sys.exit(run())
