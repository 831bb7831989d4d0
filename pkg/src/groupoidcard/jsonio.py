"""JSON formats for every input and output type.

Lists inside ids are read back as tuples, so any id emitted here re-parses
to an equal value.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvalidFunctor, InvalidGroupoid, ValidationError
from .functors import GroupoidFunctor
from .groupoids import FiniteGroupoid, from_skeletal
from .groups import FiniteGroup, GroupHom, group_from_cayley, make_hom, permutation_group, small_group
from .homotopy import PiFiniteSpace
from .relational import RelationalStructure
from .relfin import RelFinObject
from .series import RationalSeries

SCHEMAS = """\
JSON input formats
  group      {"order": n, "table": [[...], ...]}
             {"permutations": {"degree": d, "generators": [[...], ...]}}
             {"name": "S3"}  (built-in: C1..C12, V4, S3..S6, D4, Q8, A4, ...)
  groupoid   {"objects": [...], "morphisms": [{"id": m, "src": x, "dst": y}, ...],
              "compose": [[f, g, fg], ...]}   fg = f after g, one triple per composable pair
             {"components": [{"aut_order_table": [[...]]}, ...]}   skeletal shorthand
             a bare group is read as its one-object groupoid
  functor    {"object_map": [[x, Fx], ...], "morphism_map": [[m, Fm], ...]}
  relfin     {"base": <group>, "components": [{"group": <group>, "map": [...]}, ...]}
  structure  {"signature": [2], "n": 3, "relations": [[[0, 1], [1, 2], [2, 0]]]}
  space      {"components": [[3], [1, 2]]}   orders of pi_1, pi_2, ... per component
"""


def freeze(x):
    """JSON value to hashable id: lists become tuples."""
    if isinstance(x, list):
        return tuple(freeze(v) for v in x)
    if isinstance(x, dict):
        raise ValidationError("ids must be scalars or lists")
    return x


def thaw(x):
    if isinstance(x, tuple):
        return [thaw(v) for v in x]
    return x


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {s!r}") from exc


def _require(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise ValidationError(f"{what} JSON needs a {key!r} field")
    return data[key]


# -- groups ---------------------------------------------------------------------


def is_group_json(data) -> bool:
    return isinstance(data, dict) and any(k in data for k in ("table", "permutations", "name"))


def group_from_json(data) -> FiniteGroup:
    if not isinstance(data, dict):
        raise ValidationError("group JSON must be an object")
    if "table" in data:
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise ValidationError(f"order {data['order']} does not match a table with {len(table)} rows")
        return group_from_cayley(table)
    if "permutations" in data:
        p = data["permutations"]
        d = _require(p, "degree", "permutations")
        gens = _require(p, "generators", "permutations")
        return permutation_group(d, [tuple(g) for g in gens])
    if "name" in data:
        return small_group(str(data["name"]))
    raise ValidationError("group JSON needs 'table', 'permutations' or 'name'")


def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(r) for r in g.table]}


# -- groupoids --------------------------------------------------------------------


def groupoid_from_json(data) -> FiniteGroupoid:
    if is_group_json(data):
        return from_skeletal([group_from_json(data)])
    if isinstance(data, dict) and "components" in data and "objects" not in data:
        groups = []
        for c in data["components"]:
            if isinstance(c, dict) and "aut_order_table" in c:
                groups.append(group_from_cayley(c["aut_order_table"]))
            elif isinstance(c, dict) and "group" in c:
                groups.append(group_from_json(c["group"]))
            else:
                raise InvalidGroupoid("skeletal components need 'aut_order_table'")
        return from_skeletal(groups)
    objects = [freeze(x) for x in _require(data, "objects", "groupoid")]
    if len(set(objects)) != len(objects):
        raise InvalidGroupoid("duplicate object ids")
    mors = []
    for m in _require(data, "morphisms", "groupoid"):
        if isinstance(m, dict):
            try:
                mors.append((freeze(m["id"]), freeze(m["src"]), freeze(m["dst"])))
            except KeyError as exc:
                raise InvalidGroupoid(f"morphism entry is missing {exc}") from None
        elif isinstance(m, list) and len(m) == 3:
            mors.append(tuple(freeze(v) for v in m))
        else:
            raise InvalidGroupoid(f"bad morphism entry {m!r}")
    ids = [m[0] for m in mors]
    if len(set(ids)) != len(ids):
        raise InvalidGroupoid("duplicate morphism ids")
    objset = set(objects)
    for mid, s, d in mors:
        if s not in objset or d not in objset:
            raise InvalidGroupoid(f"morphism {mid!r} has an unknown endpoint")
    src = {m[0]: m[1] for m in mors}
    dst = {m[0]: m[2] for m in mors}
    table = {}
    for entry in _require(data, "compose", "groupoid"):
        if not isinstance(entry, list) or len(entry) != 3:
            raise InvalidGroupoid(f"compose entries are [f, g, fg], got {entry!r}")
        f, g, fg = (freeze(v) for v in entry)
        for v in (f, g, fg):
            if v not in src:
                raise InvalidGroupoid(f"compose mentions unknown morphism {v!r}")
        if src[f] != dst[g]:
            raise InvalidGroupoid(f"{f!r} and {g!r} are not composable")
        if (f, g) in table and table[(f, g)] != fg:
            raise InvalidGroupoid(f"composite of {f!r} and {g!r} given twice")
        table[(f, g)] = fg
    for f in ids:
        for g in ids:
            if src[f] == dst[g] and (f, g) not in table:
                raise InvalidGroupoid(f"composite of {f!r} after {g!r} is missing")
    idents = {}
    for x in objects:
        loops = [m for m in ids if src[m] == x and dst[m] == x and table[(m, m)] == m]
        if len(loops) != 1:
            raise InvalidGroupoid(f"object {x!r} needs exactly one identity, found {len(loops)}")
        idents[x] = loops[0]
    return FiniteGroupoid(objects, mors, table, idents).validate()


def groupoid_to_json(g: FiniteGroupoid) -> dict:
    return {
        "objects": [thaw(x) for x in g.objects],
        "morphisms": [{"id": thaw(m.id), "src": thaw(m.src), "dst": thaw(m.dst)} for m in g.morphisms],
        "compose": [[thaw(f), thaw(h), thaw(fh)] for f, h, fh in g.composition_triples()],
    }


# -- functors -----------------------------------------------------------------------


def _pairs(data, what):
    if isinstance(data, dict):
        return [(_key(k), freeze(v)) for k, v in data.items()]
    out = []
    for e in data:
        if not isinstance(e, list) or len(e) != 2:
            raise InvalidFunctor(f"{what} entries are [source, image], got {e!r}")
        out.append((freeze(e[0]), freeze(e[1])))
    return out


def _key(k):
    try:
        return int(k)
    except ValueError:
        return k


def functor_from_json(data, source: FiniteGroupoid, target: FiniteGroupoid) -> GroupoidFunctor:
    om = dict(_pairs(_require(data, "object_map", "functor"), "object_map"))
    mm = dict(_pairs(_require(data, "morphism_map", "functor"), "morphism_map"))
    return GroupoidFunctor(source, target, om, mm).validate()


def functor_to_json(f: GroupoidFunctor) -> dict:
    return {
        "object_map": [[thaw(x), thaw(f.object_map[x])] for x in f.source.objects],
        "morphism_map": [[thaw(m.id), thaw(f.morphism_map[m.id])] for m in f.source.morphisms],
    }


# -- relative objects ------------------------------------------------------------------


def relfin_from_json(data) -> RelFinObject:
    base = group_from_json(_require(data, "base", "relfin"))
    comps = []
    for c in _require(data, "components", "relfin"):
        k = group_from_json(_require(c, "group", "relfin component"))
        comps.append(make_hom(k, base, list(_require(c, "map", "relfin component"))))
    return RelFinObject(base, comps)


def hom_component_to_json(c: GroupHom) -> dict:
    return {"group": group_to_json(c.source), "map": list(c.map)}


def relfin_to_json(x: RelFinObject) -> dict:
    return {"base": group_to_json(x.base), "components": [hom_component_to_json(c) for c in x.components]}


# -- the rest ------------------------------------------------------------------------------


def structure_from_json(data) -> RelationalStructure:
    return RelationalStructure.from_json(data)


def structure_to_json(s: RelationalStructure) -> dict:
    return s.to_json()


def space_from_json(data) -> PiFiniteSpace:
    return PiFiniteSpace.from_json(data)


def space_to_json(x: PiFiniteSpace) -> dict:
    return x.to_json()


def series_from_json(data) -> RationalSeries:
    n = _require(data, "truncation", "series")
    coeffs = [parse_fraction(c) for c in _require(data, "coeffs", "series")]
    return RationalSeries(int(n), tuple(coeffs))


def series_to_json(s: RationalSeries) -> dict:
    return {"truncation": s.truncation, "coeffs": [fraction_str(c) for c in s.coeffs]}


def load(path):
    """Parse a JSON file; malformed JSON is a :class:`ValidationError`."""
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None


def dumps(value) -> str:
    return json.dumps(value, sort_keys=True)
