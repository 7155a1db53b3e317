"""The JSON literal grammar shared by job files and CLI output.

Schemes:  {"kind": "affine_line", "field": {"p": 2} | "symbolic"}
          {"kind": "affine_quotient", "p": 2, "modulus": "x^3"}
          {"kind": "proj_line", "field": ...}
          {"kind": "disjoint_union", "components": "Z" | [field, ...]}
Points:   "pt:a", "pt:x^2+x+1", "pt:inf", "gen", "comp:3"
Ideals:   polynomial strings "x^3+x", "(x-a)^2*(x-b)", "0", "1" on affine
          charts, or {"orders": {point: n}, "kill": [comp, ...],
          "kill_all_but": [comp, ...]} anywhere
Filters:  {"kind": "improper"}
          {"kind": "exponents", "default": 0 | "inf" | n,
           "exceptions": {point: n | "inf"}, "kill": [...], "kill_all_but": [...]}
          {"kind": "principal", "ideal": ideal literal}
          {"kind": "generated", "ideals": [ideal literal, ...]}
          {"kind": "cofinite-family"}
Modules:  {"divisors": [[point, e], ...] | {point: e}, "free":
          true | false | [comp, ...] | {"all_but": [comp, ...]}}

Formatting is the exact inverse of parsing on normal forms, with sorted
keys throughout so that serialized output is deterministic.
"""

from .config import INF
from .errors import ParseError, QfiltError
from .fields import check_label, field_from_literal, field_to_literal
from .filters import (
    COFINITE_FAMILY,
    FilterBase,
    LocalFilter,
    StalkFilter,
    cofinite_family,
    filter_base,
    generate,
    improper_filter,
    presented,
    principal_filter,
)
from .ideals import QuotientRing, principal_ideal
from .poly import poly_from_literal, poly_from_str, poly_to_str
from .schemes import (
    AffineLine,
    AffineQuotient,
    DisjointUnion,
    IdealSheaf,
    ProjChartOne,
    ProjLine,
    sheaf,
    sheaf_from_affine_ideal,
)
from .spectrum import (
    INF_NAME,
    ComponentSet,
    SpecClosedSet,
    SpecPoint,
    TorsionSheafData,
    generic_point,
    inf_point,
    module_data,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# schemes


def scheme_from_literal(lit) -> object:
    if not isinstance(lit, dict) or "kind" not in lit:
        raise ParseError(f"scheme literal must be an object with 'kind': {lit!r}")
    kind = lit["kind"]
    if kind == "affine_line":
        return AffineLine(field_from_literal(lit.get("field", "symbolic")))
    if kind == "proj_line":
        return ProjLine(field_from_literal(lit.get("field", "symbolic")))
    if kind == "affine_quotient":
        if "p" not in lit or "modulus" not in lit:
            raise ParseError("affine_quotient needs 'p' and 'modulus'")
        field = field_from_literal({"p": lit["p"]})
        modulus = poly_from_str(lit["modulus"], field.p)
        return AffineQuotient(QuotientRing.make(field, modulus))
    if kind == "disjoint_union":
        comps = lit.get("components", "Z")
        if comps == "Z":
            return DisjointUnion.symbolic()
        return DisjointUnion.explicit([field_from_literal(c) for c in comps])
    raise ParseError(f"unknown scheme kind {kind!r}")


def scheme_to_literal(scheme) -> dict:
    if isinstance(scheme, AffineLine):
        return {"kind": "affine_line", "field": field_to_literal(scheme.field)}
    if isinstance(scheme, ProjLine):
        return {"kind": "proj_line", "field": field_to_literal(scheme.field)}
    if isinstance(scheme, AffineQuotient):
        return {"kind": "affine_quotient", "p": scheme.ring.modulus.p,
                "modulus": poly_to_str(scheme.ring.modulus)}
    if isinstance(scheme, DisjointUnion):
        if scheme.is_symbolic:
            return {"kind": "disjoint_union", "components": "Z"}
        return {"kind": "disjoint_union",
                "components": [field_to_literal(f) for f in scheme.components]}
    raise QfiltError(f"unknown scheme {scheme}")


# ---------------------------------------------------------------------------
# points


def point_from_literal(scheme, text: str) -> SpecPoint:
    if not isinstance(text, str):
        raise ParseError(f"point literal must be a string: {text!r}")
    if text == "gen":
        pt = generic_point(0)
        if not scheme.has_point(pt):
            raise ParseError(f"{scheme} has no generic point 'gen'")
        return pt
    if text.startswith("comp:"):
        try:
            c = int(text[5:])
        except ValueError:
            raise ParseError(f"bad component literal {text!r}") from None
        pt = generic_point(c)
        if not scheme.has_point(pt):
            raise ParseError(f"{scheme} has no component {c}")
        return pt
    name = text[3:] if text.startswith("pt:") else text
    if name == INF_NAME:
        pt = inf_point()
        if not scheme.has_point(pt):
            raise ParseError(f"{scheme} has no point at infinity")
        return pt
    pt = _closed_point_on(scheme, name)
    if pt is None:
        raise ParseError(f"point {text!r} does not lie on {scheme}")
    return pt


def _closed_point_on(scheme, name: str):
    if isinstance(scheme, AffineQuotient):
        field = scheme.ring.field
        try:
            poly = poly_from_str(name, field.p)
        except ParseError:
            return None
        for pt, _ in scheme.primes():
            if pt.name == poly.monic():
                return pt
        return None
    if isinstance(scheme, (AffineLine, ProjLine, ProjChartOne)):
        field = scheme.field
        if hasattr(field, "p"):
            try:
                poly = poly_from_str(name, field.p).monic()
            except ParseError:
                return None
            pt = SpecPoint("closed", 0, poly)
        else:
            try:
                pt = SpecPoint("closed", 0, check_label(name))
            except QfiltError:
                return None
        return pt if scheme.has_point(pt) else None
    return None


def point_to_literal(pt: SpecPoint) -> str:
    if pt.kind == "generic":
        return f"comp:{pt.component}"
    name = pt.name if isinstance(pt.name, str) else poly_to_str(pt.name)
    return f"pt:{name}"


def point_to_literal_on(scheme, pt: SpecPoint) -> str:
    if pt.kind == "generic" and not isinstance(scheme, DisjointUnion):
        return "gen"
    return point_to_literal(pt)


# ---------------------------------------------------------------------------
# component patterns


def _components_from_literal(lit_kill, lit_all_but) -> ComponentSet:
    if lit_kill and lit_all_but:
        raise ParseError("use either 'kill' or 'kill_all_but', not both")
    if lit_all_but is not None:
        return ComponentSet.cofinite(_component_indices(lit_all_but))
    return ComponentSet.of(_component_indices(lit_kill or []))


def _component_indices(items) -> list[int]:
    out = []
    for item in items:
        if isinstance(item, int):
            out.append(item)
        elif isinstance(item, str) and item.startswith("comp:"):
            out.append(int(item[5:]))
        else:
            raise ParseError(f"bad component {item!r}; use an index or 'comp:N'")
    return out


def components_to_literal(cs: ComponentSet) -> dict:
    if cs.is_finite:
        return {"kill": sorted(cs.members)} if cs.members else {}
    return {"kill_all_but": sorted(cs.members)}


# ---------------------------------------------------------------------------
# ideal sheaves


def ideal_from_literal(scheme, lit) -> IdealSheaf:
    if isinstance(lit, str):
        if isinstance(scheme, (AffineLine, AffineQuotient)):
            field = scheme.field if isinstance(scheme, AffineLine) else scheme.ring.field
            return sheaf_from_affine_ideal(scheme, principal_ideal(field, poly_from_literal(lit, field)))
        raise ParseError(f"polynomial ideal literals need an affine chart, not {scheme}")
    if isinstance(lit, dict):
        orders = {point_from_literal(scheme, k): v
                  for k, v in lit.get("orders", {}).items()}
        killed = _components_from_literal(lit.get("kill"), lit.get("kill_all_but"))
        return sheaf(scheme, orders, killed)
    raise ParseError(f"bad ideal literal {lit!r}")


def ideal_to_literal(ideal: IdealSheaf) -> dict:
    out = {"orders": {point_to_literal(pt): n for pt, n in ideal.orders}}
    out.update(components_to_literal(ideal.killed))
    return out


# ---------------------------------------------------------------------------
# filters


def _exponent_from_literal(v):
    if v == "inf" or v == INF:
        return INF
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    if isinstance(v, str) and v.isdigit():
        return int(v)
    raise ParseError(f"bad exponent {v!r}; use an integer or \"inf\"")


def _exponent_to_literal(v):
    return "inf" if v == INF else int(v)


def filter_from_literal(scheme, lit) -> LocalFilter:
    base = _maybe_base_from_literal(scheme, lit)
    if base is not None:
        if base.family == COFINITE_FAMILY:
            raise QfiltError(
                "the cofinite-components family is not a local filter; "
                "apply 'op generate' to it instead")
        return generate(base)
    if not isinstance(lit, dict) or "kind" not in lit:
        raise ParseError(f"filter literal must be an object with 'kind': {lit!r}")
    kind = lit["kind"]
    if kind == "improper":
        return improper_filter(scheme)
    if kind == "exponents":
        default = _exponent_from_literal(lit.get("default", 0))
        exceptions = {point_from_literal(scheme, k): _exponent_from_literal(v)
                      for k, v in lit.get("exceptions", {}).items()}
        killed = _components_from_literal(lit.get("kill"), lit.get("kill_all_but"))
        return presented(scheme, default, exceptions, killed)
    if kind == "principal":
        return principal_filter(scheme, ideal_from_literal(scheme, lit["ideal"]))
    raise ParseError(f"unknown filter kind {kind!r}")


def _maybe_base_from_literal(scheme, lit):
    if isinstance(lit, dict) and lit.get("kind") == "generated":
        gens = [ideal_from_literal(scheme, i) for i in lit.get("ideals", [])]
        return filter_base(scheme, gens)
    if isinstance(lit, dict) and lit.get("kind") == "cofinite-family":
        return cofinite_family(scheme)
    return None


def base_from_literal(scheme, lit) -> FilterBase:
    """A generating set: 'generated' and 'cofinite-family' literals, plus
    any filter literal with a least member as a one-generator base."""
    base = _maybe_base_from_literal(scheme, lit)
    if base is not None:
        return base
    from .filters import is_principal

    flt = filter_from_literal(scheme, lit)
    ok, least = is_principal(flt)
    if not ok:
        raise QfiltError("this filter has no least member to generate from")
    return filter_base(scheme, [least])


def filter_to_literal(flt: LocalFilter) -> dict:
    if flt.improper:
        return {"kind": "improper"}
    out = {"kind": "exponents",
           "default": _exponent_to_literal(flt.exponents.default)}
    if flt.exponents.exceptions:
        out["exceptions"] = {point_to_literal(pt): _exponent_to_literal(v)
                             for pt, v in flt.exponents.exceptions}
    out.update(components_to_literal(flt.killed))
    return out


def stalk_to_literal(stalk: StalkFilter) -> dict:
    if stalk.kind == "up_to":
        return {"kind": "up_to", "bound": stalk.bound}
    return {"kind": stalk.kind}


# ---------------------------------------------------------------------------
# modules


def module_from_literal(scheme, lit) -> TorsionSheafData:
    if not isinstance(lit, dict):
        raise ParseError(f"module literal must be an object: {lit!r}")
    raw = lit.get("divisors", [])
    pairs = raw.items() if isinstance(raw, dict) else raw
    divisors = [(point_from_literal(scheme, k), v) for k, v in pairs]
    free = lit.get("free", False)
    if isinstance(free, dict):
        free = ComponentSet.cofinite(_component_indices(free.get("all_but", [])))
    elif isinstance(free, list):
        free = ComponentSet.of(_component_indices(free))
    return module_data(scheme, divisors, free)


def module_to_literal(data: TorsionSheafData) -> dict:
    out = {"divisors": [[point_to_literal(pt), e] for pt, e in data.divisors]}
    if data.free.is_none:
        out["free"] = False
    elif data.free.is_finite:
        out["free"] = sorted(data.free.members)
    else:
        out["free"] = {"all_but": sorted(data.free.members)}
    return out


# ---------------------------------------------------------------------------
# closed sets and reports


def specclosed_to_literal(s: SpecClosedSet) -> dict:
    if s.kind in ("empty", "all"):
        return {"kind": s.kind}
    if s.kind == "finite":
        return {"kind": "finite", "points": [point_to_literal(p) for p in s.points]}
    if s.kind == "cofinite_closed":
        return {"kind": "cofinite_closed",
                "excluded": [point_to_literal(p) for p in s.points]}
    cs = s.components
    if cs.is_finite:
        return {"kind": "components", "components": sorted(cs.members)}
    return {"kind": "components", "components": {"all_but": sorted(cs.members)}}
