"""The calculus of local filters of ideal subsheaves.

A filter here is a set of ideal subsheaves of the structure sheaf that
contains the unit ideal, is closed upward and under finite intersections,
and is local: membership can be tested chart by chart.  On the schemes in
this package every such filter that the engine can reach has a finite
presentation, and LocalFilter stores exactly that presentation:

  Improper            the filter of all ideal subsheaves (zero included);
  Presented           an ExponentFunction r on closed points (a default
                      value plus finitely many exceptions, values in
                      0,1,2,... or INF) together with a ComponentSet of
                      killed components, field components whose zero ideal
                      belongs to the filter.

A Presented filter contains an ideal sheaf exactly when the sheaf's
vanishing order at every closed point x is at most r(x) and its vanishing
components are all killed.  Stalkwise this reads as a chain filter at each
point, which is what StalkFilter reports: the ideals of the local ring
down to a power of the maximal ideal ("up_to"), all powers ("all_powers"),
everything including zero ("everything"), or just the unit ideal at a
residue-field stalk ("full_only").

Normal form makes structural equality agree with equality of filters: an
exception equal to the default is dropped; on an Artinian component the
values are clamped to the stalk length (reaching it means the stalk zero
ideal is in the filter) and the default is folded into explicit values;
killing a curve component upgrades the whole filter to Improper, since an
upward-closed set containing the zero sheaf contains everything; killing
every component is Improper as well.

Meet and join of filters are the pointwise min and max of exponents, the
product adds them (INF absorbing), and all three preserve this
presentation class.  Restriction to a chart keeps the data of the chart's
points.  Generation from finitely many ideal sheaves is the principal
filter of their intersection; the only genuinely non-principal base here,
the family of ideals vanishing on finitely many components of the
symbolic disjoint union, fails to be local and its local closure is
Improper.
"""

from dataclasses import dataclass
from functools import reduce

from .config import DEFAULT_LIMITS, INF, Limits
from .errors import GluingError, QfiltError, UnsupportedFamilyError
from .schemes import (
    AffineLine,
    AffineQuotient,
    DisjointUnion,
    IdealSheaf,
    ProjChartOne,
    ProjLine,
    check_same_scheme,
    sheaf,
    sheaf_intersect,
    zero_sheaf,
)
from .spectrum import (
    ComponentSet,
    SpecPoint,
    covers_universe,
    empty_in_universe,
    generic_point,
)


@dataclass(frozen=True)
class ExponentFunction:
    """Closed-point exponents: a default plus finitely many exceptions."""

    default: int | float
    exceptions: tuple[tuple[SpecPoint, int | float], ...]

    def value(self, pt: SpecPoint) -> int | float:
        for p, v in self.exceptions:
            if p == pt:
                return v
        return self.default

    def support(self) -> tuple[SpecPoint, ...]:
        return tuple(pt for pt, _ in self.exceptions)


@dataclass(frozen=True)
class LocalFilter:
    """A finitely presented local filter of ideal subsheaves."""

    scheme: object
    improper: bool
    exponents: ExponentFunction
    killed: ComponentSet

    def value(self, pt: SpecPoint) -> int | float:
        if self.improper:
            return INF
        return self.exponents.value(pt)

    def __str__(self) -> str:
        if self.improper:
            return "improper"
        parts = [f"default={_show_exp(self.exponents.default)}"]
        for pt, v in self.exponents.exceptions:
            parts.append(f"{pt}:{_show_exp(v)}")
        if not self.killed.is_none:
            parts.append(f"kill {self.killed}")
        return "filter(" + ", ".join(parts) + ")"


def _show_exp(v) -> str:
    return "inf" if v == INF else str(v)


@dataclass(frozen=True)
class StalkFilter:
    """A filter of ideals of a stalk ring: kind "up_to" (with bound),
    "all_powers", "everything", or "full_only"."""

    kind: str
    bound: int | None = None


def up_to(n: int) -> StalkFilter:
    return StalkFilter("up_to", n)


ALL_POWERS = StalkFilter("all_powers")
EVERYTHING = StalkFilter("everything")
FULL_ONLY = StalkFilter("full_only")


# ---------------------------------------------------------------------------
# constructors


def improper_filter(scheme) -> LocalFilter:
    return LocalFilter(scheme, True, ExponentFunction(0, ()),
                       ComponentSet.none().normalize(scheme.component_universe()))


def presented(scheme, default: int | float = 0, exceptions=(), killed=()) -> LocalFilter:
    """Build a Presented filter in normal form (see the module docstring)."""
    universe = scheme.component_universe()
    kcs = killed if isinstance(killed, ComponentSet) else ComponentSet.of(killed)
    kcs = kcs.normalize(universe)
    default = _check_exp(default, "default")
    pairs = list(exceptions.items()) if isinstance(exceptions, dict) else list(exceptions)
    acc: dict[SpecPoint, int | float] = {}
    for pt, v in pairs:
        if pt.kind != "closed":
            raise QfiltError(f"{pt} is not a closed point")
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
        if pt in acc:
            raise QfiltError(f"duplicate exponent for {pt}")
        acc[pt] = _clamp(_check_exp(v, f"value at {pt}"), scheme.closed_cap(pt))
    # killed components: field components stay in the pattern, Artinian ones
    # become cap values, and a killed curve component swallows the filter
    keep_killed = kcs
    if not empty_in_universe(kcs, universe):
        explicit = _explicit_components(kcs, universe)
        if explicit is None:
            # symbolic cofinite pattern: only field components exist there
            keep_killed = kcs
        else:
            keep: set[int] = set()
            for c in explicit:
                kind = scheme.component_kind(c)
                if kind == "curve":
                    return improper_filter(scheme)
                if kind == "artinian":
                    for pt, cap in scheme.artinian_points(c):
                        acc[pt] = cap
                else:
                    keep.add(c)
            keep_killed = ComponentSet.of(keep).normalize(universe)
    # finitely many closed points: fold the default into explicit values
    all_closed = scheme.all_closed_points()
    if all_closed is not None:
        for pt in all_closed:
            acc.setdefault(pt, _clamp(default, scheme.closed_cap(pt)))
        default = 0
    if covers_universe(keep_killed, universe):
        return improper_filter(scheme)
    if all_closed:
        if all(acc.get(pt, 0) >= scheme.closed_cap(pt) for pt in all_closed) and \
                covers_universe(keep_killed.union(
                    ComponentSet.of({pt.component for pt in all_closed})), universe):
            return improper_filter(scheme)
    exc = tuple(sorted(((pt, v) for pt, v in acc.items() if v != default),
                       key=lambda kv: kv[0].sort_key()))
    return LocalFilter(scheme, False, ExponentFunction(default, exc), keep_killed)


def _check_exp(v, what: str):
    if v == INF:
        return INF
    if isinstance(v, int) and not isinstance(v, bool) and v >= 0:
        return v
    raise QfiltError(f"{what} must be a nonnegative integer or INF, not {v!r}")


def _clamp(v, cap):
    if cap == INF:
        return v
    return min(v, cap) if v != INF else cap


def _explicit_components(cs: ComponentSet, universe):
    if cs.is_finite:
        return sorted(cs.members)
    if universe[0] == "finite":
        return [c for c in range(universe[1]) if cs.contains(c)]
    return None


def trivial_filter(scheme) -> LocalFilter:
    """The filter containing only the unit ideal."""
    return presented(scheme)


def principal_filter(scheme, ideal: IdealSheaf) -> LocalFilter:
    """The filter of all ideal sheaves containing the given one."""
    check_same_scheme(scheme, ideal.scheme)
    return presented(scheme, 0, dict(ideal.orders), ideal.killed)


# ---------------------------------------------------------------------------
# membership and stalkwise views


def kill_admitted(flt: LocalFilter, pattern: ComponentSet) -> bool:
    """Whether the filter admits vanishing on every component of the pattern.

    Field components must be killed in the filter; an Artinian component is
    admitted when every point of it sits at its cap; a curve component needs
    the improper filter."""
    if flt.improper:
        return True
    universe = flt.scheme.component_universe()
    leftovers = pattern.intersect(flt.killed.invert())
    if empty_in_universe(leftovers, universe):
        return True
    explicit = _explicit_components(leftovers, universe)
    if explicit is None:
        return False
    for c in explicit:
        if flt.scheme.component_kind(c) != "artinian":
            return False
        if any(flt.exponents.value(pt) < cap for pt, cap in flt.scheme.artinian_points(c)):
            return False
    return True


def contains(flt: LocalFilter, ideal: IdealSheaf) -> bool:
    """Whether the filter contains an ideal sheaf."""
    check_same_scheme(flt.scheme, ideal.scheme)
    if flt.improper:
        return True
    if not kill_admitted(flt, ideal.killed):
        return False
    return all(n <= flt.exponents.value(pt) for pt, n in ideal.orders)


def localize(flt: LocalFilter, pt: SpecPoint) -> StalkFilter:
    """The stalk of the filter at a point."""
    scheme = flt.scheme
    if not scheme.has_point(pt):
        raise QfiltError(f"point {pt} does not lie on {scheme}")
    if flt.improper:
        return EVERYTHING
    if pt.kind == "generic":
        if scheme.component_kind(pt.component) == "field" and flt.killed.contains(pt.component):
            return EVERYTHING
        return FULL_ONLY
    v = flt.exponents.value(pt)
    cap = scheme.closed_cap(pt)
    if v == INF:
        return ALL_POWERS
    if cap != INF and v >= cap:
        return EVERYTHING
    return up_to(int(v))


def restrict(flt: LocalFilter, cid: int) -> LocalFilter:
    """Restrict a filter to a chart; the result lives on the chart scheme."""
    scheme = flt.scheme
    chart = scheme.chart_scheme(cid)
    if isinstance(scheme, (AffineLine, AffineQuotient, ProjChartOne)):
        return flt
    if flt.improper:
        return improper_filter(chart)
    if isinstance(scheme, ProjLine):
        kept = {pt: v for pt, v in flt.exponents.exceptions if scheme.point_in_chart(pt, cid)}
        return presented(chart, flt.exponents.default, kept)
    if isinstance(scheme, DisjointUnion):
        killed = ComponentSet.of([0]) if flt.killed.contains(cid) else ComponentSet.none()
        return presented(chart, killed=killed)
    raise QfiltError(f"unknown scheme {scheme}")


# ---------------------------------------------------------------------------
# the lattice and the product


def meet(a: LocalFilter, b: LocalFilter) -> LocalFilter:
    """Intersection of filters: pointwise min of exponents."""
    check_same_scheme(a.scheme, b.scheme)
    if a.improper:
        return b
    if b.improper:
        return a
    return _pointwise(a, b, min, a.killed.intersect(b.killed))


def join(a: LocalFilter, b: LocalFilter) -> LocalFilter:
    """Smallest local filter containing both: pointwise max of exponents."""
    check_same_scheme(a.scheme, b.scheme)
    if a.improper or b.improper:
        return improper_filter(a.scheme)
    return _pointwise(a, b, max, a.killed.union(b.killed))


def product(a: LocalFilter, b: LocalFilter) -> LocalFilter:
    """The product filter, generated by products of members; exponents add."""
    check_same_scheme(a.scheme, b.scheme)
    if a.improper or b.improper:
        return improper_filter(a.scheme)
    return _pointwise(a, b, lambda x, y: x + y, a.killed.union(b.killed))


def _pointwise(a: LocalFilter, b: LocalFilter, op, killed: ComponentSet) -> LocalFilter:
    pts = set(a.exponents.support()) | set(b.exponents.support())
    default = op(a.exponents.default, b.exponents.default)
    exceptions = {pt: op(a.exponents.value(pt), b.exponents.value(pt)) for pt in pts}
    return presented(a.scheme, default, exceptions, killed)


# ---------------------------------------------------------------------------
# predicates


def is_principal(flt: LocalFilter) -> tuple[bool, IdealSheaf | None]:
    """Whether the filter has a least member, and that member if so."""
    if flt.improper:
        return True, zero_sheaf(flt.scheme)
    r = flt.exponents
    if r.default != 0:
        return False, None
    if any(v == INF for _, v in r.exceptions):
        return False, None
    least = sheaf(flt.scheme, {pt: int(v) for pt, v in r.exceptions}, flt.killed)
    return True, least


def is_product_closed(flt: LocalFilter) -> bool:
    """Whether the filter is closed under products of members."""
    if flt.improper:
        return True
    r = flt.exponents
    if r.default not in (0, INF):
        return False
    return all(v == INF or v == flt.scheme.closed_cap(pt) or v == 0
               for pt, v in r.exceptions)


def is_prime(flt: LocalFilter) -> SpecPoint | None:
    """The point x with flt = {I : I_x = O_x}, if there is one."""
    scheme = flt.scheme
    if flt.improper:
        return None
    r = flt.exponents
    if isinstance(scheme, (AffineLine, ProjLine, ProjChartOne)):
        if r.default != INF:
            return None
        if not r.exceptions:
            return generic_point(0)
        if len(r.exceptions) == 1 and r.exceptions[0][1] == 0:
            return r.exceptions[0][0]
        return None
    if isinstance(scheme, AffineQuotient):
        low = [(pt, v) for pt, v in ((pt, r.value(pt)) for pt, _ in scheme.primes())
               if v < scheme.closed_cap(pt)]
        if len(low) == 1 and low[0][1] == 0:
            return low[0][0]
        return None
    if isinstance(scheme, DisjointUnion):
        alive = flt.killed.invert().normalize(scheme.component_universe())
        if not alive.is_finite or len(alive.members) != 1:
            return None
        (c,) = alive.members
        return generic_point(c)
    raise QfiltError(f"unknown scheme {scheme}")


# ---------------------------------------------------------------------------
# generation and locality


@dataclass(frozen=True)
class FilterBase:
    """A generating set for a filter: finitely many ideal sheaves, or one
    named symbolic family."""

    scheme: object
    generators: tuple[IdealSheaf, ...] = ()
    family: str | None = None


COFINITE_FAMILY = "cofinite-components"


def filter_base(scheme, generators) -> FilterBase:
    gens = tuple(generators)
    for g in gens:
        check_same_scheme(scheme, g.scheme)
    if not gens:
        raise QfiltError("a filter base needs at least one generator")
    return FilterBase(scheme, gens)


def cofinite_family(scheme) -> FilterBase:
    """The family of ideal sheaves vanishing on finitely many components of
    the symbolic disjoint union."""
    if not (isinstance(scheme, DisjointUnion) and scheme.is_symbolic):
        raise UnsupportedFamilyError(
            "the cofinite-components family lives on the symbolic disjoint union only"
        )
    return FilterBase(scheme, (), COFINITE_FAMILY)


def generate(base: FilterBase) -> LocalFilter:
    """Smallest local filter containing the base."""
    if base.family == COFINITE_FAMILY:
        # every component admits a member vanishing there, so the local
        # closure contains every ideal sheaf
        return improper_filter(base.scheme)
    if base.family is not None:
        raise UnsupportedFamilyError(f"unsupported symbolic family {base.family!r}")
    least = reduce(sheaf_intersect, base.generators)
    return principal_filter(base.scheme, least)


def is_local(base: FilterBase) -> tuple[bool, LocalFilter]:
    """Whether the plain filter generated by the base is already local,
    together with the local closure.

    A finite base generates the principal filter of the intersection of
    its members, which is local on every model here.  The cofinite family
    on the symbolic disjoint union is the counterexample: it is a filter
    but not a local one, and its local closure is Improper."""
    closure = generate(base)
    if base.family == COFINITE_FAMILY:
        return False, closure
    return True, closure


# ---------------------------------------------------------------------------
# gluing


def glue_filters(scheme, chart_data: dict, rest: str | None = None) -> LocalFilter:
    """Assemble a filter from per-chart filters.

    Chart filters must agree on shared points (same default, same
    exceptional values).  On a disjoint union, components missing from
    chart_data take `rest`: "trivial" (the unit-ideal filter, the default)
    or "improper"."""
    if isinstance(scheme, (AffineLine, AffineQuotient, ProjChartOne)):
        if set(chart_data) != {0}:
            raise GluingError("expected exactly chart 0")
        flt = chart_data[0]
        check_same_scheme(flt.scheme, scheme.chart_scheme(0))
        return flt
    if isinstance(scheme, ProjLine):
        return _glue_proj_filters(scheme, chart_data)
    if isinstance(scheme, DisjointUnion):
        return _glue_union_filters(scheme, chart_data, rest)
    raise QfiltError(f"unknown scheme {scheme}")


def _glue_proj_filters(scheme: ProjLine, chart_data: dict) -> LocalFilter:
    if set(chart_data) != {0, 1}:
        raise GluingError("the projective line needs chart data for charts 0 and 1")
    f0, f1 = chart_data[0], chart_data[1]
    check_same_scheme(f0.scheme, scheme.chart_scheme(0))
    check_same_scheme(f1.scheme, scheme.chart_scheme(1))
    if f0.improper != f1.improper:
        raise GluingError("incompatible charts: improper on one chart only")
    if f0.improper:
        return improper_filter(scheme)
    r0, r1 = f0.exponents, f1.exponents
    if r0.default != r1.default:
        raise GluingError(
            f"incompatible defaults: {_show_exp(r0.default)} in chart 0, "
            f"{_show_exp(r1.default)} in chart 1"
        )
    zero_pt = scheme.zero_point()
    d0, d1 = dict(r0.exceptions), dict(r1.exceptions)
    for pt in sorted(set(d0) | set(d1), key=SpecPoint.sort_key):
        if pt == zero_pt or not scheme.point_in_chart(pt, 0):
            continue
        if not scheme.point_in_chart(pt, 1):
            continue
        if d0.get(pt, r0.default) != d1.get(pt, r1.default):
            raise GluingError(
                f"incompatible at point {pt}: {_show_exp(d0.get(pt, r0.default))} in chart 0, "
                f"{_show_exp(d1.get(pt, r1.default))} in chart 1"
            )
    merged = dict(d0)
    merged.update(d1)
    return presented(scheme, r0.default, merged)


def _glue_union_filters(scheme: DisjointUnion, chart_data: dict, rest: str | None) -> LocalFilter:
    rest = rest or "trivial"
    if rest not in ("trivial", "improper"):
        raise GluingError(f"rest must be 'trivial' or 'improper', not {rest!r}")
    killed_explicit, alive_explicit = set(), set()
    for cid, flt in chart_data.items():
        if not scheme.is_symbolic and not (0 <= cid < len(scheme.components)):
            raise GluingError(f"no component {cid} on {scheme}")
        check_same_scheme(flt.scheme, scheme.chart_scheme(cid))
        (killed_explicit if flt.improper else alive_explicit).add(cid)
    if rest == "trivial":
        killed = ComponentSet.of(killed_explicit)
    else:
        killed = ComponentSet.cofinite(alive_explicit)
    return presented(scheme, killed=killed)


# ---------------------------------------------------------------------------
# finite enumeration


def enumerate_quotient_filters(scheme: AffineQuotient,
                               limits: Limits = DEFAULT_LIMITS) -> tuple[LocalFilter, ...]:
    """All local filters on an Artinian quotient, one per exponent vector."""
    import itertools

    if scheme.ring.degree > limits.max_quotient_degree:
        raise QfiltError(
            f"lattice too large: modulus degree {scheme.ring.degree} "
            f"exceeds {limits.max_quotient_degree}"
        )
    prime_pts = scheme.primes()
    ranges = [range(cap + 1) for _, cap in prime_pts]
    out = []
    for exps in itertools.product(*ranges):
        exceptions = {pt: e for (pt, _), e in zip(prime_pts, exps)}
        out.append(presented(scheme, 0, exceptions))
    return tuple(out)
