"""Desk-scale scheme models, their charts, and quasi-coherent ideal sheaves.

Four shapes are supported, each with canonical affine charts:

  AffineLine(k)        the line over a prime or symbolic field; one chart.
  AffineQuotient(R)    Spec k[x]/(f); one chart, one connected component
                       per prime factor of f, each a single closed point
                       whose stalk is a chain ring of length the
                       multiplicity of that prime.
  ProjLine(k)          the projective line; two charts, which are the
                       affine line (chart 0, missing "inf") and a punctured
                       copy with "inf" added (chart 1, missing the zero
                       point).  Points are intrinsic, shared by charts by
                       name, so gluing never rewrites coordinates.
  DisjointUnion        finitely many Spec k_i, or the symbolic Z-indexed
                       family; every component is a single generic point.

An ideal subsheaf of the structure sheaf is stored intrinsically as
IdealSheaf: a ComponentSet of components where it vanishes, plus finitely
many (closed point, order) pairs away from those; everything else is the
unit ideal.  On an Artinian component, an order equal to the stalk length
means the stalk is zero, so such orders are normalized into the killed
pattern and stored orders stay strictly below the cap.  This normal form
makes structural equality coincide with equality of subsheaves.

Products, sums and intersections of ideal sheaves act pointwise on
effective orders (the order at a vanishing component counts as INF), and
containment is the reversed pointwise comparison.  glue_ideals assembles a
global sheaf from per-chart data and reports the first point where charts
disagree on the overlap.
"""

from dataclasses import dataclass
from typing import ClassVar

from .config import DEFAULT_LIMITS, INF, Limits
from .errors import GluingError, QfiltError, RingMismatchError
from .fields import BaseField, PrimeField, SymbolicAlgClosed, check_label
from .ideals import AffineIdeal, QuotientRing, quotient_reduce
from .poly import PrimePoly, factor, is_irreducible, irreducibles, x_poly
from .spectrum import (
    ComponentSet,
    SpecClosedSet,
    SpecPoint,
    all_set,
    closed_point,
    component_set,
    covers_universe,
    empty_in_universe,
    finite_closed,
    generic_point,
    inf_point,
    INF_NAME,
)


def _valid_closed_name_on_line(field: BaseField, name) -> bool:
    if isinstance(field, PrimeField):
        return isinstance(name, PrimePoly) and name.p == field.p and is_irreducible(name)
    return isinstance(name, str) and name != INF_NAME


@dataclass(frozen=True)
class AffineLine:
    """The affine line over a prime or symbolic algebraically closed field."""

    field: BaseField
    kind: ClassVar[str] = "affine_line"

    def charts(self):
        return (0,)

    def chart_scheme(self, cid: int):
        if cid != 0:
            raise QfiltError(f"{self} has no chart {cid}")
        return self

    @property
    def has_generic_points(self) -> bool:
        return True

    def component_universe(self):
        return ("finite", 1)

    def component_kind(self, c: int) -> str:
        return "curve"

    def generic_points(self):
        return (generic_point(0),)

    def all_closed_points(self):
        return None

    def artinian_points(self, c: int):
        return ()

    def has_point(self, pt: SpecPoint) -> bool:
        if pt.component != 0:
            return False
        if pt.kind == "generic":
            return True
        return _valid_closed_name_on_line(self.field, pt.name)

    def closed_cap(self, pt: SpecPoint):
        return INF

    def spec_points(self, degree_bound, labels, limits: Limits):
        if isinstance(self.field, PrimeField):
            bound = degree_bound or 1
            closed = [closed_point(q) for d in range(1, bound + 1)
                      for q in irreducibles(self.field.p, d, limits.max_poly_enumeration)]
        else:
            closed = [closed_point(check_label(l)) for l in labels]
        return tuple(closed), (generic_point(0),), True, False

    def __str__(self) -> str:
        return f"A1({self.field})"


@dataclass(frozen=True)
class AffineQuotient:
    """Spec k[x]/(f): one closed point per prime factor of f, each its own
    connected component with a chain-ring stalk of length the multiplicity."""

    ring: QuotientRing
    kind: ClassVar[str] = "affine_quotient"

    def primes(self) -> tuple[tuple[SpecPoint, int], ...]:
        """((point, stalk length), ...) in component order."""
        out = []
        for i, (q, e) in enumerate(self.ring.prime_factors()):
            name = q if isinstance(q, PrimePoly) else q.factors[0][0]
            out.append((SpecPoint("closed", i, name), e))
        return tuple(out)

    def charts(self):
        return (0,)

    def chart_scheme(self, cid: int):
        if cid != 0:
            raise QfiltError(f"{self} has no chart {cid}")
        return self

    @property
    def has_generic_points(self) -> bool:
        return False

    def component_universe(self):
        return ("finite", len(self.ring.prime_factors()))

    def component_kind(self, c: int) -> str:
        return "artinian"

    def generic_points(self):
        return ()

    def all_closed_points(self):
        return tuple(pt for pt, _ in self.primes())

    def artinian_points(self, c: int):
        pt, cap = self.primes()[c]
        return ((pt, cap),)

    def has_point(self, pt: SpecPoint) -> bool:
        return pt in {p for p, _ in self.primes()}

    def closed_cap(self, pt: SpecPoint):
        for p, cap in self.primes():
            if p == pt:
                return cap
        raise QfiltError(f"point {pt} does not lie on {self}")

    def point_for_prime(self, prime) -> SpecPoint:
        """Look up the point named by a monic prime polynomial or a label."""
        for p, _ in self.primes():
            if p.name == prime:
                return p
        raise QfiltError(f"{prime} is not a prime of {self}")

    def spec_points(self, degree_bound, labels, limits: Limits):
        return self.all_closed_points(), (), False, False

    def __str__(self) -> str:
        return str(self.ring)


@dataclass(frozen=True)
class ProjLine:
    """The projective line with intrinsic points: the points of the affine
    line plus "inf".  Chart 0 misses "inf"; chart 1 misses the zero point."""

    field: BaseField
    kind: ClassVar[str] = "proj_line"

    def zero_point(self) -> SpecPoint:
        if isinstance(self.field, PrimeField):
            return closed_point(x_poly(self.field.p))
        return closed_point("0")

    def charts(self):
        return (0, 1)

    def chart_scheme(self, cid: int):
        if cid == 0:
            return AffineLine(self.field)
        if cid == 1:
            return ProjChartOne(self.field)
        raise QfiltError(f"{self} has no chart {cid}")

    @property
    def has_generic_points(self) -> bool:
        return True

    def component_universe(self):
        return ("finite", 1)

    def component_kind(self, c: int) -> str:
        return "curve"

    def generic_points(self):
        return (generic_point(0),)

    def all_closed_points(self):
        return None

    def artinian_points(self, c: int):
        return ()

    def has_point(self, pt: SpecPoint) -> bool:
        if pt.component != 0:
            return False
        if pt.kind == "generic":
            return True
        if pt.name == INF_NAME:
            return True
        return _valid_closed_name_on_line(self.field, pt.name)

    def closed_cap(self, pt: SpecPoint):
        return INF

    def point_in_chart(self, pt: SpecPoint, cid: int) -> bool:
        if pt.kind == "generic":
            return True
        if cid == 0:
            return pt.name != INF_NAME
        return pt != self.zero_point()

    def spec_points(self, degree_bound, labels, limits: Limits):
        line = AffineLine(self.field)
        closed, generic, _, _ = line.spec_points(degree_bound, labels, limits)
        return closed + (inf_point(),), generic, True, False

    def __str__(self) -> str:
        return f"P1({self.field})"


@dataclass(frozen=True)
class ProjChartOne:
    """Chart 1 of the projective line: the line with "inf" in place of the
    zero point.  Behaves exactly like an affine line."""

    field: BaseField
    kind: ClassVar[str] = "proj_chart_one"

    def _zero_name(self):
        return x_poly(self.field.p) if isinstance(self.field, PrimeField) else "0"

    def charts(self):
        return (0,)

    def chart_scheme(self, cid: int):
        if cid != 0:
            raise QfiltError(f"{self} has no chart {cid}")
        return self

    @property
    def has_generic_points(self) -> bool:
        return True

    def component_universe(self):
        return ("finite", 1)

    def component_kind(self, c: int) -> str:
        return "curve"

    def generic_points(self):
        return (generic_point(0),)

    def all_closed_points(self):
        return None

    def artinian_points(self, c: int):
        return ()

    def has_point(self, pt: SpecPoint) -> bool:
        if pt.component != 0:
            return False
        if pt.kind == "generic":
            return True
        if pt.name == INF_NAME:
            return True
        if pt.name == self._zero_name():
            return False
        return _valid_closed_name_on_line(self.field, pt.name)

    def closed_cap(self, pt: SpecPoint):
        return INF

    def spec_points(self, degree_bound, labels, limits: Limits):
        closed, generic, _, _ = AffineLine(self.field).spec_points(degree_bound, labels, limits)
        kept = tuple(pt for pt in closed if pt.name != self._zero_name())
        return kept + (inf_point(),), generic, True, False

    def __str__(self) -> str:
        return f"P1-chart1({self.field})"


@dataclass(frozen=True)
class DisjointUnion:
    """A disjoint union of spectra of fields: finitely many explicit
    components, or the symbolic Z-indexed family (components=None)."""

    components: tuple[BaseField, ...] | None
    kind: ClassVar[str] = "disjoint_union"

    @staticmethod
    def explicit(fields, limits: Limits = DEFAULT_LIMITS) -> "DisjointUnion":
        fields = tuple(fields)
        if not fields:
            raise QfiltError("a disjoint union needs at least one component")
        if len(fields) > limits.max_union_components:
            raise QfiltError(
                f"{len(fields)} components exceed the explicit limit {limits.max_union_components}"
            )
        return DisjointUnion(fields)

    @staticmethod
    def symbolic() -> "DisjointUnion":
        return DisjointUnion(None)

    @property
    def is_symbolic(self) -> bool:
        return self.components is None

    def charts(self):
        if self.is_symbolic:
            raise QfiltError("the symbolic union has no finite chart list")
        return tuple(range(len(self.components)))

    def chart_scheme(self, cid: int):
        if self.is_symbolic:
            return DisjointUnion((SymbolicAlgClosed(),))
        if not 0 <= cid < len(self.components):
            raise QfiltError(f"{self} has no chart {cid}")
        return DisjointUnion((self.components[cid],))

    @property
    def has_generic_points(self) -> bool:
        return True

    def component_universe(self):
        if self.is_symbolic:
            return ("symbolic",)
        return ("finite", len(self.components))

    def component_kind(self, c: int) -> str:
        return "field"

    def generic_points(self):
        if self.is_symbolic:
            return ()
        return tuple(generic_point(i) for i in range(len(self.components)))

    def all_closed_points(self):
        return ()

    def artinian_points(self, c: int):
        return ()

    def has_point(self, pt: SpecPoint) -> bool:
        if pt.kind != "generic":
            return False
        if self.is_symbolic:
            return True
        return 0 <= pt.component < len(self.components)

    def closed_cap(self, pt: SpecPoint):
        raise QfiltError(f"{self} has no closed points")

    def spec_points(self, degree_bound, labels, limits: Limits):
        if self.is_symbolic:
            return (), (), False, True
        return (), self.generic_points(), False, False

    def __str__(self) -> str:
        if self.is_symbolic:
            return "coprod_Z Spec k_i"
        return f"coprod of {len(self.components)} points"


SchemeModel = AffineLine | AffineQuotient | ProjLine | ProjChartOne | DisjointUnion


def check_same_scheme(a, b) -> None:
    if a != b:
        raise RingMismatchError(f"scheme mismatch: {a} vs {b}")


# ---------------------------------------------------------------------------
# ideal sheaves


@dataclass(frozen=True)
class IdealSheaf:
    """Canonical form of a quasi-coherent ideal subsheaf of the structure
    sheaf: vanishing components plus finitely many positive orders at
    closed points elsewhere (strictly below the stalk length where that is
    finite); the sheaf is the unit ideal away from all of that."""

    scheme: object
    killed: ComponentSet
    orders: tuple[tuple[SpecPoint, int], ...]

    @property
    def is_unit(self) -> bool:
        return not self.orders and empty_in_universe(self.killed, self.scheme.component_universe())

    @property
    def is_zero(self) -> bool:
        return covers_universe(self.killed, self.scheme.component_universe())

    def order_at(self, pt: SpecPoint) -> int | float:
        """Effective vanishing order; INF over killed components."""
        if self.killed.contains(pt.component):
            return INF
        for p, n in self.orders:
            if p == pt:
                return n
        return 0

    def __str__(self) -> str:
        if self.is_unit:
            return "O"
        if self.is_zero:
            return "0"
        parts = [f"{pt}^{n}" if n > 1 else str(pt) for pt, n in self.orders]
        if not self.killed.is_none:
            parts.append(f"zero-on {self.killed}")
        return "<" + ", ".join(parts) + ">"


def sheaf(scheme, orders=(), killed=()) -> IdealSheaf:
    """Build an IdealSheaf in normal form.

    orders maps closed points to vanishing orders >= 1; killed lists
    components (iterable or ComponentSet) where the sheaf is zero.  Orders
    at or above a finite stalk length are folded into killed."""
    if isinstance(killed, ComponentSet):
        kcs = killed
    else:
        kcs = ComponentSet.of(killed)
    kcs = kcs.normalize(scheme.component_universe())
    pairs = list(orders.items()) if isinstance(orders, dict) else list(orders)
    acc: dict[SpecPoint, int] = {}
    for pt, n in pairs:
        if pt.kind != "closed":
            raise QfiltError(f"{pt} is not a closed point")
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
        if not isinstance(n, int) or n < 0:
            raise QfiltError(f"order at {pt} must be a nonnegative integer")
        if n:
            acc[pt] = max(acc.get(pt, 0), n)
    for pt, n in list(acc.items()):
        cap = scheme.closed_cap(pt)
        if n >= cap:
            kcs = kcs.union(ComponentSet.of([pt.component]))
    kcs = kcs.normalize(scheme.component_universe())
    kept = [(pt, n) for pt, n in acc.items() if not kcs.contains(pt.component)]
    return IdealSheaf(scheme, kcs, tuple(sorted(kept, key=lambda kv: kv[0].sort_key())))


def unit_sheaf(scheme) -> IdealSheaf:
    return sheaf(scheme)


def zero_sheaf(scheme) -> IdealSheaf:
    return sheaf(scheme, killed=ComponentSet.all())


def sheaf_from_affine_ideal(scheme, ideal: AffineIdeal) -> IdealSheaf:
    """Interpret an ideal of the chart coordinate ring on a one-chart
    scheme (the affine line or an Artinian quotient)."""
    if isinstance(scheme, AffineLine):
        if ideal.field != scheme.field:
            raise RingMismatchError(f"ring mismatch: {ideal.field} vs {scheme.field}")
        if ideal.kind == "zero":
            return zero_sheaf(scheme)
        if ideal.kind == "unit":
            return unit_sheaf(scheme)
        pairs = factor(ideal.gen)
        if isinstance(ideal.gen, PrimePoly):
            return sheaf(scheme, [(closed_point(q), m) for q, m in pairs])
        return sheaf(scheme, [(closed_point(label), m) for label, m in pairs])
    if isinstance(scheme, AffineQuotient):
        if ideal.field != scheme.ring.field:
            raise RingMismatchError(f"ring mismatch: {ideal.field} vs {scheme.ring.field}")
        if ideal.kind == "zero":
            return zero_sheaf(scheme)
        if ideal.kind == "unit":
            return unit_sheaf(scheme)
        # the ideal generated by g in k[x]/(f) is (gcd(g, f))
        divisor = quotient_reduce(scheme.ring, ideal.gen)
        orders = []
        for q, m in factor(divisor):
            pt = scheme.point_for_prime(q)
            orders.append((pt, min(m, scheme.closed_cap(pt))))
        return sheaf(scheme, orders)
    raise QfiltError(f"{scheme} does not take affine-ideal input; use point orders")


def sheaf_product(a: IdealSheaf, b: IdealSheaf) -> IdealSheaf:
    check_same_scheme(a.scheme, b.scheme)
    pts = {pt for pt, _ in a.orders} | {pt for pt, _ in b.orders}
    orders = {pt: a.order_at(pt) + b.order_at(pt) for pt in pts}
    finite = {pt: int(n) for pt, n in orders.items() if n != INF}
    return sheaf(a.scheme, finite, a.killed.union(b.killed))


def sheaf_intersect(a: IdealSheaf, b: IdealSheaf) -> IdealSheaf:
    check_same_scheme(a.scheme, b.scheme)
    pts = {pt for pt, _ in a.orders} | {pt for pt, _ in b.orders}
    orders = {pt: max(a.order_at(pt), b.order_at(pt)) for pt in pts}
    finite = {pt: int(n) for pt, n in orders.items() if n != INF}
    return sheaf(a.scheme, finite, a.killed.union(b.killed))


def sheaf_sum(a: IdealSheaf, b: IdealSheaf) -> IdealSheaf:
    check_same_scheme(a.scheme, b.scheme)
    pts = {pt for pt, _ in a.orders} | {pt for pt, _ in b.orders}
    killed = a.killed.intersect(b.killed)
    orders = {}
    for pt in pts:
        n = min(a.order_at(pt), b.order_at(pt))
        if n and n != INF:
            orders[pt] = int(n)
    return sheaf(a.scheme, orders, killed)


def sheaf_contains(a: IdealSheaf, b: IdealSheaf) -> bool:
    """Whether a contains b, i.e. a has everywhere smaller effective order."""
    check_same_scheme(a.scheme, b.scheme)
    if not a.killed.issubset(b.killed):
        return False
    pts = {pt for pt, _ in a.orders} | {pt for pt, _ in b.orders}
    return all(a.order_at(pt) <= b.order_at(pt) for pt in pts)


def sheaf_is_idempotent(a: IdealSheaf) -> bool:
    return sheaf_product(a, a) == a


def restrict_sheaf(a: IdealSheaf, cid: int) -> IdealSheaf:
    """Restrict to a chart; restriction is localization, so data at points
    outside the chart is simply dropped."""
    scheme = a.scheme
    chart = scheme.chart_scheme(cid)
    if isinstance(scheme, (AffineLine, AffineQuotient, ProjChartOne)):
        return a
    if isinstance(scheme, ProjLine):
        kept = [(pt, n) for pt, n in a.orders if scheme.point_in_chart(pt, cid)]
        return sheaf(chart, kept, a.killed)
    if isinstance(scheme, DisjointUnion):
        killed = ComponentSet.of([0]) if a.killed.contains(cid) else ComponentSet.none()
        return sheaf(chart, (), killed)
    raise QfiltError(f"unknown scheme {scheme}")


def glue_ideals(scheme, chart_data: dict, rest: str | None = None) -> IdealSheaf:
    """Assemble a global ideal sheaf from per-chart IdealSheaf data.

    chart_data maps chart ids to sheaves on the corresponding chart
    schemes.  On a disjoint union, components missing from chart_data take
    the value `rest` ("unit" or "zero", default "unit"); that is also the
    only way to describe cofinitely many components of the symbolic
    family."""
    if isinstance(scheme, (AffineLine, AffineQuotient, ProjChartOne)):
        if set(chart_data) != {0}:
            raise GluingError("expected exactly chart 0")
        data = chart_data[0]
        check_same_scheme(data.scheme, scheme.chart_scheme(0))
        return data
    if isinstance(scheme, ProjLine):
        return _glue_proj_ideals(scheme, chart_data)
    if isinstance(scheme, DisjointUnion):
        return _glue_union_ideals(scheme, chart_data, rest)
    raise QfiltError(f"unknown scheme {scheme}")


def _glue_proj_ideals(scheme: ProjLine, chart_data: dict) -> IdealSheaf:
    if set(chart_data) != {0, 1}:
        raise GluingError("the projective line needs chart data for charts 0 and 1")
    c0, c1 = chart_data[0], chart_data[1]
    check_same_scheme(c0.scheme, scheme.chart_scheme(0))
    check_same_scheme(c1.scheme, scheme.chart_scheme(1))
    if c0.is_zero != c1.is_zero:
        raise GluingError("overlap mismatch: one chart is the zero sheaf and the other is not")
    if c0.is_zero:
        return zero_sheaf(scheme)
    zero_pt = scheme.zero_point()
    d0, d1 = dict(c0.orders), dict(c1.orders)
    for pt in sorted(set(d0) | set(d1), key=SpecPoint.sort_key):
        if pt == zero_pt or pt.name == INF_NAME:
            continue
        if d0.get(pt, 0) != d1.get(pt, 0):
            raise GluingError(
                f"overlap mismatch at point {pt}: order {d0.get(pt, 0)} in chart 0, "
                f"{d1.get(pt, 0)} in chart 1"
            )
    merged = {pt: n for pt, n in d0.items()}
    for pt, n in d1.items():
        merged[pt] = n
    return sheaf(scheme, merged)


def _glue_union_ideals(scheme: DisjointUnion, chart_data: dict, rest: str | None) -> IdealSheaf:
    rest = rest or "unit"
    if rest not in ("unit", "zero"):
        raise GluingError(f"rest must be 'unit' or 'zero', not {rest!r}")
    zeros, units = set(), set()
    for cid, data in chart_data.items():
        if not scheme.is_symbolic and not (0 <= cid < len(scheme.components)):
            raise GluingError(f"no component {cid} on {scheme}")
        check_same_scheme(data.scheme, scheme.chart_scheme(cid))
        (zeros if data.is_zero else units).add(cid)
    if rest == "unit":
        killed = ComponentSet.of(zeros)
    else:
        killed = ComponentSet.cofinite(units)
    return sheaf(scheme, (), killed)


# ---------------------------------------------------------------------------
# closed subschemes


@dataclass(frozen=True)
class ClosedSubscheme:
    """A closed subscheme presented by its ideal sheaf and its support."""

    ideal: IdealSheaf
    support: SpecClosedSet

    def __str__(self) -> str:
        return f"V({self.ideal})"


def closed_subscheme(ideal: IdealSheaf) -> ClosedSubscheme:
    return ClosedSubscheme(ideal, subscheme_support(ideal))


def subscheme_support(ideal: IdealSheaf) -> SpecClosedSet:
    """Support of the quotient by an ideal sheaf: the points where the
    stalk of the ideal is proper."""
    scheme = ideal.scheme
    pts = {pt for pt, _ in ideal.orders}
    if ideal.killed.is_none:
        return finite_closed(scheme, pts)
    whole: set[int] = set()
    if ideal.killed.is_finite:
        killed_comps = sorted(ideal.killed.members)
    elif scheme.component_universe()[0] == "finite":
        killed_comps = [c for c in range(scheme.component_universe()[1])
                        if ideal.killed.contains(c)]
    else:
        killed_comps = None
    if killed_comps is None:
        # symbolic cofinite pattern: only field components can be involved
        return component_set(scheme, ideal.killed)
    for c in killed_comps:
        if scheme.component_kind(c) == "artinian":
            for pt, _cap in scheme.artinian_points(c):
                pts.add(pt)
        else:
            whole.add(c)
    if not whole:
        return finite_closed(scheme, pts)
    cs = ComponentSet.of(whole)
    if all(cs.contains(pt.component) for pt in pts):
        return component_set(scheme, cs)
    return all_set(scheme)
