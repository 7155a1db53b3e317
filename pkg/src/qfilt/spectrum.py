"""Points of desk-scale spectra, their specialization order, and supports.

A SpecPoint is either a closed point or the generic point of one connected
component.  Closed points of a line over a prime field are named by monic
irreducible polynomials; over a symbolic algebraically closed field by
opaque labels; the extra point of the projective line is named "inf".
Points of an Artinian quotient k[x]/(f) are the prime factors of f, one
connected component per prime; components of a disjoint union of fields
carry a single generic point each and no closed points.

The specialization order used throughout is the atom order: x <= y exactly
when y lies in the closure of {x}, so the generic point of a component sits
below every closed point of that component and closed points are
incomparable.  A subset is specialization closed when it is upward closed
for that order; on the schemes here this means that it either avoids the
generic points or contains whole components.

ComponentSet is a finite-or-cofinite pattern of connected components, the
only component patterns the engine ever needs; over a symbolic Z-indexed
disjoint union the cofinite side is genuinely infinite.  SpecClosedSet is
a decidable descriptor of a specialization-closed subset: empty, all, a
finite set of closed points, a cofinite set of closed points (all but a
finite exclusion list, generic points excluded), or a ComponentSet worth
of whole components.

TorsionSheafData describes the quasi-coherent sheaves this engine can
test membership for: a finite multiset of (closed point, exponent) pairs,
meaning a torsion summand killed by the exponent-th power of the point's
maximal ideal, plus a pattern of components carrying a free summand.
"""

from dataclasses import dataclass

from .config import DEFAULT_LIMITS, INF, Limits
from .errors import QfiltError
from .poly import PrimePoly

INF_NAME = "inf"


@dataclass(frozen=True)
class SpecPoint:
    """A point of a scheme: kind "closed" or "generic", the index of its
    connected component, and a name (poly/label/"inf"; None for generic)."""

    kind: str
    component: int
    name: PrimePoly | str | None = None

    def sort_key(self):
        if self.kind == "generic":
            tag = (0, "", "")
        elif isinstance(self.name, PrimePoly):
            tag = (1, f"{self.name.degree:06d}", ",".join(f"{c:03d}" for c in reversed(self.name.coeffs)))
        elif self.name == INF_NAME:
            tag = (3, "", "")
        else:
            tag = (2, self.name, "")
        return (self.component, tag)

    def __str__(self) -> str:
        if self.kind == "generic":
            return f"gen:{self.component}"
        return f"pt:{self.name}"


def closed_point(name, component: int = 0) -> SpecPoint:
    return SpecPoint("closed", component, name)


def generic_point(component: int = 0) -> SpecPoint:
    return SpecPoint("generic", component)


def inf_point() -> SpecPoint:
    return SpecPoint("closed", 0, INF_NAME)


def sorted_points(points) -> tuple[SpecPoint, ...]:
    return tuple(sorted(points, key=SpecPoint.sort_key))


# ---------------------------------------------------------------------------
# component patterns


@dataclass(frozen=True)
class ComponentSet:
    """A finite or cofinite set of connected-component indices.

    complement=False means exactly `members`; complement=True means all
    components except `members`.  Set algebra stays inside this class of
    patterns, which is what makes disjoint-union filters finitely
    presentable."""

    complement: bool
    members: frozenset[int]

    @staticmethod
    def of(indices) -> "ComponentSet":
        return ComponentSet(False, frozenset(indices))

    @staticmethod
    def cofinite(excluded) -> "ComponentSet":
        return ComponentSet(True, frozenset(excluded))

    @staticmethod
    def none() -> "ComponentSet":
        return ComponentSet(False, frozenset())

    @staticmethod
    def all() -> "ComponentSet":
        return ComponentSet(True, frozenset())

    def contains(self, index: int) -> bool:
        if self.complement:
            return index not in self.members
        return index in self.members

    @property
    def is_none(self) -> bool:
        return not self.complement and not self.members

    @property
    def is_all(self) -> bool:
        return self.complement and not self.members

    @property
    def is_finite(self) -> bool:
        return not self.complement

    def union(self, other: "ComponentSet") -> "ComponentSet":
        if not self.complement and not other.complement:
            return ComponentSet(False, self.members | other.members)
        if self.complement and other.complement:
            return ComponentSet(True, self.members & other.members)
        fin, cof = (self, other) if not self.complement else (other, self)
        return ComponentSet(True, cof.members - fin.members)

    def intersect(self, other: "ComponentSet") -> "ComponentSet":
        if not self.complement and not other.complement:
            return ComponentSet(False, self.members & other.members)
        if self.complement and other.complement:
            return ComponentSet(True, self.members | other.members)
        fin, cof = (self, other) if not self.complement else (other, self)
        return ComponentSet(False, fin.members - cof.members)

    def invert(self) -> "ComponentSet":
        return ComponentSet(not self.complement, self.members)

    def issubset(self, other: "ComponentSet") -> bool:
        return self.intersect(other.invert()).is_none

    def normalize(self, universe) -> "ComponentSet":
        """Rewrite against a finite universe so equal sets compare equal."""
        if universe[0] == "finite":
            all_idx = frozenset(range(universe[1]))
            explicit = (all_idx - self.members) if self.complement else (self.members & all_idx)
            return ComponentSet(False, explicit)
        return ComponentSet(self.complement, frozenset(self.members))

    def __str__(self) -> str:
        body = ",".join(str(i) for i in sorted(self.members))
        return f"all-but{{{body}}}" if self.complement else f"{{{body}}}"


def covers_universe(cs: ComponentSet, universe) -> bool:
    """Whether a component pattern contains every component."""
    if universe[0] == "finite":
        return all(cs.contains(c) for c in range(universe[1]))
    return cs.is_all


def empty_in_universe(cs: ComponentSet, universe) -> bool:
    """Whether a component pattern contains no component."""
    if universe[0] == "finite":
        return not any(cs.contains(c) for c in range(universe[1]))
    return cs.is_none


# ---------------------------------------------------------------------------
# specialization-closed subsets


@dataclass(frozen=True)
class SpecClosedSet:
    """Decidable descriptor of a specialization-closed subset.

    kind "empty" | "all" | "finite" (the listed closed points) |
    "cofinite_closed" (every closed point except the listed ones, no
    generic points) | "components" (whole components per ComponentSet)."""

    scheme: object
    kind: str
    points: tuple[SpecPoint, ...] = ()
    components: ComponentSet | None = None

    def member(self, pt: SpecPoint) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return True
        if self.kind == "finite":
            return pt in self.points
        if self.kind == "cofinite_closed":
            return pt.kind == "closed" and pt not in self.points
        return self.components.contains(pt.component)

    def __str__(self) -> str:
        if self.kind in ("empty", "all"):
            return self.kind
        if self.kind == "finite":
            return "{" + ", ".join(str(p) for p in self.points) + "}"
        if self.kind == "cofinite_closed":
            return "closed-minus{" + ", ".join(str(p) for p in self.points) + "}"
        return f"components {self.components}"


def empty_set(scheme) -> SpecClosedSet:
    return SpecClosedSet(scheme, "empty")


def all_set(scheme) -> SpecClosedSet:
    return SpecClosedSet(scheme, "all")


def finite_closed(scheme, points) -> SpecClosedSet:
    pts = sorted_points(set(points))
    for pt in pts:
        if pt.kind != "closed":
            raise QfiltError(f"{pt} is not a closed point")
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
    if not pts:
        return empty_set(scheme)
    finite_all = scheme.all_closed_points()
    if finite_all is not None and set(pts) == set(finite_all):
        return all_of_closed(scheme)
    return SpecClosedSet(scheme, "finite", pts)


def all_of_closed(scheme) -> SpecClosedSet:
    """The set of all closed points; equals "all" only when the scheme has
    no generic points (Artinian quotients)."""
    if not scheme.generic_points():
        return all_set(scheme)
    return SpecClosedSet(scheme, "cofinite_closed", ())


def cofinite_closed(scheme, excluded) -> SpecClosedSet:
    pts = sorted_points(set(excluded))
    for pt in pts:
        if pt.kind != "closed":
            raise QfiltError(f"{pt} is not a closed point")
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
    finite_all = scheme.all_closed_points()
    if finite_all is not None:
        rest = [p for p in finite_all if p not in set(pts)]
        return finite_closed(scheme, rest)
    return SpecClosedSet(scheme, "cofinite_closed", pts)


def component_set(scheme, components: ComponentSet) -> SpecClosedSet:
    universe = scheme.component_universe()
    cs = components.normalize(universe)
    if empty_in_universe(cs, universe):
        return empty_set(scheme)
    if covers_universe(cs, universe):
        return all_set(scheme)
    if cs.is_finite and all(scheme.component_kind(c) == "artinian" for c in cs.members):
        pts = [p for c in cs.members for (p, _cap) in scheme.artinian_points(c)]
        return finite_closed(scheme, pts)
    return SpecClosedSet(scheme, "components", components=cs)


def is_specialization_closed(subset, scheme) -> bool:
    """Whether a subset of points is closed under specialization.

    Accepts a SpecClosedSet (true by construction) or an explicit finite
    iterable of SpecPoints; a generic point in an explicit set demands every
    point of its component, which no finite set provides on a curve."""
    if isinstance(subset, SpecClosedSet):
        return True
    pts = set(subset)
    for pt in pts:
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
        if pt.kind != "generic":
            continue
        kind = scheme.component_kind(pt.component)
        if kind == "field":
            continue  # the generic point is the whole component
        if kind == "curve":
            return False  # infinitely many closed points are missing
        raise QfiltError("artinian components have no generic point")
    return True


# ---------------------------------------------------------------------------
# the spectrum as a poset


@dataclass(frozen=True)
class SpecPoset:
    """Enumerated part of a spectrum with its specialization order."""

    scheme: object
    closed: tuple[SpecPoint, ...]
    generic: tuple[SpecPoint, ...]
    symbolic_closed: bool = False
    symbolic_components: bool = False

    def points(self) -> tuple[SpecPoint, ...]:
        return self.generic + self.closed

    def leq(self, a: SpecPoint, b: SpecPoint) -> bool:
        """Atom order: a <= b iff b lies in the closure of {a}."""
        if a == b:
            return True
        return a.kind == "generic" and a.component == b.component


def spec(scheme, degree_bound: int | None = None, labels=(), limits: Limits = DEFAULT_LIMITS) -> SpecPoset:
    """Enumerate the spectrum of a scheme model.

    degree_bound caps the degree of closed points over a prime field;
    labels lists the symbolic labels to materialize.  Symbolic families
    beyond the enumerated part are reported by the symbolic_* flags."""
    closed, generic, symbolic_closed, symbolic_components = scheme.spec_points(
        degree_bound, tuple(labels), limits
    )
    return SpecPoset(scheme, sorted_points(closed), sorted_points(generic),
                     symbolic_closed, symbolic_components)


# ---------------------------------------------------------------------------
# torsion sheaf data


@dataclass(frozen=True)
class TorsionSheafData:
    """A sheaf given by elementary divisors plus free components.

    divisors: sorted ((closed point, e), ...) with e >= 1, the summand
    killed by the e-th power of the point's maximal ideal; free: components
    carrying a summand with zero annihilator."""

    scheme: object
    divisors: tuple[tuple[SpecPoint, int], ...]
    free: ComponentSet

    @property
    def is_zero(self) -> bool:
        return not self.divisors and self.free.is_none


def module_data(scheme, divisors=(), free=False) -> TorsionSheafData:
    pairs = list(divisors.items()) if isinstance(divisors, dict) else list(divisors)
    out: list[tuple[SpecPoint, int]] = []
    for pt, e in pairs:
        if pt.kind != "closed":
            raise QfiltError(f"divisor point {pt} is not closed")
        if not scheme.has_point(pt):
            raise QfiltError(f"point {pt} does not lie on {scheme}")
        if not isinstance(e, int) or e < 1:
            raise QfiltError(f"divisor exponent at {pt} must be a positive integer")
        cap = scheme.closed_cap(pt)
        if e > cap:
            raise QfiltError(f"exponent {e} at {pt} exceeds the stalk length {cap}")
        out.append((pt, e))
    if free is True:
        cs = ComponentSet.all()
    elif free is False:
        cs = ComponentSet.none()
    elif isinstance(free, ComponentSet):
        cs = free
    else:
        cs = ComponentSet.of(free)
    cs = cs.normalize(scheme.component_universe())
    divisor_key = lambda pair: (pair[0].sort_key(), pair[1])
    return TorsionSheafData(scheme, tuple(sorted(out, key=divisor_key)), cs)


def supp_ass(data: TorsionSheafData):
    """Support and associated points of a TorsionSheafData.

    Returns (SpecClosedSet, frozenset of SpecPoint).  The support of a
    direct sum is the union of supports, so the descriptor is computed
    from the divisors and free components directly."""
    scheme = data.scheme
    ass: set[SpecPoint] = {pt for pt, _ in data.divisors}
    supp_pts: set[SpecPoint] = set(ass)
    free = data.free
    if free.is_none:
        return finite_closed(scheme, supp_pts), frozenset(ass)
    if not free.is_finite and scheme.component_universe()[0] != "finite":
        raise QfiltError(
            "associated points of a cofinitely-free sheaf on a symbolic union are not enumerable; "
            "list the free components explicitly"
        )
    whole: set[int] = set()
    for c in _free_components(scheme, free):
        kind = scheme.component_kind(c)
        if kind == "artinian":
            # a free summand over an Artinian component is torsion at every
            # prime of that component, at the full stalk length
            for pt, cap in scheme.artinian_points(c):
                supp_pts.add(pt)
                ass.add(pt)
        else:
            ass.add(generic_point(c))
            whole.add(c)
    if not whole:
        return finite_closed(scheme, supp_pts), frozenset(ass)
    cs = ComponentSet.of(whole)
    # torsion points always lie on whole components here: unions have no
    # closed points and the single-component curves are covered entirely
    if all(cs.contains(pt.component) for pt in supp_pts):
        return component_set(scheme, cs), frozenset(ass)
    return all_set(scheme), frozenset(ass)


def _free_components(scheme, free: ComponentSet):
    if free.is_finite:
        return sorted(free.members)
    universe = scheme.component_universe()
    return [c for c in range(universe[1]) if free.contains(c)]
