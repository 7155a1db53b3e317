"""Brute-force ground truth over finite quotient rings.

Everything the symbolic engine claims about filters on an Artinian
quotient k[x]/(f) can be recomputed here by exhaustive enumeration: the
ring is laid out as explicit addition/multiplication tables, its ideals
are found by closing principal ideals under sums, filters are enumerated
as up-closed intersection-closed subsets of the ideal list, and both
definitions of the filter product are evaluated element by element.
Subcategories are enumerated independently of the filter lattice, as sets
of indecomposable module classes certified by explicit submodule
enumeration, and the bijection between the two enumerations is checked
rather than assumed.

verify_ring() bundles all of these cross-checks for one ring and reports
each as a named pass/fail line with counterexample details on failure.
"""

import itertools
import math
from dataclasses import dataclass, field

from .config import DEFAULT_LIMITS, Limits
from .errors import LatticeTooLargeError, QfiltError
from .ideals import QuotientRing
from .poly import PrimePoly

Element = int
IdealSet = frozenset


@dataclass(frozen=True)
class FiniteRingTable:
    """k[x]/(f) as explicit tables; elements are indices into `reps`."""

    ring: QuotientRing
    reps: tuple[PrimePoly, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    ideals: tuple[IdealSet, ...]
    prime_exponents: tuple[int, ...]
    prime_degrees: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.reps)

    def index(self, poly: PrimePoly) -> int:
        return self.reps.index(poly % self.ring.modulus)

    def prime_power(self, i: int, j: int) -> int:
        """Element index of (i-th prime factor)**j."""
        p = self.index(self.ring.prime_factors()[i][0])
        out = self.one
        for _ in range(j):
            out = self.mul[out][p]
        return out

    def principal(self, a: int) -> IdealSet:
        return frozenset(self.mul[a][r] for r in range(self.size))

    def ideal_index(self, members: IdealSet) -> int:
        return self.ideals.index(members)

    def ideal_exponents(self, idx: int) -> tuple[int, ...]:
        """Vanishing order of an ideal at each prime factor."""
        members = self.ideals[idx]
        out = []
        for i, e in enumerate(self.prime_exponents):
            j = 0
            while j < e and members <= self.principal(self.prime_power(i, j + 1)):
                j += 1
            out.append(j)
        return tuple(out)

    def annihilator(self, smul, zero, x) -> IdealSet:
        return frozenset(r for r in range(self.size) if smul(r, x) == zero)


def build_table(ring: QuotientRing, limits: Limits = DEFAULT_LIMITS) -> FiniteRingTable:
    """Lay out k[x]/(f) as tables, self-check the axioms, enumerate ideals."""
    modulus = ring.modulus
    if not isinstance(modulus, PrimePoly):
        raise QfiltError("the oracle needs an explicit prime field, not symbolic labels")
    p, deg = modulus.p, modulus.degree
    n = p ** deg
    if n > limits.max_oracle_elements:
        raise LatticeTooLargeError(
            f"{n} ring elements exceed the oracle limit {limits.max_oracle_elements}")
    reps = tuple(PrimePoly.make(p, coeffs)
                 for coeffs in itertools.product(range(p), repeat=deg))
    pos = {r: i for i, r in enumerate(reps)}
    add = tuple(tuple(pos[(a + b) % modulus] for b in reps) for a in reps)
    mul = tuple(tuple(pos[(a * b) % modulus] for b in reps) for a in reps)
    zero = pos[PrimePoly.make(p, (0,))]
    one = pos[PrimePoly.make(p, (1,))]
    _self_check(n, add, mul, zero, one)
    ideals = _enumerate_ideals(n, add, mul, limits)
    primes = ring.prime_factors()
    return FiniteRingTable(ring, reps, add, mul, zero, one, ideals,
                           tuple(m for _, m in primes),
                           tuple(q.degree for q, _ in primes))


def _self_check(n: int, add, mul, zero: int, one: int) -> None:
    rng = range(n)
    for a in rng:
        if add[a][zero] != a or mul[a][one] != a or mul[a][zero] != zero:
            raise QfiltError("ring tables fail the unit laws")
        for b in rng:
            if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                raise QfiltError("ring tables are not commutative")
    # full associativity/distributivity scan is cubic; cap it at sizes where
    # that stays instant and fall back to a fixed stride sample above
    triples = (itertools.product(rng, repeat=3) if n <= 64 else
               itertools.product(range(0, n, max(1, n // 32)), repeat=3))
    for a, b, c in triples:
        if add[add[a][b]][c] != add[a][add[b][c]]:
            raise QfiltError("addition is not associative")
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise QfiltError("multiplication is not associative")
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            raise QfiltError("distributivity fails")


def _enumerate_ideals(n: int, add, mul, limits: Limits) -> tuple[IdealSet, ...]:
    found: set[IdealSet] = set()
    for a in range(n):
        found.add(frozenset(mul[a][r] for r in range(n)))
    # close principal ideals under pairwise sums
    changed = True
    while changed:
        changed = False
        for i1, i2 in itertools.combinations(sorted(found, key=sorted), 2):
            s = frozenset(add[x][y] for x in i1 for y in i2)
            if s not in found:
                found.add(s)
                changed = True
        if len(found) > limits.max_oracle_ideals:
            raise LatticeTooLargeError(
                f"more than {limits.max_oracle_ideals} ideals; lattice too large")
    if len(found) > limits.max_oracle_ideals:
        raise LatticeTooLargeError(
            f"more than {limits.max_oracle_ideals} ideals; lattice too large")
    return tuple(sorted(found, key=lambda s: (-len(s), sorted(s))))


@dataclass(frozen=True)
class ExplicitFilter:
    """A filter as an explicit subset of the ideal list."""

    table: FiniteRingTable
    members: frozenset[int]

    def __post_init__(self):
        ideals = self.table.ideals
        unit = frozenset(range(self.table.size))
        if self.table.ideal_index(unit) not in self.members:
            raise QfiltError("a filter must contain the unit ideal")
        for i in self.members:
            for j in range(len(ideals)):
                if ideals[i] <= ideals[j] and j not in self.members:
                    raise QfiltError("filter is not upward closed")
            for k in self.members:
                if self.table.ideal_index(ideals[i] & ideals[k]) not in self.members:
                    raise QfiltError("filter is not intersection closed")


def enumerate_filters(table: FiniteRingTable) -> tuple[ExplicitFilter, ...]:
    """All filters of the ideal lattice, by up-set search plus the
    intersection-closure test."""
    ideals = table.ideals
    n = len(ideals)
    order = sorted(range(n), key=lambda i: -len(ideals[i]))
    supersets = {i: [j for j in range(n) if i != j and ideals[i] <= ideals[j]]
                 for i in range(n)}
    unit_idx = table.ideal_index(frozenset(range(table.size)))
    out: list[ExplicitFilter] = []

    def walk(k: int, chosen: set[int]):
        if k == len(order):
            if unit_idx not in chosen:
                return
            for i, j in itertools.combinations(chosen, 2):
                if table.ideal_index(ideals[i] & ideals[j]) not in chosen:
                    return
            out.append(ExplicitFilter(table, frozenset(chosen)))
            return
        i = order[k]
        if all(j in chosen for j in supersets[i]):
            walk(k + 1, chosen | {i})
        walk(k + 1, chosen)

    walk(0, set())
    return tuple(sorted(out, key=lambda f: (-len(f.members), sorted(f.members))))


def inverse_ideal(table: FiniteRingTable, a: int, members: IdealSet) -> IdealSet:
    """a^{-1}L = {b : ab in L}."""
    return frozenset(b for b in range(table.size) if table.mul[a][b] in members)


def check_prelocalizing(flt: ExplicitFilter) -> bool:
    """Whether a^{-1}L stays in the filter for every a and member L."""
    table = flt.table
    member_sets = {table.ideals[i] for i in flt.members}
    for i in flt.members:
        for a in range(table.size):
            if inverse_ideal(table, a, table.ideals[i]) not in member_sets:
                return False
    return True


def product_two_ways(f1: ExplicitFilter, f2: ExplicitFilter):
    """The filter product by its two definitions.

    via_inverse: L is a member when some L' in f1 contains L with a^{-1}L
    in f2 for every a in L'.  via_ideals: L contains a product of members.
    Returns (via_inverse, via_ideals, equal)."""
    table = f1.table
    ideals = table.ideals
    f2_sets = {ideals[i] for i in f2.members}
    via_inv = set()
    for li, l in enumerate(ideals):
        for j in f1.members:
            lp = ideals[j]
            if l <= lp and all(inverse_ideal(table, a, l) in f2_sets for a in lp):
                via_inv.add(li)
                break
    via_ide = set()
    for i1 in f1.members:
        for i2 in f2.members:
            span = _ideal_product(table, ideals[i1], ideals[i2])
            for li, l in enumerate(ideals):
                if span <= l:
                    via_ide.add(li)
    a = ExplicitFilter(table, frozenset(via_inv))
    b = ExplicitFilter(table, frozenset(via_ide))
    return a, b, a.members == b.members


def _ideal_product(table: FiniteRingTable, i1: IdealSet, i2: IdealSet) -> IdealSet:
    prods = {table.mul[x][y] for x in i1 for y in i2}
    span = set(prods)
    frontier = list(prods)
    while frontier:
        v = frontier.pop()
        for w in list(span):
            s = table.add[v][w]
            if s not in span:
                span.add(s)
                frontier.append(s)
    return frozenset(span)


def filter_min(flt: ExplicitFilter) -> IdealSet:
    out = frozenset(range(flt.table.size))
    for i in flt.members:
        out = out & flt.table.ideals[i]
    return out


def is_gabriel(flt: ExplicitFilter) -> bool:
    """F*F inside F, by the inverse-ideal product definition."""
    prod, _, _ = product_two_ways(flt, flt)
    return prod.members <= flt.members


# ---------------------------------------------------------------------------
# explicit modules


@dataclass(frozen=True)
class ExplicitModule:
    """A finite module: hashable elements plus table-backed operations."""

    table: FiniteRingTable
    elements: tuple
    index: dict
    add_pairs: dict
    smul_pairs: dict
    zero: object

    def add(self, x, y):
        return self.add_pairs[(x, y)]

    def smul(self, r: int, x):
        return self.smul_pairs[(r, x)]


def _module_from_ops(table, elements, add_fn, smul_fn, zero) -> ExplicitModule:
    elements = tuple(elements)
    add_pairs = {(x, y): add_fn(x, y) for x in elements for y in elements}
    smul_pairs = {(r, x): smul_fn(r, x) for r in range(table.size) for x in elements}
    return ExplicitModule(table, elements, {x: i for i, x in enumerate(elements)},
                          add_pairs, smul_pairs, zero)


def cyclic_module(table: FiniteRingTable, ideal: IdealSet) -> ExplicitModule:
    """R/I with canonical coset representatives."""
    rep = {}
    for x in range(table.size):
        rep[x] = min(table.add[x][k] for k in ideal)
    elements = sorted(set(rep.values()))
    return _module_from_ops(table, elements,
                            lambda x, y: rep[table.add[x][y]],
                            lambda r, x: rep[table.mul[r][x]],
                            rep[table.zero])


def direct_sum(mods) -> ExplicitModule:
    mods = list(mods)
    table = mods[0].table
    elements = list(itertools.product(*(m.elements for m in mods)))
    return _module_from_ops(
        table, elements,
        lambda x, y: tuple(m.add(a, b) for m, a, b in zip(mods, x, y)),
        lambda r, x: tuple(m.smul(r, a) for m, a in zip(mods, x)),
        tuple(m.zero for m in mods))


def zero_module(table: FiniteRingTable) -> ExplicitModule:
    return _module_from_ops(table, [0], lambda x, y: 0, lambda r, x: 0, 0)


def submodules(mod: ExplicitModule) -> tuple[frozenset, ...]:
    """All submodules, grown one generator at a time."""
    bottom = frozenset([mod.zero])
    found = {bottom}
    frontier = [bottom]
    while frontier:
        w = frontier.pop()
        for g in mod.elements:
            if g in w:
                continue
            grown = frozenset(mod.add(x, mod.smul(r, g))
                              for x in w for r in range(mod.table.size))
            if grown not in found:
                found.add(grown)
                frontier.append(grown)
    return tuple(found)


def quotient_module(mod: ExplicitModule, sub: frozenset) -> ExplicitModule:
    rep = {}
    for x in mod.elements:
        coset = {mod.add(x, k) for k in sub}
        rep[x] = min(coset, key=mod.index.get)
    elements = sorted(set(rep.values()), key=mod.index.get)
    return _module_from_ops(mod.table, elements,
                            lambda x, y: rep[mod.add(x, y)],
                            lambda r, x: rep[mod.smul(r, x)],
                            rep[mod.zero])


def restrict_module(mod: ExplicitModule, sub: frozenset) -> ExplicitModule:
    elements = sorted(sub, key=mod.index.get)
    return _module_from_ops(mod.table, elements, mod.add, mod.smul, mod.zero)


def iso_class(mod: ExplicitModule) -> tuple[tuple[int, ...], ...]:
    """Multiplicities of the indecomposables R/(p_i^j), from the sizes of
    the p_i^j-images of the p_i-primary part."""
    table = mod.table
    out = []
    for i, e in enumerate(table.prime_exponents):
        killer = table.prime_power(i, e)
        part = [x for x in mod.elements if mod.smul(killer, x) == mod.zero]
        base = table.ring.modulus.p ** table.prime_degrees[i]
        logs = []
        for j in range(e + 1):
            pj = table.prime_power(i, j)
            img = {mod.smul(pj, x) for x in part}
            logs.append(round(math.log(len(img), base)))
        ge = [logs[j - 1] - logs[j] for j in range(1, e + 1)]  # count with exp >= j
        counts = tuple(ge[j] - (ge[j + 1] if j + 1 < e else 0) for j in range(e))
        out.append(counts)
    return tuple(out)


def class_length(cls) -> int:
    return sum((j + 1) * c for per in cls for j, c in enumerate(per))


def class_inside(cls, allowed: frozenset) -> bool:
    """Whether every indecomposable in the class is in the allowed set of
    (prime index, exponent) pairs."""
    return all(c == 0 or (i, j + 1) in allowed
               for i, per in enumerate(cls) for j, c in enumerate(per))


# ---------------------------------------------------------------------------
# subcategories


@dataclass(frozen=True)
class SubcategoryData:
    """A subcategory as per-prime exponent ceilings plus certified flags."""

    exponents: tuple[int, ...]
    prelocalizing: bool
    localizing: bool
    closed: bool
    bilocalizing: bool


@dataclass
class OracleReport:
    ring: QuotientRing
    checks: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        for name, ok, detail in self.checks:
            mark = "ok" if ok else "FAIL"
            yield f"[{mark}] {self.ring}: {name}" + (f" ({detail})" if detail else "")


def _indecomposable_keys(table: FiniteRingTable):
    return [(i, j) for i, e in enumerate(table.prime_exponents) for j in range(1, e + 1)]


def indecomposable_modules(table: FiniteRingTable):
    """R/(p_i^j) for every prime factor and exponent.  p_i is invertible on
    the other primary components, so the principal ideal covers them and the
    cyclic module is genuinely indecomposable."""
    return {key: cyclic_module(table, table.principal(table.prime_power(*key)))
            for key in _indecomposable_keys(table)}


def _all_multisets(keys, length_bound: int):
    """Multisets of indecomposable keys with total length <= bound; the
    length of (i, j) is j."""
    out = [()]
    def rec(start: int, used: int, acc):
        for k in range(start, len(keys)):
            ln = keys[k][1]
            if used + ln > length_bound:
                continue
            nxt = acc + (keys[k],)
            out.append(nxt)
            rec(k, used + ln, nxt)
    rec(0, 0, ())
    return out


def _multiset_module(table, cyclics, multiset) -> ExplicitModule:
    if not multiset:
        return zero_module(table)
    return direct_sum(cyclics[key] for key in multiset)


def enumerate_subcategories(table: FiniteRingTable, length_bound: int = 4,
                            limits: Limits = DEFAULT_LIMITS) -> tuple[SubcategoryData, ...]:
    """All prelocalizing subcategories with certified flags.

    Candidates are sets of indecomposable classes; closure under
    subquotients and extensions is decided by enumerating every submodule
    of every direct sum up to the length bound.  Closedness is the
    existence of a least annihilator ideal (the intersection of the
    members' annihilators must itself have its cyclic module inside), and
    bilocalizing additionally demands that least ideal be idempotent."""
    if length_bound > limits.max_subcat_length:
        raise QfiltError(f"length bound {length_bound} exceeds {limits.max_subcat_length}")
    keys = _indecomposable_keys(table)
    cyclics = indecomposable_modules(table)
    multisets = _all_multisets(keys, length_bound)
    # one shared pass of submodule enumeration: for each module the set of
    # (submodule class, quotient class) pairs
    triples = []
    for ms in multisets:
        mod = _multiset_module(table, cyclics, ms)
        p_cls = iso_class(mod)
        pairs = set()
        for sub in submodules(mod):
            k_cls = iso_class(restrict_module(mod, sub))
            q_cls = iso_class(quotient_module(mod, sub))
            pairs.add((k_cls, q_cls))
        triples.append((p_cls, pairs))
    out = []
    for subset in itertools.product(*([[False, True]] * len(keys))):
        allowed = frozenset(k for k, keep in zip(keys, subset) if keep)
        preloc = True
        for p_cls, pairs in triples:
            if not class_inside(p_cls, allowed):
                continue
            if not all(class_inside(k, allowed) and class_inside(q, allowed)
                       for k, q in pairs):
                preloc = False
                break
        if not preloc:
            continue
        localizing = True
        for p_cls, pairs in triples:
            if class_inside(p_cls, allowed):
                continue
            if any(class_inside(k, allowed) and class_inside(q, allowed)
                   for k, q in pairs):
                localizing = False
                break
        least = frozenset(range(table.size))
        for key in allowed:
            least = least & _annihilator_of_cyclic(table, cyclics[key])
        # closed: the category is exactly the modules killed by `least`,
        # certified by R/least itself landing inside
        closed = class_inside(iso_class(cyclic_module(table, least)), allowed)
        idem = _ideal_product(table, least, least) == least
        exponents = tuple(max((j for (i, j) in allowed if i == l), default=0)
                          for l in range(len(table.prime_exponents)))
        out.append(SubcategoryData(exponents, preloc, localizing, closed,
                                   localizing and closed and idem))
    return tuple(sorted(out, key=lambda s: s.exponents))


def _ideal_sum(table, i1: IdealSet, i2: IdealSet) -> IdealSet:
    return frozenset(table.add[x][y] for x in i1 for y in i2)


def _annihilator_of_cyclic(table, mod: ExplicitModule) -> IdealSet:
    gen = next(x for x in mod.elements
               if {mod.smul(r, x) for r in range(table.size)} == set(mod.elements))
    return frozenset(r for r in range(table.size) if mod.smul(r, gen) == mod.zero)


def oracle_member(mod: ExplicitModule, flt: ExplicitFilter) -> bool:
    """Elementwise annihilator test: Ann(x) in F for every x."""
    table = flt.table
    member_sets = {table.ideals[i] for i in flt.members}
    for x in mod.elements:
        ann = frozenset(r for r in range(table.size) if mod.smul(r, x) == mod.zero)
        if ann not in member_sets:
            return False
    return True


def oracle_join(table: FiniteRingTable, a: ExplicitFilter, b: ExplicitFilter) -> ExplicitFilter:
    """Smallest filter containing both: close the union under intersections
    and upward."""
    ideals = table.ideals
    members = set(a.members | b.members)
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(list(members), 2):
            k = table.ideal_index(ideals[i] & ideals[j])
            if k not in members:
                members.add(k)
                changed = True
        for i in list(members):
            for j in range(len(ideals)):
                if ideals[i] <= ideals[j] and j not in members:
                    members.add(j)
                    changed = True
    return ExplicitFilter(table, frozenset(members))


# ---------------------------------------------------------------------------
# bridge to the symbolic engine, and the verification bundle


def engine_filter_to_explicit(flt, table: FiniteRingTable) -> ExplicitFilter:
    """Membership of every explicit ideal, asked of the symbolic engine."""
    from .filters import contains
    from .schemes import AffineQuotient, sheaf

    scheme = AffineQuotient(table.ring)
    primes = scheme.primes()
    members = set()
    for idx in range(len(table.ideals)):
        exps = table.ideal_exponents(idx)
        orders = {pt: e for (pt, _), e in zip(primes, exps)}
        if contains(flt, sheaf(scheme, orders)):
            members.add(idx)
    return ExplicitFilter(table, frozenset(members))


def sheaf_to_ideal_set(ideal_sheaf, table: FiniteRingTable) -> IdealSet:
    """The explicit element set of an ideal sheaf on the quotient."""
    from .schemes import AffineQuotient

    scheme = AffineQuotient(table.ring)
    elem = table.one
    for i, (pt, mult) in enumerate(scheme.primes()):
        e = mult if ideal_sheaf.killed.contains(i) else int(ideal_sheaf.order_at(pt))
        elem = table.mul[elem][table.prime_power(i, e)]
    return table.principal(elem)


def verify_ring(ring: QuotientRing, length_bound: int = 4,
                limits: Limits = DEFAULT_LIMITS) -> OracleReport:
    """Cross-check the symbolic engine against brute force on one ring."""
    from .classify import classify, member
    from .filters import (enumerate_quotient_filters, is_principal,
                          is_product_closed, join as fjoin, meet as fmeet,
                          product as fproduct)
    from .schemes import AffineQuotient
    from .spectrum import module_data

    report = OracleReport(ring)
    table = build_table(ring, limits)
    report.record("ring axioms", True)

    expected = math.prod(m + 1 for m in table.prime_exponents)
    report.record("ideal lattice is the divisor lattice",
                  len(table.ideals) == expected and
                  len({table.ideal_exponents(i) for i in range(len(table.ideals))})
                  == len(table.ideals),
                  f"{len(table.ideals)} ideals")

    oracle_filters = enumerate_filters(table)
    scheme = AffineQuotient(ring)
    engine_filters = enumerate_quotient_filters(scheme, limits)
    pairing = [(f, engine_filter_to_explicit(f, table)) for f in engine_filters]
    mapped = {e.members for _, e in pairing}
    report.record("filter enumerations biject",
                  len(oracle_filters) == len(engine_filters) == len(mapped)
                  and mapped == {f.members for f in oracle_filters},
                  f"{len(oracle_filters)} filters")

    report.record("every filter is prelocalizing",
                  all(check_prelocalizing(f) for f in oracle_filters))

    products_ok = engine_products_ok = True
    detail = ""
    for (fa, ea), (fb, eb) in itertools.product(pairing, repeat=2):
        via_inv, via_ide, eq = product_two_ways(ea, eb)
        if not eq:
            products_ok = False
            detail = f"definitions differ on {sorted(ea.members)} * {sorted(eb.members)}"
        if engine_filter_to_explicit(fproduct(fa, fb), table).members != via_inv.members:
            engine_products_ok = False
            detail = f"engine differs on {sorted(ea.members)} * {sorted(eb.members)}"
    report.record("product definitions agree", products_ok, detail if not products_ok else "")
    report.record("engine product matches oracle", engine_products_ok,
                  detail if not engine_products_ok else "")

    lattice_ok = True
    for (fa, ea), (fb, eb) in itertools.combinations(pairing, 2):
        if engine_filter_to_explicit(fmeet(fa, fb), table).members != ea.members & eb.members:
            lattice_ok = False
        if engine_filter_to_explicit(fjoin(fa, fb), table).members != \
                oracle_join(table, ea, eb).members:
            lattice_ok = False
    report.record("meet and join match oracle", lattice_ok)

    principal_ok = True
    gabriel_ok = True
    for f, e in pairing:
        ok, least = is_principal(f)
        if not ok or sheaf_to_ideal_set(least, table) != filter_min(e):
            principal_ok = False
        if is_gabriel(e) != is_product_closed(f):
            gabriel_ok = False
    report.record("least members match", principal_ok)
    report.record("Gabriel condition matches product closure", gabriel_ok)

    subs = enumerate_subcategories(table, length_bound, limits)
    by_exponents = {}
    for f in engine_filters:
        key = tuple(mult if f.improper else int(f.exponents.value(pt))
                    for pt, mult in scheme.primes())
        by_exponents[key] = classify(f)
    flags_ok = len(subs) == len(engine_filters)
    for s in subs:
        rep = by_exponents.get(s.exponents)
        if rep is None or (s.prelocalizing, s.localizing, s.closed, s.bilocalizing) != \
                (rep.prelocalizing, rep.localizing, rep.closed, rep.bilocalizing):
            flags_ok = False
    report.record("subcategory lattice matches classification",
                  flags_ok, f"{len(subs)} subcategories")

    cyclics = indecomposable_modules(table)
    keys = _indecomposable_keys(table)
    primes = scheme.primes()
    membership_ok = True
    for ms in _all_multisets(keys, length_bound):
        mod = _multiset_module(table, cyclics, ms)
        data = module_data(scheme, [(primes[i][0], j) for i, j in ms])
        for f, e in pairing:
            if member(data, f) != oracle_member(mod, e):
                membership_ok = False
    report.record("membership via annihilators matches", membership_ok)
    return report
