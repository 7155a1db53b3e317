"""Scheme models and ideal sheaves: arithmetic, restriction, gluing."""

import pytest

from qfilt.errors import GluingError, QfiltError, RingMismatchError
from qfilt.fields import PrimeField, SymbolicAlgClosed
from qfilt.ideals import QuotientRing, principal_ideal
from qfilt.poly import factored_from_str, poly_from_str
from qfilt.schemes import (
    AffineLine,
    AffineQuotient,
    DisjointUnion,
    ProjLine,
    closed_subscheme,
    glue_ideals,
    restrict_sheaf,
    sheaf,
    sheaf_contains,
    sheaf_from_affine_ideal,
    sheaf_intersect,
    sheaf_is_idempotent,
    sheaf_product,
    sheaf_sum,
    subscheme_support,
    unit_sheaf,
    zero_sheaf,
)
from qfilt.spectrum import (
    ComponentSet,
    all_set,
    closed_point,
    component_set,
    finite_closed,
    inf_point,
)

A1 = AffineLine(SymbolicAlgClosed())
P1 = ProjLine(SymbolicAlgClosed())
UZ = DisjointUnion.symbolic()
U3 = DisjointUnion.explicit([PrimeField(2), PrimeField(3), PrimeField(5)])
Q = AffineQuotient(QuotientRing.make(PrimeField(2), poly_from_str("x^3+x", 2)))

A = closed_point("a")
B = closed_point("b")


def QPT(name):
    return [pt for pt, _ in Q.primes() if str(pt.name) == name][0]


class TestSheafConstruction:
    def test_orders_normalized(self):
        s = sheaf(A1, {A: 2, B: 0})
        assert s.orders == ((A, 2),)

    def test_unit_and_zero(self):
        assert sheaf(A1, {}) == unit_sheaf(A1)
        assert zero_sheaf(A1).killed == ComponentSet.of([0])

    def test_quotient_cap_folds_into_killed(self):
        x1 = QPT("x+1")
        s = sheaf(Q, {QPT("x"): 1, x1: 1})
        assert s.killed == ComponentSet.of([0])
        assert s.orders == ((x1, 1),)
        assert sheaf(Q, {QPT("x"): 1, x1: 2}) == zero_sheaf(Q)

    def test_excess_order_folds_into_killed(self):
        assert sheaf(Q, {QPT("x"): 2}) == sheaf(Q, {QPT("x"): 1})
        with pytest.raises(QfiltError):
            sheaf(Q, {QPT("x"): -1})

    def test_rejects_off_scheme_point(self):
        with pytest.raises(QfiltError):
            sheaf(A1, {inf_point(): 1})

    def test_from_affine_ideal(self):
        ideal = principal_ideal(SymbolicAlgClosed(), factored_from_str("(x-a)^2*(x-b)"))
        s = sheaf_from_affine_ideal(A1, ideal)
        assert s == sheaf(A1, {A: 2, B: 1})
        z = principal_ideal(SymbolicAlgClosed(), factored_from_str("1"))
        assert sheaf_from_affine_ideal(A1, z) == unit_sheaf(A1)


class TestSheafArithmetic:
    def test_product_adds_orders(self):
        assert sheaf_product(sheaf(A1, {A: 2}), sheaf(A1, {A: 3, B: 1})) \
            == sheaf(A1, {A: 5, B: 1})

    def test_sum_takes_min(self):
        assert sheaf_sum(sheaf(A1, {A: 2}), sheaf(A1, {A: 3, B: 1})) \
            == sheaf(A1, {A: 2})

    def test_intersect_takes_max(self):
        assert sheaf_intersect(sheaf(A1, {A: 2}), sheaf(A1, {B: 1})) \
            == sheaf(A1, {A: 2, B: 1})

    def test_zero_absorbs_product(self):
        assert sheaf_product(sheaf(A1, {A: 2}), zero_sheaf(A1)) == zero_sheaf(A1)
        assert sheaf_sum(sheaf(A1, {A: 2}), zero_sheaf(A1)) == sheaf(A1, {A: 2})

    def test_contains_is_order_dominance(self):
        assert sheaf_contains(sheaf(A1, {A: 1}), sheaf(A1, {A: 2}))
        assert not sheaf_contains(sheaf(A1, {A: 2}), sheaf(A1, {A: 1}))
        assert sheaf_contains(unit_sheaf(A1), zero_sheaf(A1))

    def test_killed_components_multiply_like_zero(self):
        s = sheaf(UZ, {}, ComponentSet.of([0]))
        t = sheaf(UZ, {}, ComponentSet.of([1]))
        assert sheaf_product(s, t).killed == ComponentSet.of([0, 1])
        assert sheaf_sum(s, t) == unit_sheaf(UZ)
        assert sheaf_intersect(s, t).killed == ComponentSet.of([0, 1])

    def test_idempotents(self):
        assert sheaf_is_idempotent(unit_sheaf(UZ))
        assert sheaf_is_idempotent(sheaf(UZ, {}, ComponentSet.of([0])))
        assert sheaf_is_idempotent(sheaf(UZ, {}, ComponentSet.cofinite([2])))
        assert not sheaf_is_idempotent(sheaf(A1, {A: 1}))
        # on the quotient, killing a whole primary component is idempotent
        assert sheaf_is_idempotent(sheaf(Q, {QPT("x"): 1}))
        assert not sheaf_is_idempotent(sheaf(Q, {QPT("x+1"): 1}))

    def test_cross_scheme_rejected(self):
        with pytest.raises(RingMismatchError):
            sheaf_product(sheaf(A1, {A: 1}), unit_sheaf(P1))


class TestRestrictGlue:
    def test_proj_restrict(self):
        s = sheaf(P1, {A: 2, inf_point(): 1})
        r0 = restrict_sheaf(s, 0)
        r1 = restrict_sheaf(s, 1)
        assert r0.orders == ((A, 2),)
        assert any(pt == inf_point() for pt, _ in r1.orders)
        glued = glue_ideals(P1, {0: r0, 1: r1})
        assert glued == s

    def test_union_restrict_glue(self):
        s = sheaf(U3, {}, ComponentSet.of([1]))
        charts = {c: restrict_sheaf(s, c) for c in range(3)}
        assert glue_ideals(U3, charts) == s

    def test_union_glue_rest(self):
        chart0 = sheaf(UZ.chart_scheme(0), {}, ComponentSet.of([0]))
        zero_rest = glue_ideals(UZ, {0: chart0}, rest="zero")
        assert zero_rest == sheaf(UZ, {}, ComponentSet.cofinite([]))
        unit_rest = glue_ideals(UZ, {0: chart0}, rest="unit")
        assert unit_rest == sheaf(UZ, {}, ComponentSet.of([0]))

    def test_glue_conflict(self):
        with pytest.raises(GluingError):
            glue_ideals(P1, {0: sheaf(P1.chart_scheme(0), {A: 1, B: 1}),
                             1: sheaf(P1.chart_scheme(1), {A: 2})})


class TestClosedSubscheme:
    def test_support(self):
        sub = closed_subscheme(sheaf(A1, {A: 2}))
        assert sub.support == finite_closed(A1, [A])
        assert subscheme_support(unit_sheaf(A1)) == finite_closed(A1, [])
        assert subscheme_support(zero_sheaf(A1)) == all_set(A1)
        assert subscheme_support(sheaf(UZ, {}, ComponentSet.of([0]))) \
            == component_set(UZ, ComponentSet.of([0]))
