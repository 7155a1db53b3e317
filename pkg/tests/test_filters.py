"""The filter calculus: normal forms, lattice operations, locality."""

import pytest
from hypothesis import given, settings, strategies as st

from qfilt.config import INF
from qfilt.errors import GluingError, QfiltError, UnsupportedFamilyError
from qfilt.fields import PrimeField, SymbolicAlgClosed
from qfilt.filters import (
    ALL_POWERS,
    EVERYTHING,
    FULL_ONLY,
    cofinite_family,
    contains,
    enumerate_quotient_filters,
    filter_base,
    generate,
    glue_filters,
    improper_filter,
    is_local,
    is_prime,
    is_principal,
    is_product_closed,
    join,
    localize,
    meet,
    presented,
    product,
    restrict,
    trivial_filter,
    up_to,
)
from qfilt.ideals import QuotientRing
from qfilt.poly import poly_from_str
from qfilt.schemes import (
    AffineLine,
    AffineQuotient,
    DisjointUnion,
    ProjLine,
    sheaf,
    unit_sheaf,
    zero_sheaf,
)
from qfilt.spectrum import (
    ComponentSet,
    closed_point,
    generic_point,
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


QX = None
QX1 = None


def setup_module():
    global QX, QX1
    QX = QPT("x")
    QX1 = QPT("x+1")


class TestNormalForm:
    def test_default_exceptions_dropped(self):
        f = presented(A1, 0, {A: 0, B: 2})
        assert f.exponents.exceptions == ((B, 2),)

    def test_quotient_caps_clamp(self):
        f = presented(Q, 0, {QPT("x"): 5})
        assert f.value(QPT("x")) == 1

    def test_quotient_default_folds(self):
        f = presented(Q, INF, {QPT("x+1"): 1})
        assert f.exponents.default == 0
        assert f.value(QPT("x")) == 1 and f.value(QPT("x+1")) == 1

    def test_quotient_inf_default_reaches_zero_ideal(self):
        # orders at every cap cut out the zero ideal on an Artinian ring
        assert presented(Q, INF).improper

    def test_quotient_all_caps_is_improper(self):
        assert presented(Q, 0, {QPT("x"): 1, QPT("x+1"): 2}).improper

    def test_killed_curve_is_improper(self):
        assert presented(A1, 0, killed=ComponentSet.of([0])).improper

    def test_killed_artinian_becomes_caps(self):
        f = presented(Q, 0, killed=ComponentSet.of([1]))
        assert not f.improper
        assert f.killed.is_none
        assert f.value(QPT("x+1")) == 2 and f.value(QPT("x")) == 0

    def test_union_killed_universe_is_improper(self):
        assert presented(UZ, 0, killed=ComponentSet.cofinite([])).improper
        assert presented(U3, 0, killed=ComponentSet.of([0, 1, 2])).improper
        assert not presented(U3, 0, killed=ComponentSet.of([0, 1])).improper

    def test_rejects_generic_exception(self):
        with pytest.raises(QfiltError):
            presented(A1, 0, {generic_point(0): 1})

    def test_rejects_off_scheme(self):
        with pytest.raises(QfiltError):
            presented(A1, 0, {inf_point(): 1})

    def test_structural_equality_is_filter_equality(self):
        assert presented(A1, 0, {A: 0}) == trivial_filter(A1)
        assert presented(Q, 0, {QPT("x"): 3}) == presented(Q, 0, {QPT("x"): 1})


class TestContains:
    def test_value_dominance(self):
        f = presented(A1, 0, {A: 2})
        assert contains(f, sheaf(A1, {A: 2}))
        assert contains(f, sheaf(A1, {A: 1}))
        assert contains(f, unit_sheaf(A1))
        assert not contains(f, sheaf(A1, {A: 3}))
        assert not contains(f, sheaf(A1, {B: 1}))

    def test_improper_contains_zero(self):
        assert contains(improper_filter(A1), zero_sheaf(A1))
        assert not contains(presented(A1, INF), zero_sheaf(A1))

    def test_infinite_default_contains_all_divisors(self):
        f = presented(A1, INF)
        assert contains(f, sheaf(A1, {A: 100, B: 3}))

    def test_artinian_cap_exception_admits_killed_sheaf(self):
        # the sheaf normalizes a cap order into a killed component; the
        # filter records the same cut as a cap-valued exception
        f = presented(Q, 0, {QPT("x"): 1})
        assert contains(f, sheaf(Q, {QPT("x"): 1}))

    def test_union_killed_patterns(self):
        f = presented(UZ, 0, killed=ComponentSet.of([0, 1]))
        assert contains(f, sheaf(UZ, {}, ComponentSet.of([0])))
        assert contains(f, sheaf(UZ, {}, ComponentSet.of([0, 1])))
        assert not contains(f, sheaf(UZ, {}, ComponentSet.of([2])))
        assert not contains(f, sheaf(UZ, {}, ComponentSet.cofinite([5])))
        g = presented(UZ, 0, killed=ComponentSet.cofinite([0]))
        assert contains(g, sheaf(UZ, {}, ComponentSet.cofinite([0])))
        assert contains(g, sheaf(UZ, {}, ComponentSet.of([3, 7])))
        assert not contains(g, sheaf(UZ, {}, ComponentSet.cofinite([1])))


class TestLatticeOps:
    def test_meet_is_pointwise_min(self):
        f = presented(A1, 0, {A: 2, B: 1})
        g = presented(A1, 0, {A: 1})
        assert meet(f, g) == presented(A1, 0, {A: 1})
        assert join(f, g) == presented(A1, 0, {A: 2, B: 1})

    def test_meet_with_improper(self):
        f = presented(A1, 0, {A: 2})
        assert meet(improper_filter(A1), f) == f
        assert join(improper_filter(A1), f).improper

    def test_product_adds(self):
        f = presented(A1, 0, {A: 2})
        g = presented(A1, 0, {A: 3, B: 1})
        assert product(f, g) == presented(A1, 0, {A: 5, B: 1})

    def test_product_inf_absorbs(self):
        f = presented(A1, 0, {A: INF})
        g = presented(A1, 0, {A: 3})
        assert product(f, g) == presented(A1, 0, {A: INF})

    def test_product_clamps_at_caps(self):
        f = presented(Q, 0, {QPT("x+1"): 1})
        assert product(f, f) == presented(Q, 0, {QPT("x+1"): 2})
        assert product(product(f, f), f) == presented(Q, 0, {QPT("x+1"): 2})

    def test_product_improper_absorbs(self):
        assert product(improper_filter(A1), trivial_filter(A1)).improper

    def test_union_killed_ops(self):
        f = presented(UZ, 0, killed=ComponentSet.of([0, 1]))
        g = presented(UZ, 0, killed=ComponentSet.of([1, 2]))
        assert meet(f, g) == presented(UZ, 0, killed=ComponentSet.of([1]))
        assert join(f, g) == presented(UZ, 0, killed=ComponentSet.of([0, 1, 2]))
        assert product(f, g) == join(f, g)


class TestLocalize:
    def test_stalk_kinds(self):
        f = presented(A1, 0, {A: 2, B: INF})
        assert localize(f, A) == up_to(2)
        assert localize(f, B) == ALL_POWERS
        assert localize(f, closed_point("c")) == up_to(0)
        assert localize(improper_filter(A1), A) == EVERYTHING

    def test_generic_stalk(self):
        assert localize(presented(A1, 0, {A: 2}), generic_point(0)) == FULL_ONLY
        assert localize(presented(A1, INF), generic_point(0)) == FULL_ONLY

    def test_artinian_cap_gives_everything(self):
        f = presented(Q, 0, {QPT("x+1"): 2})
        assert localize(f, QPT("x+1")) == EVERYTHING
        assert localize(presented(Q, 0, {QPT("x+1"): 1}), QPT("x+1")) == up_to(1)

    def test_union_stalks(self):
        f = presented(UZ, 0, killed=ComponentSet.of([0]))
        assert localize(f, generic_point(0)) == EVERYTHING
        assert localize(f, generic_point(1)) == FULL_ONLY


class TestRestrict:
    def test_proj_charts_partition_exceptions(self):
        f = presented(P1, 0, {A: 2, inf_point(): 1})
        r1 = restrict(f, 1)
        assert r1.value(inf_point()) == 1 and r1.value(A) == 2
        r0 = restrict(f, 0)
        assert r0.value(A) == 2

    def test_union_chart(self):
        f = presented(UZ, 0, killed=ComponentSet.of([3]))
        assert restrict(f, 3).improper
        assert restrict(f, 5) == trivial_filter(UZ.chart_scheme(5))

    def test_single_chart_identity(self):
        f = presented(A1, 0, {A: 2})
        assert restrict(f, 0) is f


class TestGlue:
    def test_proj_round_trip(self):
        f = presented(P1, INF, {A: 2, inf_point(): 1})
        glued = glue_filters(P1, {0: restrict(f, 0), 1: restrict(f, 1)})
        assert glued == f

    def test_proj_conflict_names_point(self):
        c0 = presented(P1.chart_scheme(0), 0, {A: 1})
        c1 = presented(P1.chart_scheme(1), 0, {A: 2})
        with pytest.raises(GluingError, match="pt:a"):
            glue_filters(P1, {0: c0, 1: c1})

    def test_proj_default_conflict(self):
        c0 = presented(P1.chart_scheme(0), 0)
        c1 = presented(P1.chart_scheme(1), INF)
        with pytest.raises(GluingError):
            glue_filters(P1, {0: c0, 1: c1})

    def test_union_rest_trivial(self):
        chart = improper_filter(UZ.chart_scheme(4))
        glued = glue_filters(UZ, {4: chart})
        assert glued == presented(UZ, 0, killed=ComponentSet.of([4]))

    def test_union_rest_improper(self):
        chart = trivial_filter(UZ.chart_scheme(4))
        glued = glue_filters(UZ, {4: chart}, rest="improper")
        assert glued == presented(UZ, 0, killed=ComponentSet.cofinite([4]))

    def test_union_round_trip(self):
        f = presented(U3, 0, killed=ComponentSet.of([1]))
        glued = glue_filters(U3, {c: restrict(f, c) for c in range(3)})
        assert glued == f


class TestPredicates:
    def test_principal_iff_finite_values(self):
        ok, least = is_principal(presented(A1, 0, {A: 2}))
        assert ok and least == sheaf(A1, {A: 2})
        ok, least = is_principal(improper_filter(A1))
        assert ok and least == zero_sheaf(A1)
        assert not is_principal(presented(A1, 0, {A: INF}))[0]
        assert not is_principal(presented(A1, INF))[0]

    def test_union_cofinite_kill_is_principal(self):
        ok, least = is_principal(presented(UZ, 0, killed=ComponentSet.cofinite([2])))
        assert ok and least == sheaf(UZ, {}, ComponentSet.cofinite([2]))

    def test_product_closed_iff_zero_cap_inf(self):
        assert is_product_closed(trivial_filter(A1))
        assert is_product_closed(improper_filter(A1))
        assert is_product_closed(presented(A1, 0, {A: INF}))
        assert is_product_closed(presented(A1, INF, {A: 0}))
        assert not is_product_closed(presented(A1, 0, {A: 2}))
        assert not is_product_closed(presented(A1, INF, {A: 1}))
        # artinian caps count as stable values
        assert is_product_closed(presented(Q, 0, {QPT("x"): 1}))
        assert not is_product_closed(presented(Q, 0, {QPT("x+1"): 1}))

    def test_prime_patterns_curve(self):
        assert is_prime(presented(A1, INF)) == generic_point(0)
        assert is_prime(presented(A1, INF, {A: 0})) == A
        assert is_prime(presented(A1, INF, {A: 0, B: 0})) is None
        assert is_prime(trivial_filter(A1)) is None
        assert is_prime(improper_filter(A1)) is None

    def test_prime_patterns_quotient(self):
        assert is_prime(presented(Q, 0, {QPT("x+1"): 2})) == QPT("x")
        assert is_prime(presented(Q, 0, {QPT("x"): 1})) == QPT("x+1")
        assert is_prime(trivial_filter(Q)) is None

    def test_prime_patterns_union(self):
        assert is_prime(presented(UZ, 0, killed=ComponentSet.cofinite([5]))) \
            == generic_point(5)
        assert is_prime(presented(UZ, 0, killed=ComponentSet.of([5]))) is None
        assert is_prime(presented(U3, 0, killed=ComponentSet.of([0, 1]))) \
            == generic_point(2)


class TestGenerate:
    def test_generated_is_principal_on_intersection(self):
        base = filter_base(A1, [sheaf(A1, {A: 2}), sheaf(A1, {A: 1, B: 1})])
        flt = generate(base)
        assert flt == presented(A1, 0, {A: 2, B: 1})
        local, closure = is_local(base)
        assert local and closure == flt

    def test_cofinite_family_not_local(self):
        base = cofinite_family(UZ)
        local, closure = is_local(base)
        assert not local
        assert closure.improper
        assert generate(base).improper

    def test_cofinite_family_needs_symbolic_union(self):
        with pytest.raises(UnsupportedFamilyError):
            cofinite_family(A1)
        with pytest.raises(UnsupportedFamilyError):
            cofinite_family(U3)

    def test_empty_base_rejected(self):
        with pytest.raises(QfiltError):
            filter_base(A1, [])


class TestEnumeration:
    def test_quotient_filter_counts(self):
        assert len(enumerate_quotient_filters(Q)) == 6
        q3 = AffineQuotient(QuotientRing.make(PrimeField(2), poly_from_str("x^3", 2)))
        assert len(enumerate_quotient_filters(q3)) == 4
        q11 = AffineQuotient(QuotientRing.make(PrimeField(2), poly_from_str("x^2+x", 2)))
        assert len(enumerate_quotient_filters(q11)) == 4

    def test_enumeration_is_duplicate_free(self):
        flts = enumerate_quotient_filters(Q)
        assert len(set(flts)) == len(flts)


# ---------------------------------------------------------------------------
# randomized laws (the large budgeted suites live in the acceptance tests)

VALUES = st.sampled_from([0, 1, 2, 3, INF])
POINTS = st.sampled_from([closed_point(l) for l in "abcd"])


@st.composite
def line_filters(draw):
    if draw(st.booleans()) and draw(st.integers(0, 9)) == 0:
        return improper_filter(A1)
    default = draw(st.sampled_from([0, INF]))
    pts = draw(st.lists(POINTS, unique=True, max_size=3))
    return presented(A1, default, {pt: draw(VALUES) for pt in pts})


@given(line_filters(), line_filters())
@settings(max_examples=300)
def test_meet_join_commute(f, g):
    assert meet(f, g) == meet(g, f)
    assert join(f, g) == join(g, f)
    assert product(f, g) == product(g, f)


@given(line_filters(), line_filters(), line_filters())
@settings(max_examples=300)
def test_lattice_laws(f, g, h):
    assert meet(f, meet(g, h)) == meet(meet(f, g), h)
    assert join(f, join(g, h)) == join(join(f, g), h)
    assert meet(f, join(f, g)) == f
    assert join(f, meet(f, g)) == f


@given(line_filters(), line_filters())
@settings(max_examples=300)
def test_product_contains_factors(f, g):
    p = product(f, g)
    assert meet(p, f) == f
    assert meet(p, g) == g
