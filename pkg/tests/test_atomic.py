import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiband.atomic import (
    AtomicSpace,
    SupportSet,
    band_contains,
    basis_vector,
    is_disjoint,
    is_strictly_monotone,
    norm_value,
    support,
    vec,
    vec_add,
)
from semiband.errors import DimensionMismatchError, ValidationError
from semiband.values import ExactValue, IntervalValue, SqrtValue, compare

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=9)
vectors3 = st.lists(rationals, min_size=3, max_size=3).map(tuple)


def test_support_reads_off_nonzeros():
    assert support(vec(0, 3, 0, -2)) == SupportSet.of(2, 4)
    assert support(vec(0, 0, 0)) == SupportSet.of()
    assert support(vec("1/3", 0, 5)) == SupportSet.of(1, 3)


def test_disjointness_basics():
    assert is_disjoint(vec(1, 0), vec(0, 2))
    assert not is_disjoint(vec(1, 1), vec(0, 2))
    assert is_disjoint(vec(0, 0), vec(5, 7))
    with pytest.raises(DimensionMismatchError):
        is_disjoint(vec(1), vec(1, 2))


def test_band_contains_basics():
    assert band_contains(vec(1, 0, 2), vec(0, 0, 5))
    assert not band_contains(vec(1, 0, 2), vec(1, 1, 0))
    assert band_contains(vec(0, 0, 0), vec(0, 0, 0))


@given(vectors3, vectors3)
def test_support_of_sum_bounded_by_union(f, g):
    assert support(vec_add(f, g)) <= support(f) | support(g)


@given(vectors3, vectors3)
def test_disjoint_symmetry(f, g):
    assert is_disjoint(f, g) == is_disjoint(g, f)


@given(vectors3)
def test_self_disjoint_means_zero(f):
    assert is_disjoint(f, f) == (support(f) == SupportSet.of())


@given(vectors3, vectors3, vectors3)
def test_band_transitivity_and_disjoint_propagation(f, g, h):
    if band_contains(g, f) and band_contains(h, g):
        assert band_contains(h, f)
    if is_disjoint(f, g) and band_contains(g, h):
        assert is_disjoint(f, h)


def test_norm_examples():
    sp2 = AtomicSpace.lp(2, 2)
    assert norm_value(sp2, vec(3, 4)) == ExactValue(Fraction(5))
    sp1 = AtomicSpace.lp(2, 1)
    assert norm_value(sp1, vec(1, "1/2"), side="dual") == ExactValue(Fraction(1))
    spi = AtomicSpace.lp(2, "inf")
    assert norm_value(spi, vec(2, -3)) == ExactValue(Fraction(3))


def test_weighted_norms_and_duality():
    sp = AtomicSpace.lp(2, 1, weights=[2, 3])
    assert norm_value(sp, vec(1, 1)) == ExactValue(Fraction(5))
    assert norm_value(sp, vec(1, 1), side="dual") == ExactValue(Fraction(1, 2))
    sp2 = AtomicSpace.lp(2, 2, weights=[2, 3])
    assert norm_value(sp2, vec(1, 1)) == SqrtValue(Fraction(5))
    assert norm_value(sp2, vec(1, 1), side="dual") == SqrtValue(Fraction(1, 2) + Fraction(1, 3))


def test_general_p_norm_is_enclosed():
    sp = AtomicSpace.lp(2, Fraction(3, 2))
    v = norm_value(sp, vec(1, 1))
    # 2**(2/3) is irrational; the enclosure must bracket it tightly
    assert isinstance(v, IntervalValue)
    assert v.hi - v.lo <= Fraction(1, 10**30)
    assert v.lo ** 3 <= 4 <= v.hi ** 3
    # integer p stays exact under the hood of the same code path
    sp3 = AtomicSpace.lp(2, 3)
    v3 = norm_value(sp3, vec(2, 2))
    lo, hi = v3.enclosure()
    assert lo**3 <= 16 <= hi**3


def test_dual_norm_holder_pairing_bound():
    # |<psi, x>| <= ||psi||_dual * ||x|| on random exact draws (p = 1, 2)
    rng = random.Random(7)
    for p in (1, 2):
        sp = AtomicSpace.lp(3, p, weights=[1, 2, "1/2"])
        for _ in range(200):
            x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            psi = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            pair = abs(sum(a * b for a, b in zip(psi, x)))
            prod_sq_cmp = compare(
                ExactValue(pair),
                _mul_bound(norm_value(sp, psi, "dual"), norm_value(sp, x)),
            )
            assert prod_sq_cmp <= 0


def _mul_bound(a, b):
    from semiband.values import multiply

    return multiply(a, b)


def test_norm_homogeneity_and_lattice_property_bulk():
    rng = random.Random(1)
    spaces = [AtomicSpace.lp(4, p, weights=[1, 2, 3, "1/2"]) for p in (1, 2, "inf")]
    for _ in range(10**4):
        sp = spaces[rng.randrange(3)]
        v = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4))
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
        av = tuple(abs(x) for x in v)
        assert norm_value(sp, av) == norm_value(sp, v)
        scaled = norm_value(sp, tuple(c * x for x in v))
        base = norm_value(sp, v)
        assert scaled == _mul_bound(ExactValue(abs(c)), base)


def test_strict_monotonicity_bulk_positive_pairs():
    rng = random.Random(2)
    for p in (1, 2):
        sp = AtomicSpace.lp(3, p, weights=[1, 3, "1/2"])
        assert is_strictly_monotone(sp).holds
        for _ in range(10**3):
            x = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3))
            y = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3))
            assert compare(norm_value(sp, vec_add(x, y)), norm_value(sp, x)) > 0


def test_sup_norm_witness():
    sp = AtomicSpace.lp(2, "inf")
    res = is_strictly_monotone(sp)
    assert not res.holds
    x, y = res.witness
    assert all(c >= 0 for c in x) and all(c >= 0 for c in y)
    assert support(x) != SupportSet.of() and support(y) != SupportSet.of()
    assert norm_value(sp, vec_add(x, y)) == norm_value(sp, x)


def test_single_atom_sup_norm_is_strictly_monotone():
    assert is_strictly_monotone(AtomicSpace.lp(1, "inf")).holds


def test_space_validation():
    with pytest.raises(ValidationError):
        AtomicSpace.lp(2, Fraction(1, 2))
    with pytest.raises(ValidationError):
        AtomicSpace.lp(2, 2, weights=[1, 0])
    with pytest.raises(ValidationError):
        AtomicSpace.lp(0, 2)
    with pytest.raises(ValidationError):
        AtomicSpace.lp(2, 2, weights=[1, 1, 1])


def test_basis_vector_bounds():
    with pytest.raises(DimensionMismatchError):
        basis_vector(3, 4)
