import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantorval.family import (Alphabet, DigitOracleFailure, DigitWord, FamilyParams,
                              approximate_point, boundary_dimension, convert_digits,
                              digit_set, expand, inner_approximation, inner_interval,
                              interior_measure_closed_form, interior_measure_partial,
                              lemma3_maps, n_moran_solve, psi_family, word_value)
from cantorval.ifs import Similarity, attractor_cover, hull
from cantorval.numerics import (EnumerationGuardExceeded, Interval, IntervalSet,
                                contains_interval, measure, measure_disjoint)

import oracles


def test_digit_set():
    assert digit_set(1) == (0, 2, 3, 5)
    assert digit_set(2) == (0, 2, 4, 5, 7, 9)
    for l in range(1, 12):
        assert len(digit_set(l)) == 2 * l + 2
        assert list(digit_set(l)) == oracles.kl_digits(l)
    with pytest.raises(ValueError):
        digit_set(0)


def test_psi_family_maps():
    assert psi_family(1).maps == tuple(Similarity(F(1, 4), F(d, 4)) for d in (0, 2, 3, 5))
    with pytest.raises(ValueError):
        psi_family(0)


@pytest.mark.parametrize("l", range(1, 7))
def test_basic_properties(l):
    psi, h = psi_family(l), FamilyParams(l).hull
    assert hull(psi) == h == Interval(0, F(4 * l + 1, 2 * l + 1))
    base = 2 * l + 2
    for i in range(1, 2 * l + 3):
        img = psi[i].image(h)
        if i <= l + 1:
            assert img.lo == F(2 * i - 2, base)
            assert img.hi == F(4 * i * l + 2 * i - 1, (2 * l + 1) * base)
        else:
            assert img.lo == F(2 * i - 3, base)
            assert img.hi == F(4 * i * l - 2 * l + 2 * i - 2, (2 * l + 1) * base)


def test_psi_2_image_l1():
    assert psi_family(1)[2].image(Interval(0, F(5, 3))) == Interval(F(1, 2), F(11, 12))


def test_expand_examples():
    assert expand(F(13, 16), 1, 2).digits == (3, 1)
    assert expand(F(1), 1, 3).digits == (3, 3, 3)
    assert expand(F(0), 3, 4).digits == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        expand(F(3, 2), 1, 2)


@given(st.integers(1, 4), st.fractions(min_value=0, max_value=1, max_denominator=10 ** 6),
       st.integers(1, 15))
def test_expand_truncation_error(l, a, k):
    w = expand(a, l, k)
    assert 0 <= a - w.value <= F(1, (2 * l + 2) ** k)


def test_convert_examples():
    assert convert_digits(DigitWord((3, 1), 1)).digits == (2, 5)
    assert convert_digits(DigitWord((3, 2), 1)).digits == (3, 2)
    out = convert_digits(DigitWord((3, 0, 1), 1))
    assert out.digits == (2, 3, 5)
    assert out.value == F(3, 4) + F(1, 64)
    assert out.alphabet is Alphabet.RESTRICTED
    assert convert_digits(DigitWord((3,), 1)).digits == (3,)


def test_convert_rejects_bad_words():
    with pytest.raises(ValueError):
        convert_digits(DigitWord((2, 1), 1))
    with pytest.raises(ValueError):
        convert_digits(DigitWord((), 1))
    with pytest.raises(ValueError):
        DigitWord((3, 4), 1)


@st.composite
def full_words(draw):
    l = draw(st.integers(1, 4))
    tail = draw(st.lists(st.integers(0, 2 * l + 1), max_size=14))
    return DigitWord((2 * l + 1, *tail), l)


@given(full_words())
def test_convert_preserves_value_and_alphabet(w):
    b = convert_digits(w)
    assert len(b.digits) == len(w.digits)
    assert set(b.digits) <= set(digit_set(w.l))
    assert b.value == word_value(w.digits, 2 * w.l + 2)


def test_convert_exhaustive_short_words():
    for l in (1, 2):
        alphabet = range(2 * l + 2)
        words = [()]
        for _ in range(5):
            words = [w + (d,) for w in words for d in alphabet]
            for w in words:
                convert_digits(DigitWord((2 * l + 1, *w), l))


def test_convert_fails_loudly_on_oracle_mismatch(monkeypatch):
    import cantorval.family as fam
    # drop digit 5 from T_1: the borrow branch can no longer land in the alphabet
    monkeypatch.setattr(fam, "digit_set", lambda l: (0, 2, 3))
    with pytest.raises(DigitOracleFailure):
        convert_digits(DigitWord((3, 1), 1))


def test_approximate_point_examples():
    assert approximate_point(F(13, 16), 1, F(1, 100)) == F(13, 16)
    for l in range(1, 5):
        a = F(2 * l + 1, 2 * l + 2)
        assert approximate_point(a, l, F(1, 10 ** 6)) == a
    b = approximate_point(F(1), 1, F(1, 64))
    assert abs(b - 1) < F(1, 64)
    with pytest.raises(ValueError):
        approximate_point(F(1, 2), 1, F(1, 10))


@given(st.integers(1, 3), st.fractions(min_value=0, max_value=1, max_denominator=5000),
       st.integers(1, 12))
def test_approximate_point_within_eps(l, t, e):
    base = 2 * l + 2
    a = F(base - 1, base) + t / base
    eps = F(1, 2 ** e)
    b = approximate_point(a, l, eps)
    assert abs(a - b) < eps
    # b is a finite T_l expansion, hence a point of the attractor covers
    assert contains_interval(attractor_cover(psi_family(l), 3), Interval(b, b))


def test_inner_interval():
    assert inner_interval(1) == Interval(F(2, 3), 1)
    assert inner_interval(2) == Interval(F(4, 5), 1)
    for l in range(1, 8):
        mid = FamilyParams(l).midpoint
        right = Interval(F(2 * l + 1, 2 * l + 2), 1)
        # reflect [mid, 1] through the midpoint: left endpoint of I
        assert 2 * mid - right.hi == inner_interval(l).lo
        assert right.lo <= mid


def test_lemma3_maps_examples():
    assert lemma3_maps(1, 0) == [Similarity(F(1, 4), 0), Similarity(F(1, 4), F(5, 4))]
    maps = lemma3_maps(1, 1)
    assert maps[2:] == [Similarity(F(1, 16), F(1, 2)), Similarity(F(1, 16), F(17, 16))]
    assert len(lemma3_maps(2, 3)) == 16


@pytest.mark.parametrize("l", [1, 2, 3])
def test_lemma3_disjoint(l):
    h = FamilyParams(l).hull
    images = [IntervalSet((g.image(h),)) for g in lemma3_maps(l, 6)]
    inner = IntervalSet((inner_interval(l),))
    assert all(measure_disjoint(a, b) for i, a in enumerate(images) for b in images[i + 1:])
    assert all(measure_disjoint(a, inner) for a in images)
    assert len(images) == 2 * l * 7


@pytest.mark.parametrize("l", [1, 2, 3])
def test_lemma3_monotone_accumulation(l):
    h = FamilyParams(l).hull
    maps = lemma3_maps(l, 8)
    per_k = 2 * l
    left_max = [max(g.image(h).hi for g in maps[k * per_k:k * per_k + l]) for k in range(9)]
    right_min = [min(g.image(h).lo for g in maps[k * per_k + l:(k + 1) * per_k]) for k in range(9)]
    assert all(a < b for a, b in zip(left_max, left_max[1:]))
    assert all(a > b for a, b in zip(right_min, right_min[1:]))
    assert left_max[-1] < F(2 * l, 2 * l + 1) < 1 < right_min[-1]


def test_inner_approximation_examples():
    assert inner_approximation(1, 0) == IntervalSet.of(("2/3", 1))
    one = inner_approximation(1, 1)
    assert one == IntervalSet.of(("1/6", "1/4"), ("2/3", 1), ("17/12", "3/2"))
    assert measure(one) == F(1, 2)
    assert measure(inner_approximation(1, 2)) == F(5, 8)


@pytest.mark.parametrize("l,n", [(1, 0), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2)])
def test_inner_approximation_against_enumeration(l, n):
    got = [(iv.lo, iv.hi) for iv in inner_approximation(l, n)]
    assert got == oracles.brute_inner(l, n)


def test_inner_approximation_guard():
    with pytest.raises(EnumerationGuardExceeded):
        inner_approximation(1, 12)


def test_interior_partial_examples():
    assert interior_measure_partial(1, 0) == F(1, 3)
    assert interior_measure_partial(1, 1) == F(1, 2)
    assert interior_measure_partial(1, 2) == F(5, 8)


@pytest.mark.parametrize("l", range(1, 6))
def test_interior_partial_closed_form(l):
    for n in range(12):
        assert interior_measure_partial(l, n) == interior_measure_closed_form(l, n)


@pytest.mark.parametrize("l", [1, 2])
def test_inner_measure_matches_partial_sums(l):
    for n in range(5):
        assert measure(inner_approximation(l, n)) == interior_measure_partial(l, n)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_measure_squeeze_and_containment(l):
    psi = psi_family(l)
    for n in range(5):
        cover = attractor_cover(psi, n)
        inner = inner_approximation(l, n)
        assert measure(inner) <= 1 <= measure(cover)
        assert inner.issubset(cover)
        assert contains_interval(cover, inner_interval(l))


@pytest.mark.parametrize("l", [1, 2, 3])
def test_symmetry_about_midpoint(l):
    mid = FamilyParams(l).midpoint
    for n in range(4):
        c = attractor_cover(psi_family(l), n)
        i = inner_approximation(l, n)
        assert c.reflect(mid) == c
        assert i.reflect(mid) == i


def test_boundary_dimension_values():
    assert abs(boundary_dimension(1) - 0.7924812503605781) < 1e-15
    assert abs(boundary_dimension(2) - 0.8982444017039273) < 1e-15
    dims = [boundary_dimension(l) for l in range(1, 40)]
    assert all(a < b < 1 for a, b in zip(dims, dims[1:]))


def test_n_moran_examples():
    assert abs(n_moran_solve(2, F(1, 4), 1e-12) - math.log(3) / math.log(4)) < 1e-11
    assert abs(n_moran_solve(1, F(1, 2), 1e-12) - 1) < 1e-11
    assert abs(n_moran_solve(2, F(1, 3), 1e-12) - 1) < 1e-11
    with pytest.raises(ValueError):
        n_moran_solve(0, F(1, 2))
    with pytest.raises(ValueError):
        n_moran_solve(1, F(1))


@given(st.integers(1, 40), st.integers(2, 50))
def test_n_moran_matches_reduction(c, d):
    s = n_moran_solve(c, F(1, d), 1e-11)
    assert abs(s - math.log(c + 1) / math.log(d)) < 1e-10


def test_digit_word_json():
    w = DigitWord((2, 5), 1, Alphabet.RESTRICTED)
    assert w.to_json() == {"digits": [2, 5], "alphabet": "restricted", "l": 1}
    assert DigitWord.from_json(w.to_json()) == w
