import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals, small_rationals
from fractal_trees.polys import (
    AlgebraicClass,
    Polynomial,
    RationalFunction,
    class_norm_product,
    factor_classes,
    image_class_poly,
    preimage_poly,
    rational_roots,
    reduce,
    resultant,
    split_squarefree,
    squarefree_decomposition,
)

P = Polynomial


def poly(*coeffs):
    return Polynomial([F(c) if not isinstance(c, F) else c for c in coeffs])


# ---------------------------------------------------------------------------
# field axioms on the rationals (the substrate for everything else)


@settings(max_examples=1000, deadline=None)
@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a != 0:
        assert a * (1 / a) == 1


small_polys = st.lists(small_rationals, min_size=0, max_size=5).map(Polynomial)


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys)
def test_poly_ring_commutes(p, q):
    assert p + q == q + p
    assert p * q == q * p


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_poly_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys)
def test_poly_divmod(p, q):
    if q.is_zero():
        return
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


# ---------------------------------------------------------------------------
# reduce


def test_reduce_cancels_common_factor():
    f = reduce(poly(-1, 0, 1), poly(-1, 1))  # (z^2-1)/(z-1)
    assert f.num == poly(1, 1)
    assert f.den == poly(1)


def test_reduce_zero_numerator():
    f = reduce(Polynomial(), poly(1, 3))
    assert f.is_zero()
    assert f.den == poly(1)


def test_reduce_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        reduce(poly(1), Polynomial())


def test_reduce_monic_denominator():
    f = reduce(poly(2, 2), poly(4, 2))  # (2+2z)/(4+2z)
    assert f.den.leading() == 1
    assert f(F(1)) == F(4, 6)


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys)
def test_reduce_idempotent(p, q):
    if q.is_zero():
        return
    f = reduce(p, q)
    again = reduce(f.num, f.den)
    assert again.num == f.num and again.den == f.den


@settings(max_examples=200, deadline=None)
@given(small_polys, small_polys, small_rationals)
def test_reduce_preserves_values(p, q, x):
    if q.is_zero() or q(x) == 0:
        return
    f = reduce(p, q)
    if f.den(x) == 0:
        return
    assert f(x) == p(x) / q(x)


# ---------------------------------------------------------------------------
# resultants


def test_resultant_linear_pair():
    assert resultant(poly(-2, 1), poly(-3, 1)) == -1


def test_resultant_quadratic():
    # (1 - sqrt2)(1 + sqrt2) = -1
    assert resultant(poly(-2, 0, 1), poly(-1, 1)) == -1


def test_resultant_both_constant_raises():
    with pytest.raises(ValueError):
        resultant(poly(2), poly(3))


def test_resultant_zero_raises():
    with pytest.raises(ValueError):
        resultant(Polynomial(), poly(1, 1))


@settings(max_examples=300, deadline=None)
@given(small_polys, small_polys)
def test_resultant_vanishes_iff_common_factor(p, q):
    if p.is_zero() or q.is_zero() or (p.is_constant() and q.is_constant()):
        return
    r = resultant(p, q)
    common = p.gcd(q).degree > 0
    assert (r == 0) == common


# ---------------------------------------------------------------------------
# roots and classes


def test_rational_roots_with_multiplicity():
    # x (3/2 - x)^2, lowest-first coefficients of -x^3 + 3x^2 - 9/4 x
    p = poly(0, F(9, 4), -3, 1) * -1
    assert rational_roots(p) == [(F(0), 1), (F(3, 2), 2)]


def test_rational_roots_none_for_conjugate_pair():
    assert rational_roots(poly(7, -24, 16)) == []


def test_rational_roots_preiterate_quadratic():
    # 4z^2 - 5z + 3/4 has no rational roots; its root product is 3/16
    p = poly(F(3, 4), -5, 4)
    assert rational_roots(p) == []
    cls = split_squarefree(p.monic())
    assert len(cls) == 1 and cls[0].degree == 2
    assert class_norm_product(cls[0]) == F(3, 16)


def test_rational_roots_zero_poly_raises():
    with pytest.raises(ValueError):
        rational_roots(Polynomial())


def test_class_norms():
    assert class_norm_product(AlgebraicClass.from_rational(F(3, 4))) == F(3, 4)
    pair = AlgebraicClass(poly(F(7, 16), F(-3, 2), 1))
    assert class_norm_product(pair) == F(7, 16)
    sqrt2 = AlgebraicClass(poly(-2, 0, 1))
    assert class_norm_product(sqrt2) == -2


@settings(max_examples=200, deadline=None)
@given(small_rationals)
def test_degree_one_class_norm_is_root(r):
    assert class_norm_product(AlgebraicClass.from_rational(r)) == r


def test_algebraic_class_requires_squarefree():
    with pytest.raises(ValueError):
        AlgebraicClass(poly(1, 2, 1))  # (z+1)^2


def test_squarefree_decomposition():
    p = poly(-1, 1) ** 2 * poly(-2, 1) * poly(1, 1) ** 3
    decomp = squarefree_decomposition(p)
    assert (poly(-2, 1), 1) in decomp
    assert (poly(-1, 1), 2) in decomp
    assert (poly(1, 1), 3) in decomp


def test_quartic_split_into_conjugate_pairs():
    # (z^2 - 3/2 z + 7/16)(z^2 - 3/2 z + 1/4): both irrational pairs
    q1 = poly(F(7, 16), F(-3, 2), 1)
    q2 = poly(F(1, 4), F(-3, 2), 1)
    classes = split_squarefree(q1 * q2)
    assert sorted(c.minpoly.coeffs for c in classes) == sorted(
        [q1.coeffs, q2.coeffs]
    )


def test_quartic_irreducible_stays_whole():
    # z^4 - z - 1 is irreducible over Q
    classes = split_squarefree(poly(-1, -1, 0, 0, 1))
    assert len(classes) == 1 and classes[0].degree == 4
    assert classes[0].certified_irreducible


def test_quartic_biquadratic_split():
    # z^4 - 5 z^2 + 4 = (z^2-1)(z^2-4) -> four rational roots
    classes = split_squarefree(poly(4, 0, -5, 0, 1))
    assert sorted(c.rational_value() for c in classes) == [-2, -1, 1, 2]


def test_factor_classes_with_multiplicity():
    p = poly(F(-3, 2), 1) ** 2 * poly(7, -24, 16).monic()
    out = factor_classes(p)
    assert len(out) == 2
    mults = {cls.degree: m for cls, m in out}
    assert mults == {1: 2, 2: 1}


# ---------------------------------------------------------------------------
# pushing classes through rational maps


def test_image_class_poly_quadratic_through_square():
    # z^2 - 2 under R(z) = z^2 maps to the single value 2
    img = image_class_poly(poly(-2, 0, 1), poly(0, 0, 1), poly(1))
    assert img == poly(-2, 1)


def test_preimage_poly_counts_all_branches():
    # preimages of 3/2 under z(5-4z): roots 3/4 and 1/2
    base = poly(F(-3, 2), 1)
    pre = preimage_poly(base, poly(0, 5, -4), poly(1))
    assert pre.degree == 2
    assert pre.leading() == 1
    assert pre(F(3, 4)) == 0 and pre(F(1, 2)) == 0


def test_preimage_poly_of_quadratic_class():
    base = poly(F(3, 16), F(-5, 4), 1)  # preimages of 3/4 under SG map
    pre = preimage_poly(base, poly(0, 5, -4), poly(1))
    assert pre.degree == 4
    # product of all four preiterates: norm * (1/4)^2 per branch level
    assert pre.constant_term() == F(3, 16) * F(1, 16)
