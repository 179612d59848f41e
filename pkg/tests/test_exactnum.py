import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilorbit.exactnum import (
    ExactNumError,
    FieldElement,
    IrrationalValueError,
    Poly,
    RealAlgebraicField,
    as_element,
    factor_over_Q,
    factor_over_field,
    field_sqrt,
    poly_gcd,
    rational_from_str,
    rational_to_str,
    sign_changes_at,
    sqrt_field,
    squarefree_decomposition,
    sturm_chain,
    sturm_real_roots,
)


def qpoly(*coeffs):
    return Poly.from_rationals(coeffs)


K2 = sqrt_field(2)


# ---------------------------------------------------------------------------
# rational string round trip
# ---------------------------------------------------------------------------

def test_rational_strings():
    assert rational_to_str(F(3, 2)) == "3/2"
    assert rational_to_str(F(-4)) == "-4"
    assert rational_from_str("3/2") == F(3, 2)
    assert rational_from_str("-7") == F(-7)
    with pytest.raises(ExactNumError):
        rational_from_str("1/0")


# ---------------------------------------------------------------------------
# sturm_real_roots
# ---------------------------------------------------------------------------

def test_sturm_x2_minus_2():
    roots = sturm_real_roots(qpoly(-2, 0, 1))
    assert len(roots) == 2
    assert all(m == 1 for _, m in roots)
    (lo1, hi1), _ = roots[0]
    (lo2, hi2), _ = roots[1]
    # one bracket around -sqrt(2), one around +sqrt(2)
    assert lo1 < F(-141, 100) < hi1 or lo1 < F(-142, 100) < hi1
    assert hi1 <= 0 <= lo2
    assert lo2 < F(142, 100) < hi2 or lo2 < F(141, 100) < hi2


def test_sturm_no_real_roots():
    assert sturm_real_roots(qpoly(1, 0, 1)) == []


def test_sturm_repeated_root():
    roots = sturm_real_roots(qpoly(1, -2, 1))
    assert len(roots) == 1
    (lo, hi), m = roots[0]
    assert m == 2
    assert lo < 1 < hi or (lo <= 1 <= hi)


def test_sturm_rejects_zero():
    with pytest.raises(ExactNumError):
        sturm_real_roots(Poly([]))


def test_sturm_intervals_disjoint_and_counts_match():
    rng = random.Random(20240)
    for _ in range(100):
        deg = rng.randint(1, 8)
        p = qpoly(*[rng.randint(-8, 8) for _ in range(deg + 1)])
        if p.is_zero():
            continue
        roots = sturm_real_roots(p)
        chain = sturm_chain(p)
        for (lo, hi), _m in roots:
            assert sign_changes_at(chain, lo) - sign_changes_at(chain, hi) == 1
        spans = sorted((lo, hi) for (lo, hi), _ in roots)
        for (a, b), (c, d) in zip(spans, spans[1:]):
            assert b <= c
        # total distinct real roots
        from nilorbit.exactnum import root_bound, radical

        B = root_bound(radical(p))
        total = sign_changes_at(chain, -B) - sign_changes_at(chain, B)
        assert total == len(roots)


# ---------------------------------------------------------------------------
# factor_over_Q
# ---------------------------------------------------------------------------

def test_factor_x4_minus_1():
    factors = factor_over_Q(qpoly(-1, 0, 0, 0, 1))
    got = {(f.degree, tuple(f.rational_coeffs())): m for f, m in factors}
    assert got == {
        (1, (F(-1), F(1))): 1,
        (1, (F(1), F(1))): 1,
        (2, (F(1), F(0), F(1))): 1,
    }


def test_factor_square():
    factors = factor_over_Q(qpoly(1, 2, 1))
    assert len(factors) == 1
    f, m = factors[0]
    assert m == 2 and f.rational_coeffs() == [F(1), F(1)]


def test_factor_irreducible_quadratic():
    factors = factor_over_Q(qpoly(-2, 0, 1))
    assert len(factors) == 1 and factors[0][1] == 1
    assert factors[0][0].rational_coeffs() == [F(-2), F(0), F(1)]


def test_factor_reassemble_random():
    rng = random.Random(11)
    for _ in range(40):
        deg = rng.randint(1, 6)
        p = qpoly(*[rng.randint(-6, 6) for _ in range(deg + 1)])
        if p.is_zero() or p.degree < 1:
            continue
        prod = Poly.from_rationals([1])
        for f, m in factor_over_Q(p):
            for _ in range(m):
                prod = prod * f
        assert (prod * p.lead()).coeffs == p.coeffs


def test_factor_kronecker_biquadratic():
    # (x^2-2)(x^2-18): reducible, no rational roots, not irreducible mod any p
    p = qpoly(-2, 0, 1) * qpoly(-18, 0, 1)
    factors = factor_over_Q(p)
    degs = sorted(f.degree for f, _ in factors)
    assert degs == [2, 2]


def test_factor_degree_cap():
    with pytest.raises(ExactNumError):
        factor_over_Q(qpoly(*([1] + [0] * 12 + [1])))


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

def test_rational_part():
    e = as_element(F(3, 2), K2)
    assert e.rational_part() == F(3, 2)
    with pytest.raises(IrrationalValueError):
        K2.alpha().rational_part()
    a = K2.alpha()
    assert (1 + 2 * a - 2 * a).rational_part() == 1


def test_element_sign():
    a = K2.alpha()
    assert (a - 1).sign() == 1
    assert (a * a - 2).sign() == 0
    assert (-a).sign() == -1
    # tight case: 99/70 slightly overestimates sqrt(2)
    assert (a - F(99, 70)).sign() == -1
    assert (a - F(140, 99)).sign() == 1


def test_sign_matches_float_when_large():
    rng = random.Random(5)
    for _ in range(200):
        e = K2.element([F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(2)])
        f = float(e)
        if abs(f) > 1e-6:
            assert e.sign() == (1 if f > 0 else -1)


def test_min_poly_irreducibility_enforced():
    with pytest.raises(ExactNumError):
        RealAlgebraicField(qpoly(-4, 0, 1), (F(1), F(3)))  # x^2-4 is reducible
    with pytest.raises(ExactNumError):
        RealAlgebraicField(qpoly(-2, 0, 1), (F(-2), F(2)))  # two roots inside


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


@st.composite
def field_elements(draw):
    return K2.element([draw(small_rationals), draw(small_rationals)])


@settings(max_examples=60, deadline=None)
@given(field_elements(), field_elements(), field_elements())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == FieldElement.one(K2)


def test_mixed_field_rejected():
    K3 = sqrt_field(3)
    with pytest.raises(ExactNumError):
        _ = K2.alpha() + K3.alpha()


def test_field_equality_same_root():
    other = RealAlgebraicField(qpoly(-2, 0, 1), (F(1), F(142, 100)))
    assert other == K2
    assert K2.alpha().lift(other) == K2.alpha()


# ---------------------------------------------------------------------------
# factorization over Q(alpha)
# ---------------------------------------------------------------------------

def test_field_factor_splits_sqrt2():
    factors = factor_over_field(qpoly(-2, 0, 1), K2)
    assert sorted(f.degree for f, _ in factors) == [1, 1]
    roots = sorted((-f.coeffs[0] for f, _ in factors), key=lambda e: e.sign())
    assert roots[0] == -K2.alpha() and roots[1] == K2.alpha()


def test_field_factor_keeps_x2_plus_1():
    factors = factor_over_field(qpoly(1, 0, 1) * qpoly(2, 0, 1), K2)
    degs = sorted(f.degree for f, _ in factors)
    assert degs == [2, 2]  # x^2+1 stays irreducible, x^2+2 too (roots imaginary)


def test_field_factor_multiplicity():
    p = qpoly(-2, 0, 1) * qpoly(-2, 0, 1) * qpoly(3, 1)
    factors = factor_over_field(p, K2)
    by_deg = sorted((f.degree, m) for f, m in factors)
    assert by_deg == [(1, 1), (1, 2), (1, 2)]


def test_field_sqrt():
    assert field_sqrt(as_element(8, K2)) == 2 * K2.alpha()
    assert field_sqrt(as_element(3, K2)) is None
    assert field_sqrt(as_element(F(9, 4))).rational_part() == F(3, 2)
    assert field_sqrt(as_element(-1, K2)) is None
    half = as_element(F(1, 2), K2)
    assert field_sqrt(half * K2.alpha() * K2.alpha()) == as_element(1, K2)


# ---------------------------------------------------------------------------
# polynomial utility behaviour used elsewhere
# ---------------------------------------------------------------------------

def test_squarefree_decomposition():
    p = qpoly(1, -2, 1) * qpoly(-3, 1)  # (x-1)^2 (x-3)
    parts = squarefree_decomposition(p)
    assert sorted((q.degree, m) for q, m in parts) == [(1, 1), (1, 2)]


def test_poly_gcd_over_field():
    a = Poly.x_minus(K2.alpha())
    p = a * Poly.x_minus(as_element(1, K2))
    q = a * Poly.x_minus(as_element(2, K2))
    g = poly_gcd(p, q)
    assert g.degree == 1 and g.coeffs[0] == -K2.alpha()
