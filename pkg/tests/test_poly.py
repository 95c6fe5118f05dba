from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from socle.poly import (
    GREVLEX,
    LEX,
    QQ,
    ParseError,
    PolyRing,
    Polynomial,
    PrimeField,
    RingMismatchError,
    elimination,
    field_from_spec,
    format_polynomial,
    ring_contract,
    ring_extend,
)

F2 = PrimeField(2)
FP = PrimeField(32003)
R_Q = PolyRing(QQ, ["x", "y", "z"])
R_P = PolyRing(FP, ["x", "y", "z"])


def P(text, R=R_Q):
    return R.parse(text)


# ---- examples


def test_add_cancels():
    assert P("x + y") + P("x - y") == P("2*x")


def test_add_zero_is_identity():
    p = P("x^2 - 3*y*z + 1/2")
    assert p + R_Q.zero == p


def test_characteristic_two_cancellation():
    R = PolyRing(F2, ["x", "y"])
    assert (R.parse("x^2") + R.parse("x^2")).is_zero()


def test_difference_of_squares():
    assert P("x + y") * P("x - y") == P("x^2 - y^2")


def test_mul_one_is_identity():
    p = P("x*y - z^2")
    assert p * R_Q.one == p


def test_expand_parameter_product():
    R = PolyRing(QQ, ["x", "y", "z", "w"])
    got = R.parse("x - z") * R.parse("y - w")
    assert got == R.parse("x*y - x*w - y*z + z*w")


def test_leading_terms():
    R = PolyRing(QQ, ["x", "y"])
    assert R.parse("x^2 + x*y + y^2").leading_term(GREVLEX)[0] == (2, 0)
    assert R.parse("x + y^2").leading_term(GREVLEX)[0] == (0, 2)
    assert R.parse("x + y^2").leading_term(LEX)[0] == (1, 0)


def test_leading_term_of_zero_raises():
    with pytest.raises(ValueError):
        R_Q.zero.leading_term()


def test_homogeneity_and_degree():
    R = PolyRing(QQ, ["x", "y", "z", "w"])
    p = R.parse("x*z + y*w")
    assert p.is_homogeneous() and p.total_degree() == 2
    assert not R.parse("x + x^2").is_homogeneous()
    assert R.parse("x + x^2").total_degree() == 2
    assert R.zero.is_homogeneous() and R.zero.total_degree() == 0


def test_ring_extend_prepends_variables():
    R = PolyRing(QQ, ["x", "y"])
    x = R.parse("x")
    e = ring_extend(x, 1)
    assert e.ring.nvars == 3
    assert list(e.terms) == [(0, 1, 0)]
    assert ring_extend(R.zero, 1).is_zero()
    xy = ring_extend(R.parse("x*y"), 2)
    assert list(xy.terms) == [(0, 0, 1, 1)]
    assert ring_contract(xy, 2, R) == R.parse("x*y")


def test_arity_mismatch():
    R2 = PolyRing(QQ, ["x", "y"])
    with pytest.raises(RingMismatchError):
        R2.parse("x") + R_Q.parse("x")
    with pytest.raises(RingMismatchError):
        R2.parse("x") * R_Q.parse("x")


def test_parser_errors():
    with pytest.raises(ParseError):
        R_Q.parse("2x")
    with pytest.raises(ParseError):
        R_Q.parse("x y")
    with pytest.raises(ParseError):
        R_Q.parse("x +")
    with pytest.raises(ParseError):
        R_Q.parse("u")
    with pytest.raises(ParseError) as info:
        R_Q.parse("x + $")
    assert info.value.column == 5


def test_parser_rationals_and_powers():
    p = R_Q.parse("1/2*x^2 - (y - z)^2")
    assert p.terms[(2, 0, 0)] == Fraction(1, 2)
    assert p.terms[(0, 1, 1)] == 2
    assert R_P.parse("1/2*x").terms[(1, 0, 0)] == FP.inv(2)


def test_format_roundtrip():
    p = R_Q.parse("x^2*y - 3/4*z + 7")
    assert R_Q.parse(format_polynomial(p)) == p


def test_field_specs():
    assert field_from_spec("rational") == QQ
    assert field_from_spec("prime 7") == PrimeField(7)
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        field_from_spec("reals")


def test_prime_field_normalizes():
    assert FP(-1) == 32002
    assert FP(Fraction(1, 2)) * 2 % 32003 == 1


# ---- properties

exps = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.integers(-5, 5)
terms = st.dictionaries(exps, coeffs, max_size=5)


def build(R, t):
    return Polynomial(R, {e: c for e, c in t.items()})


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    for R in (R_Q, R_P):
        p, q, r = build(R, a), build(R, b), build(R, c)
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == R.zero


@given(terms)
def test_canonical_form_idempotent(a):
    p = build(R_Q, a)
    assert all(c != 0 for c in p.terms.values())
    assert Polynomial(R_Q, dict(p.terms)) == p
    assert hash(Polynomial(R_Q, dict(p.terms))) == hash(p)


@given(exps, exps, exps)
def test_order_axioms(a, b, c):
    for order in (GREVLEX, LEX, elimination(1), elimination(2)):
        ka, kb = order.key(a), order.key(b)
        assert (ka < kb) + (kb < ka) + (a == b) == 1
        if ka < kb:
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            assert order.key(ac) < order.key(bc)
        assert order.key((0, 0, 0)) <= ka


@given(terms, terms)
def test_mod_p_image_matches(a, b):
    pq, qq = build(R_Q, a), build(R_Q, b)
    pp, qp = build(R_P, a), build(R_P, b)
    assert (pq * qq + pq).change_field(FP) == pp * qp + pp
    assert (pq - qq * qq).change_field(FP) == pp - qp * qp


@given(exps, exps)
def test_elimination_order_prefers_first_block(a, b):
    order = elimination(1)
    if a[0] > b[0]:
        assert order.key(a) > order.key(b)
