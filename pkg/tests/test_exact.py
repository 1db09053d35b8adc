from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qriver.errors import OutOfDomain, ParseError
from qriver.exact import (
    QuadraticSurd,
    parse_rational,
    parse_surd,
    squarefree_split,
    surd_approx,
    surd_cmp_rational,
    surd_conjugate,
    surd_floor,
    surd_recip_shift,
)

from oracles import decimal_floor, decimal_value, is_square, random_surd_pqd

S = QuadraticSurd.from_pqd


def test_floor_examples():
    assert surd_floor(S(1, 1, 6)) == 3
    neg = parse_surd("(-1-sqrt(6))/5")
    assert (neg.p, neg.d, neg.q) == (1, 6, -5)
    assert surd_floor(neg) == -1


@pytest.mark.parametrize("d", [0, 1, 4, 25, 36])
def test_square_radicand_rejected(d):
    with pytest.raises(OutOfDomain):
        S(5, 1, d)


def test_recip_shift_examples():
    assert surd_recip_shift(S(1, 1, 6), 3) == S(2, 2, 6)
    phi = S(1, 2, 5)
    assert surd_recip_shift(phi, 1) == phi
    assert surd_recip_shift(QuadraticSurd.sqrt(2), 1) == S(1, 1, 2)


def test_conjugate_and_cmp_examples():
    assert surd_conjugate(S(1, 1, 6)) == parse_surd("(1-sqrt(6))/1")
    assert surd_cmp_rational(S(1, 2, 5), Fraction(8, 5)) == 1
    assert surd_cmp_rational(QuadraticSurd.sqrt(2), Fraction(3, 2)) == -1


def test_canonical_encoding_is_unique():
    # (2+sqrt(6))/2 written three ways
    a = S(2, 2, 6)
    b = S(4, 4, 24)
    c = QuadraticSurd(Fraction(1), Fraction(1, 2), 6)
    assert a == b == c
    assert (a.p, a.q, a.d) == (b.p, b.q, b.d) == (2, 2, 6)
    assert hash(a) == hash(b)


def test_divisibility_invariant_restored_by_rescaling():
    s = S(1, 3, 7)  # 3 does not divide 7 - 1
    assert (s.d - s.p * s.p) % s.q == 0
    assert s == QuadraticSurd(Fraction(1, 3), Fraction(1, 3), 7)


def test_squarefree_split():
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(7 * 7 * 1000003) == (7, 1000003)
    assert squarefree_split(1) == (1, 1)


def test_arithmetic_collapses_to_rational():
    r = QuadraticSurd.sqrt(3)
    assert r * r == 3
    assert isinstance(r - r, Fraction) and r - r == 0
    assert (1 + r) * (1 - r) == -2


def test_cross_radicand_comparison():
    assert QuadraticSurd.sqrt(2) < QuadraticSurd.sqrt(3)
    assert QuadraticSurd.sqrt(2) + 1 > QuadraticSurd.sqrt(5)


def test_approx_is_display_only():
    assert surd_approx(QuadraticSurd.sqrt(2), 12) == "1.41421356237"


def test_parse_and_format_round_trip():
    for text in ["(1+sqrt(6))/1", "(-1+sqrt(6))/5", "(-1-sqrt(6))/5", "(5+sqrt(3))/2"]:
        assert str(parse_surd(text)) == text
    assert parse_surd("sqrt(2)") == QuadraticSurd.sqrt(2)
    assert parse_surd("1-sqrt(5)") == 1 - QuadraticSurd.sqrt(5)
    for bad in ["(1+sqrt(4))/1", "sqrt(x)", "(1+sqrt(2))/0", "1 sqrt(2)"]:
        with pytest.raises(ParseError):
            parse_surd(bad)


def test_parse_rational():
    assert parse_rational("10/7") == Fraction(10, 7)
    assert parse_rational("-3") == -3
    for bad in ["1.5", "3/0", "a/b", ""]:
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_floor_and_order_against_decimal_oracle(rng):
    for _ in range(1000):
        p, q, d = random_surd_pqd(rng)
        s = S(p, q, d)
        x = decimal_value(p, q, d)
        assert surd_floor(s) == decimal_floor(x)
        num, den = rng.randint(-3000, 3000), rng.randint(1, 500)
        with localcontext() as ctx:
            ctx.prec = 220
            want = 1 if x > Decimal(num) / Decimal(den) else -1
        assert surd_cmp_rational(s, Fraction(num, den)) == want


surds = st.builds(
    lambda p, q, d: (p, q, d),
    st.integers(-500, 500),
    st.integers(1, 60).flatmap(lambda k: st.sampled_from([k, -k])),
    st.integers(2, 5000).filter(lambda d: not is_square(d)),
)


@given(surds, st.integers(-50, 50))
def test_recip_shift_round_trip(pqd, m):
    s = S(*pqd)
    t = surd_recip_shift(s, m)
    assert m + 1 / t == s
    assert (t.d - t.p * t.p) % t.q == 0


@given(surds)
def test_equal_values_share_encoding(pqd):
    p, q, d = pqd
    k = 3
    assert S(p, q, d) == S(k * p, k * q, k * k * d)
    s = S(p, q, d)
    assert (s.p, s.q, s.d) == (S(k * p, k * q, k * k * d).p, S(k * p, k * q, k * k * d).q, S(k * p, k * q, k * k * d).d)
