import math
from fractions import Fraction

import pytest

from filtmult.quadratic import SQRT2, QuadraticIrrational, ceil_sqrt, is_squarefree


def oracle_ceil_n_sqrt_s(n: int, s: int) -> int:
    """Independent integer-only oracle for ceil(n * sqrt(s))."""
    r = math.isqrt(s * n * n)
    return r if r * r == s * n * n else r + 1


def test_ceil_times_sqrt2_against_oracle():
    for n in range(0, 2000):
        assert SQRT2.ceil_times(n) == oracle_ceil_n_sqrt_s(n, 2)


def test_ceil_times_known_values():
    assert SQRT2.ceil_times(5) == 8
    assert SQRT2.ceil_times(12) == 17
    assert SQRT2.ceil_times(29) == 42
    assert SQRT2.ceil_times(70) == 99


def test_rational_floor_ceil():
    x = QuadraticIrrational.rational(Fraction(3, 2))
    assert x.floor() == 1
    assert x.ceil() == 2
    assert x.ceil_times(4) == 6
    y = QuadraticIrrational.rational(Fraction(-1, 2))
    assert y.floor() == -1
    assert y.ceil() == 0


def test_sign_mixed_terms():
    # 3 - 2*sqrt(2) > 0 since 9 > 8
    assert QuadraticIrrational(Fraction(3), Fraction(-2), 2).sign() == 1
    # 1 - sqrt(2) < 0
    assert QuadraticIrrational(Fraction(1), Fraction(-1), 2).sign() == -1
    assert QuadraticIrrational(Fraction(0), Fraction(0), 2).sign() == 0
    # 2*sqrt(2) - 3 + (3 - 2*sqrt(2)) = 0 exactly
    a = QuadraticIrrational(Fraction(-3), Fraction(2), 2)
    b = QuadraticIrrational(Fraction(3), Fraction(-2), 2)
    assert (a + b).sign() == 0


def test_arithmetic_in_field():
    golden = QuadraticIrrational(Fraction(1), Fraction(1), 2)
    sq = golden * golden
    assert sq.p == 3 and sq.q == 2 and sq.s == 2
    assert (golden - golden).sign() == 0
    assert golden.compare_fraction(Fraction(12, 5)) > 0  # 1 + 1.414 > 2.4
    assert golden.compare_fraction(Fraction(5, 2)) < 0


def test_comparisons_match_floats():
    values = [
        QuadraticIrrational(Fraction(p), Fraction(q), 2)
        for p in range(-3, 4)
        for q in range(-3, 4)
    ]
    for x in values:
        for y in values:
            assert (x < y) == (float(x) < float(y) - 1e-12 or (float(x) < float(y)))


def test_mixed_radicands_rejected():
    a = QuadraticIrrational.sqrt(2)
    b = QuadraticIrrational.sqrt(3)
    with pytest.raises(ValueError):
        _ = a + b
    # rational values combine with anything
    assert (a + QuadraticIrrational.rational(1)).s == 2


def test_squarefree_enforced():
    assert is_squarefree(10)
    assert not is_squarefree(12)
    with pytest.raises(ValueError):
        QuadraticIrrational(Fraction(0), Fraction(1), 12)
    # perfect squares collapse to rationals via the sqrt constructor
    assert QuadraticIrrational.sqrt(9).as_fraction() == 3


def test_json_round_trip():
    x = QuadraticIrrational(Fraction(1, 3), Fraction(-2, 7), 5)
    assert QuadraticIrrational.from_json(x.to_json()) == x


def test_ceil_sqrt():
    for k in range(0, 500):
        assert ceil_sqrt(k) == oracle_ceil_n_sqrt_s(1, k) if k else ceil_sqrt(k) == 0
    assert ceil_sqrt(25) == 5
    assert ceil_sqrt(2) == 2
