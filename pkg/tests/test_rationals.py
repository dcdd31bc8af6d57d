import math
from fractions import Fraction as F

import pytest

from shapecert.rationals import (CertificationError, RatInterval, Tri,
                                 certified_less, decimal_string, format_rational,
                                 interval_sqrt, parse_rational, sqrt_bounds)

from conftest import rational_rng


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("3 / 4") == F(3, 4)
    assert parse_rational("-226433 / 625000") == F(-226433, 625000)
    assert parse_rational("0.625") == F(5, 8)
    assert parse_rational(7) == F(7)
    assert parse_rational(F(2, 3)) == F(2, 3)


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("1//2")
    with pytest.raises(ValueError):
        parse_rational("")
    with pytest.raises(TypeError):
        parse_rational(0.5)
    with pytest.raises(TypeError):
        parse_rational(True)


def test_format_rational():
    assert format_rational(F(3, 4)) == "3 / 4"
    assert format_rational(F(8, 4)) == "2"
    assert format_rational(F(-1, 3)) == "-1 / 3"
    assert parse_rational(format_rational(F(-22, 7))) == F(-22, 7)


def test_decimal_string():
    assert decimal_string(F(1, 2), 8) == "0.50000000"
    assert decimal_string(F(1, 3), 5) == "0.33333"
    assert decimal_string(F(-226433, 625000), 8) == "-0.36229280"
    assert decimal_string(F(3), 0) == "3"
    with pytest.raises(ValueError):
        decimal_string(F(1), -1)


def test_interval_validation_and_basics():
    with pytest.raises(ValueError):
        RatInterval(F(1), F(0))
    iv = RatInterval(F(-1, 2), F(3, 4))
    assert iv.contains(F(0)) and iv.contains(F(3, 4))
    assert not iv.contains(F(1))
    assert iv.width == F(5, 4)
    pt = RatInterval.point(F(2, 3))
    assert pt.lo == pt.hi == F(2, 3)


def test_interval_arithmetic_known_values():
    a = RatInterval(F(1), F(2))
    b = RatInterval(F(-3), F(4))
    assert a + b == RatInterval(F(-2), F(6))
    assert a - b == RatInterval(F(-3), F(5))
    assert a * b == RatInterval(F(-6), F(8))
    assert -a == RatInterval(F(-2), F(-1))
    # scalar coercion on both sides
    assert 16 * a == RatInterval(F(16), F(32))
    assert a + F(1, 2) == RatInterval(F(3, 2), F(5, 2))
    assert 1 - a == RatInterval(F(-1), F(0))


def test_interval_division():
    a = RatInterval(F(1), F(2))
    d = RatInterval(F(4), F(8))
    assert a / d == RatInterval(F(1, 8), F(1, 2))
    assert a / RatInterval(F(-2), F(-1)) == RatInterval(F(-2), F(-1, 2))
    with pytest.raises(ZeroDivisionError):
        a / RatInterval(F(-1), F(1))
    with pytest.raises(ZeroDivisionError):
        a / RatInterval(F(0), F(1))


def test_interval_ops_contain_pointwise_results():
    # For random operand pairs, the interval result must contain the value of
    # the operation at sampled member points.
    draw = rational_rng(42)
    for _ in range(200):
        a_ends = sorted((draw(), draw()))
        b_ends = sorted((draw(), draw()))
        a = RatInterval(*a_ends)
        b = RatInterval(*b_ends)
        for ta, tb in ((0, 0), (0, 1), (1, 0), (1, 1)):
            x = a.lo if ta == 0 else a.hi
            y = b.lo if tb == 0 else b.hi
            assert (a + b).contains(x + y)
            assert (a - b).contains(x - y)
            assert (a * b).contains(x * y)
            if not (b.lo <= 0 <= b.hi):
                assert (a / b).contains(x / y)


def test_sqrt_bounds_exact_cases():
    assert sqrt_bounds(4, 6) == RatInterval(F(2), F(2))
    assert sqrt_bounds(0, 8) == RatInterval(F(0), F(0))
    assert sqrt_bounds(F(1, 4), 8) == RatInterval(F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        sqrt_bounds(-1, 8)


def test_sqrt_bounds_known_irrational():
    # sqrt(3) = 1.7320508075..., so the 8-digit floor/ceil grid gives these.
    iv = sqrt_bounds(3, 8)
    assert iv.lo == F(173205080, 10**8)
    assert iv.hi == F(173205081, 10**8)


def test_sqrt_bounds_soundness_random():
    draw = rational_rng(7)
    for _ in range(300):
        x = abs(draw(0, 10**6, 10**6))
        for digits in (4, 8):
            iv = sqrt_bounds(x, digits)
            assert iv.lo >= 0
            assert iv.lo**2 <= x <= iv.hi**2
            assert iv.width <= F(8, 10**digits)  # 2 grid steps + widening slack


def test_sqrt_bounds_huge_values_use_integer_fallback():
    # float(x) overflows here; the isqrt seed path must still certify.
    x = F(10) ** 700
    iv = sqrt_bounds(x, 2)
    assert iv.lo == F(10) ** 350
    assert iv.lo**2 <= x <= iv.hi**2
    assert iv.width <= F(1, 100)
    y = F(10) ** 701
    iv = sqrt_bounds(y, 3)
    assert iv.lo**2 <= y <= iv.hi**2


def test_interval_sqrt():
    iv = interval_sqrt(RatInterval(F(4), F(9)), 8)
    assert iv == RatInterval(F(2), F(3))
    with pytest.raises(ValueError):
        interval_sqrt(RatInterval(F(-1), F(1)), 8)
    # containment for random non-negative intervals
    draw = rational_rng(3)
    for _ in range(50):
        ends = sorted((abs(draw(0, 100)), abs(draw(0, 100))))
        src = RatInterval(*ends)
        out = interval_sqrt(src, 6)
        assert out.lo**2 <= src.lo and src.hi <= out.hi**2


def test_certified_less_tristate():
    a = RatInterval(F(0), F(1))
    b = RatInterval(F(2), F(3))
    assert certified_less(a, b) is Tri.TRUE
    assert certified_less(b, a) is Tri.FALSE
    assert certified_less(a, RatInterval(F(1, 2), F(2))) is Tri.UNKNOWN
    # touching endpoints: x < y is not provable, x >= y is
    assert certified_less(a, RatInterval(F(1), F(2))) is Tri.UNKNOWN
    assert certified_less(RatInterval(F(1), F(2)), a) is Tri.FALSE


def test_certification_error_is_arithmetic_error():
    assert issubclass(CertificationError, ArithmeticError)
