import random
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import PHI, SQRT5, fib_pair, floor_phi_decimal, frac_phi, lucas_oracle, newton_isqrt
from phibase.exact import (
    FIB,
    GT,
    LT,
    QuadInt,
    fib,
    fib_signed,
    floor_phi,
    frac_phi_compare,
    is_lucas,
    isqrt,
    lucas,
    lucas_signed,
    phi_power2,
    shifted_fib,
)


def test_isqrt_small():
    assert isqrt(0) == 0
    assert isqrt(80) == 8
    assert isqrt(81) == 9
    with pytest.raises(ValueError):
        isqrt(-1)


def test_isqrt_large_against_newton():
    n = 5 * (10**12) ** 2
    k = isqrt(n)
    assert k == newton_isqrt(n)
    assert k * k <= n < (k + 1) ** 2


@given(st.integers(min_value=0, max_value=10**60))
def test_isqrt_matches_newton(n):
    assert isqrt(n) == newton_isqrt(n)


def test_fib_lucas_seeds_and_list():
    assert (fib(0), fib(1)) == (0, 1)
    assert [lucas(k) for k in range(13)] == [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322]
    assert [shifted_fib(i) for i in range(6)] == [1, 2, 3, 5, 8, 13]


def test_fib_lucas_against_fast_doubling():
    for n in range(0, 300):
        assert fib(n) == fib_pair(n)[0]
        assert lucas(n) == lucas_oracle(n)


def test_fib_identities():
    for n in range(1, 200):
        assert lucas(n) == fib(n - 1) + fib(n + 1)
    for n in range(0, 41):
        assert fib(n) + 3 * fib(n + 1) == lucas(n + 2)
    assert lucas(93) > 2**64  # no machine-word limits


def test_signed_indices():
    for k in range(0, 30):
        assert lucas_signed(-k) == (-1) ** k * lucas(k)
        assert fib_signed(-k) == (-1) ** (k + 1) * fib(k)


@given(st.integers(min_value=-60, max_value=60))
def test_phi_power2_matches_decimal(e):
    q = phi_power2(e)
    assert abs((Decimal(q.a) + Decimal(q.b) * SQRT5) / 2 - PHI**e) < Decimal(10) ** -60


@given(st.integers(-(10**30), 10**30), st.integers(-(10**30), 10**30))
def test_quadint_sign_against_decimal(a, b):
    x = QuadInt(a, b)
    approx = Decimal(a) + Decimal(b) * SQRT5
    if a == 0 and b == 0:
        assert x.sign() == 0
    else:
        assert x.sign() == (1 if approx > 0 else -1)


@given(st.integers(-(10**12), 10**12), st.integers(-(10**12), 10**12))
def test_quadint_floor_ceil(a, b):
    x = QuadInt(a, b)
    approx = Decimal(a) + Decimal(b) * SQRT5
    assert x.floor() == int(approx.to_integral_value(rounding="ROUND_FLOOR"))
    assert x.ceil() == int(approx.to_integral_value(rounding="ROUND_CEILING"))
    assert x.floor_half() == int((approx / 2).to_integral_value(rounding="ROUND_FLOOR"))
    assert x.ceil_half() == int((approx / 2).to_integral_value(rounding="ROUND_CEILING"))


@given(
    st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
    st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
)
def test_quadint_ring(p, q):
    x, y = QuadInt(*p), QuadInt(*q)
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x + y - y == x
    assert (x * y) == (y * x)


def test_floor_phi_examples():
    assert floor_phi(1) == 1
    assert floor_phi(2) == 3
    assert floor_phi(3) == 4


def test_floor_phi_bracketing_exact():
    for n in range(1, 100_001):
        k = floor_phi(n)
        # k <= n phi < k + 1  <=>  2k - n <= n sqrt5 < 2k + 2 - n
        assert QuadInt(2 * k - n, -n).sign() < 0
        assert QuadInt(2 * k + 2 - n, -n).sign() > 0


@given(st.integers(min_value=1, max_value=10**40))
def test_floor_phi_against_decimal(n):
    assert floor_phi(n) == floor_phi_decimal(n)


def test_wythoff_complementarity():
    lower = {floor_phi(n) for n in range(1, 10_001)}
    upper = {floor_phi(n) + n for n in range(1, 10_001)}
    assert not lower & upper
    bound = min(max(lower), max(upper))
    assert {x for x in lower | upper if x <= bound} == set(range(1, bound + 1))


def test_frac_compare_examples():
    assert frac_phi_compare(1, 2) == GT
    # the listed chain 0 < {5t} < {2t} < {7t} < ... holds for multiples of phi
    chain = [5, 2, 7, 4, 1, 6, 3]
    assert all(frac_phi_compare(a, b) == LT for a, b in zip(chain, chain[1:]))
    # with the true conjugate tau = (1 - sqrt5)/2 the chain is reversed
    assert all(frac_phi_compare(a, b, conjugate=True) == GT for a, b in zip(chain, chain[1:]))
    with pytest.raises(ValueError):
        frac_phi_compare(3, 3)


def test_frac_compare_against_decimal():
    rng = random.Random(7)
    for _ in range(2000):
        i, j = rng.sample(range(1, 10**9), 2)
        expected = LT if frac_phi(i) < frac_phi(j) else GT
        assert frac_phi_compare(i, j) == expected


def test_frac_compare_total_order():
    n = 200
    cmp = {(i, j): frac_phi_compare(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    for (i, j), c in cmp.items():
        assert cmp[j, i] == -c
    order = sorted(range(1, n + 1), key=frac_phi)
    for a in range(n):
        for b in range(a + 1, n):
            assert cmp[order[a], order[b]] == LT


def test_is_lucas():
    lucas_set = {lucas(k) for k in range(40)}
    assert [x for x in range(0, 400) if is_lucas(x)] == sorted(x for x in lucas_set if x < 400)


def test_cache_grows():
    assert FIB.F(500) == fib_pair(500)[0]
