"""Exact arithmetic in Z[sqrt 5], Fibonacci/Lucas numbers, and floors of n*phi.

Nothing in this package uses floating point. Half-integers such as
phi = (1 + sqrt 5)/2 are handled by callers that work with twice the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "QuadInt",
    "FibCache",
    "FIB",
    "isqrt",
    "fib",
    "lucas",
    "shifted_fib",
    "floor_phi",
    "frac_phi_compare",
    "LT",
    "GT",
    "phi_power2",
    "is_lucas",
]


def isqrt(n: int) -> int:
    """Largest k with k*k <= n."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


@dataclass(frozen=True, slots=True)
class QuadInt:
    """The real number a + b*sqrt(5) with integer a, b."""

    a: int
    b: int = 0

    def __add__(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.a + other, self.b)
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        return self + (-other)

    def __rsub__(self, other: int) -> QuadInt:
        return (-self) + other

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other)
        return QuadInt(self.a * other.a + 5 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadInt:
        return QuadInt(self.a, -self.b)

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(5), decided by integer comparisons only."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 5 b^2 (never equal, sqrt 5 is irrational)
        if a * a > 5 * b * b:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def floor(self) -> int:
        s = isqrt(5 * self.b * self.b)
        if self.b >= 0:
            return self.a + s
        return self.a - s - 1

    def ceil(self) -> int:
        return -(-self).floor()

    def floor_half(self) -> int:
        """floor((a + b*sqrt 5) / 2)."""
        return self.floor() // 2

    def ceil_half(self) -> int:
        return -((-self).floor() // 2)

    def __lt__(self, other: QuadInt | int) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: QuadInt | int) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: QuadInt | int) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: QuadInt | int) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt5"


class FibCache:
    """Growable read-only tables of F_n and L_n.

    ``shifted(i)`` is the Zeckendorf weight F_{i+2} (1, 2, 3, 5, ...).
    """

    def __init__(self, size: int = 100) -> None:
        self.fib: list[int] = [0, 1]
        self.lucas: list[int] = [2, 1]
        self._grow(size)

    def _grow(self, size: int) -> None:
        f, lu = self.fib, self.lucas
        while len(f) <= size:
            f.append(f[-1] + f[-2])
            lu.append(lu[-1] + lu[-2])

    def F(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be >= 0")
        if n >= len(self.fib):
            self._grow(2 * n)
        return self.fib[n]

    def L(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be >= 0")
        if n >= len(self.lucas):
            self._grow(2 * n)
        return self.lucas[n]

    def shifted(self, i: int) -> int:
        return self.F(i + 2)


FIB = FibCache()


def fib(n: int) -> int:
    return FIB.F(n)


def lucas(n: int) -> int:
    return FIB.L(n)


def shifted_fib(i: int) -> int:
    return FIB.shifted(i)


def fib_signed(n: int) -> int:
    """F_n for any integer n, using F_{-k} = (-1)^(k+1) F_k."""
    if n >= 0:
        return FIB.F(n)
    k = -n
    return FIB.F(k) if k % 2 else -FIB.F(k)


def lucas_signed(n: int) -> int:
    """L_n for any integer n, using L_{-k} = (-1)^k L_k."""
    if n >= 0:
        return FIB.L(n)
    k = -n
    return FIB.L(k) if k % 2 == 0 else -FIB.L(k)


def phi_power2(e: int) -> QuadInt:
    """2 * phi**e as an element of Z[sqrt 5] (valid for negative e too)."""
    return QuadInt(lucas_signed(e), fib_signed(e))


def floor_phi(n: int) -> int:
    """floor(n * phi), exact: (n + isqrt(5 n^2)) // 2."""
    if n < 0:
        raise ValueError("floor_phi expects n >= 0")
    return (n + isqrt(5 * n * n)) // 2


LT, GT = -1, 1


def frac_phi_compare(i: int, j: int, *, conjugate: bool = False) -> int:
    """Compare the fractional parts {i*phi} and {j*phi}.

    Returns -1 (LT) or +1 (GT).  With ``conjugate=True`` the comparison is made
    for {i*tau}, {j*tau} with tau = (1 - sqrt 5)/2; since {k*tau} = 1 - {k*phi}
    for k >= 1 this simply reverses the answer.
    """
    if i == j:
        raise ValueError("fractional parts of equal multiples are equal")
    if i < 1 or j < 1:
        raise ValueError("frac_phi_compare expects positive integers")
    # 2({i phi} - {j phi}) = (i - j)(1 + sqrt 5) - 2(floor(i phi) - floor(j phi))
    d = i - j
    s = QuadInt(d - 2 * (floor_phi(i) - floor_phi(j)), d).sign()
    return -s if conjugate else s


def is_lucas(x: int) -> bool:
    """True if x is one of 2, 1, 3, 4, 7, 11, ..."""
    k = 0
    while True:
        v = lucas(k)
        if v == x:
            return True
        if k >= 2 and v > x:
            return False
        k += 1
