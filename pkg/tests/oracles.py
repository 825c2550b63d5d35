"""Reference implementations that share no code with the package."""

from decimal import Decimal, getcontext

getcontext().prec = 120
SQRT5 = Decimal(5).sqrt()
PHI = (1 + SQRT5) / 2


def newton_isqrt(n: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            return x
        x = y


def fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = fib_pair(n // 2)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if n % 2 else (c, d)


def lucas_oracle(n: int) -> int:
    f, g = fib_pair(n)
    return 2 * g - f  # L_n = F_{n-1} + F_{n+1} = 2 F_{n+1} - F_n


def floor_phi_decimal(n: int) -> int:
    return int((n * PHI).to_integral_value(rounding="ROUND_FLOOR"))


def frac_phi(k: int) -> Decimal:
    x = k * PHI
    return x - x.to_integral_value(rounding="ROUND_FLOOR")


def greedy_phi(n: int) -> str:
    """beta(n) by greedy subtraction of powers of phi in high-precision decimals."""
    if n == 0:
        return "."
    top = 0
    while PHI ** (top + 1) <= n:
        top += 1
    rem = Decimal(n)
    digits = {}
    k = top
    eps = Decimal(10) ** -80
    while rem > eps:
        if PHI**k <= rem + eps:
            digits[k] = 1
            rem -= PHI**k
        k -= 1
        if k < -400:
            raise RuntimeError("greedy expansion did not terminate")
    lo = min(digits)
    left = "".join("1" if digits.get(i) else "0" for i in range(top, -1, -1))
    right = "".join("1" if digits.get(i) else "0" for i in range(-1, min(lo, 0) - 1, -1))
    return f"{left}.{right}"


def greedy_zeck(n: int) -> str:
    weights = [1, 2]
    while weights[-1] <= n:
        weights.append(weights[-1] + weights[-2])
    out = []
    for w in reversed(weights):
        if w <= n:
            out.append("1")
            n -= w
        else:
            out.append("0")
    return "".join(out).lstrip("0")
