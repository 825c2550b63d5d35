"""Zeckendorf and base-phi codecs, carry normalization, and the skip embedding.

Words are plain strings over '0'/'1', most significant digit first.  A base-phi
expansion is kept as two words split at the radix point, ``left`` holding the
digits of phi^L .. phi^0 and ``right`` the digits of phi^-1 .. phi^R.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .exact import FIB, QuadInt, floor_phi, phi_power2

__all__ = [
    "is_admissible",
    "check_word",
    "zeck_encode",
    "zeck_decode",
    "PhiExpansion",
    "normalize",
    "phi_add_one",
    "phi_encode",
    "phi_decode",
    "beta_parts",
    "iter_expansions",
    "expansion_table",
    "d_number",
    "skip_count",
    "skip_count_closed_forms",
    "skip_divergences",
    "verify_zeckphi",
    "ZeckPhiReport",
    "NormalizationError",
]

_WORD = re.compile(r"[01]*\Z")
_RAW_WORD = re.compile(r"[012]*\Z")


class NormalizationError(RuntimeError):
    """Carry rewriting did not reach a fixpoint within the step budget."""


def is_admissible(word: str) -> bool:
    """Digits in {0, 1} and no factor '11'."""
    return _WORD.match(word) is not None and "11" not in word


def check_word(word: str) -> str:
    if not is_admissible(word):
        raise ValueError(f"not an admissible digit word: {word!r}")
    return word


# ---------------------------------------------------------------- Zeckendorf


def zeck_encode(n: int) -> str:
    """Greedy expansion of n over the weights F_{i+2} = 1, 2, 3, 5, 8, ..."""
    if n < 0:
        raise ValueError("zeck_encode expects n >= 0")
    if n == 0:
        return ""
    k = 0
    while FIB.shifted(k + 1) <= n:
        k += 1
    digits = []
    for i in range(k, -1, -1):
        w = FIB.shifted(i)
        if w <= n:
            digits.append("1")
            n -= w
        else:
            digits.append("0")
    return "".join(digits)


def zeck_decode(word: str) -> int:
    """Inverse of :func:`zeck_encode`; leading zeros are ignored."""
    check_word(word)
    m = len(word)
    return sum(FIB.shifted(m - 1 - i) for i, c in enumerate(word) if c == "1")


# ----------------------------------------------------------------- base phi


@dataclass(frozen=True)
class PhiExpansion:
    """Digits d_L..d_0 (``left``) and d_-1..d_R (``right``) of a base-phi word.

    Raw instances may hold the digit 2 and redundant outer zeros; use
    :func:`normalize` to obtain the admissible form.
    """

    left: str = ""
    right: str = ""

    def __post_init__(self) -> None:
        if not (_RAW_WORD.match(self.left) and _RAW_WORD.match(self.right)):
            raise ValueError(f"bad digits in expansion {self.left!r}.{self.right!r}")

    @classmethod
    def parse(cls, text: str, *, raw: bool = False) -> PhiExpansion:
        """Read '1000.1001', '1.', '.01' or a bare integer part such as '101'."""
        left, _, right = text.strip().partition(".")
        pattern = _RAW_WORD if raw else _WORD
        if not (pattern.match(left) and pattern.match(right)) or text.count(".") > 1:
            raise ValueError(f"cannot parse digit word {text!r}")
        e = cls(left, right)
        if not raw and not e.is_admissible():
            raise ValueError(f"inadmissible expansion {text!r}")
        return e

    def __str__(self) -> str:
        return f"{self.left}.{self.right}"

    def is_admissible(self) -> bool:
        return is_admissible(self.left + self.right)

    def canonical(self) -> PhiExpansion:
        return PhiExpansion(self.left.lstrip("0"), self.right.rstrip("0"))

    def digit_map(self) -> dict[int, int]:
        """Nonzero digits keyed by exponent."""
        out = {}
        top = len(self.left) - 1
        for i, c in enumerate(self.left):
            if c != "0":
                out[top - i] = int(c)
        for i, c in enumerate(self.right):
            if c != "0":
                out[-1 - i] = int(c)
        return out

    @classmethod
    def from_digit_map(cls, digits: dict[int, int]) -> PhiExpansion:
        nz = [e for e, v in digits.items() if v]
        if not nz:
            return cls()
        hi, lo = max(max(nz), 0), min(min(nz), 0)
        left = "".join(str(digits.get(e, 0)) for e in range(hi, -1, -1)).lstrip("0")
        right = "".join(str(digits.get(e, 0)) for e in range(-1, lo - 1, -1)).rstrip("0")
        return cls(left, right)

    def value2(self) -> QuadInt:
        """Twice the exact value, as an element of Z[sqrt 5]."""
        total = QuadInt(0, 0)
        for e, v in self.digit_map().items():
            total = total + phi_power2(e) * v
        return total

    def positive_part_value2(self) -> QuadInt:
        return PhiExpansion(self.left, "").value2()

    @property
    def L(self) -> int:
        """Exponent of the leading digit (-1 for the empty word)."""
        return len(self.left.lstrip("0")) - 1

    @property
    def R(self) -> int:
        """Exponent of the last digit (0 when there is no negative part)."""
        return -len(self.right.rstrip("0"))


def normalize(raw: PhiExpansion, max_sweeps: int | None = None) -> PhiExpansion:
    """Rewrite a raw expansion (digits <= 2, or more) to its admissible form.

    Two value-preserving rules are applied until neither fires:

    * double carry:       2 phi^n  -> phi^(n+1) + phi^(n-2)
    * golden mean shift:  phi^n + phi^(n+1) -> phi^(n+2)

    Each sweep runs from the most significant digit down and clears every
    digit >= 2 before any shift is attempted.
    """
    d = raw.digit_map()
    budget = max_sweeps if max_sweeps is not None else 50 * (len(raw.left) + len(raw.right)) + 200
    for _ in range(budget):
        big = sorted((e for e, v in d.items() if v >= 2), reverse=True)
        if big:
            for e in big:
                v = d.get(e, 0)
                if v >= 2:
                    d[e] = v - 2
                    d[e + 1] = d.get(e + 1, 0) + 1
                    d[e - 2] = d.get(e - 2, 0) + 1
            continue
        shifted = False
        for e in sorted(d, reverse=True):
            if d.get(e, 0) and d.get(e - 1, 0):
                d[e] -= 1
                d[e - 1] -= 1
                d[e + 1] = d.get(e + 1, 0) + 1
                shifted = True
        if not shifted:
            return PhiExpansion.from_digit_map(d)
    raise NormalizationError(f"no fixpoint after {budget} sweeps for {raw}")


def phi_add_one(e: PhiExpansion) -> PhiExpansion:
    """beta(N) -> beta(N + 1): bump the units digit, then normalize."""
    d = e.digit_map()
    d[0] = d.get(0, 0) + 1
    return normalize(PhiExpansion.from_digit_map(d))


_ASCII = bytes.maketrans(bytes(range(10)), b"0123456789")


class _Register:
    """Mutable digit buffer for fast repeated carries.

    ``buf`` is most-significant first; ``buf[off]`` holds the digit of phi^0.
    Rewrites are applied locally from a work stack, so one increment touches
    only the few digits near the carry.
    """

    MARGIN = 24

    def __init__(self, e: PhiExpansion | None = None) -> None:
        e = e or PhiExpansion()
        left = e.left or "0"
        m = self.MARGIN
        self.buf = bytearray(m) + bytearray(int(c) for c in left + e.right) + bytearray(m)
        self.off = m + len(left) - 1
        self.top = self.off
        self.bot = self.off
        self._trim(0, len(self.buf) - 1)

    def _trim(self, lo: int, hi: int) -> None:
        buf = self.buf
        t = min(self.top, lo)
        while t < self.off and buf[t] == 0:
            t += 1
        b = max(self.bot, hi)
        while b > self.off and buf[b] == 0:
            b -= 1
        self.top, self.bot = t, b

    def _reserve(self) -> None:
        m = self.MARGIN
        if self.top < m:
            self.buf[0:0] = bytearray(2 * m)
            self.off += 2 * m
            self.top += 2 * m
            self.bot += 2 * m
        if len(self.buf) - 1 - self.bot < m:
            self.buf.extend(bytearray(2 * m))

    def _fix(self, stack: list[int], budget: int) -> None:
        d = self.buf
        lo, hi = self.top, self.bot
        steps = 0
        while stack:
            i = stack.pop()
            v = d[i]
            if not v:
                continue
            steps += 1
            if steps > budget:
                raise NormalizationError("carry rewriting did not terminate")
            if v >= 2:
                d[i] = v - 2
                d[i - 1] += 1
                d[i + 2] += 1
                stack.append(i + 2)
                stack.append(i - 1)
                stack.append(i)
                if i - 1 < lo:
                    lo = i - 1
                if i + 2 > hi:
                    hi = i + 2
            elif d[i - 1]:
                d[i] = 0
                d[i - 1] -= 1
                d[i - 2] += 1
                stack.append(i - 1)
                stack.append(i - 2)
                if i - 2 < lo:
                    lo = i - 2
            elif d[i + 1]:
                d[i] = 0
                d[i + 1] -= 1
                d[i - 1] += 1
                stack.append(i + 1)
                stack.append(i - 1)
                if i - 1 < lo:
                    lo = i - 1
        if lo < 2 or hi > len(d) - 3:
            raise NormalizationError("carry escaped the register margin")
        self._trim(lo, hi)

    def add_one(self) -> None:
        self._reserve()
        self.buf[self.off] += 1
        self._fix([self.off], 10_000)

    def double(self) -> None:
        """Replace the value x by 2x."""
        width = self.bot - self.top + 1
        while self.top < width + self.MARGIN or len(self.buf) - self.bot < width + self.MARGIN:
            self._grow(width + self.MARGIN)
        stack = []
        for i in range(self.top, self.bot + 1):
            if self.buf[i]:
                self.buf[i] *= 2
                stack.append(i)
        stack.reverse()
        self._fix(stack, 1_000_000)

    def _grow(self, k: int) -> None:
        self.buf[0:0] = bytearray(k)
        self.buf.extend(bytearray(k))
        self.off += k
        self.top += k
        self.bot += k

    def words(self) -> tuple[str, str]:
        buf, off = self.buf, self.off
        left = buf[self.top : off + 1].translate(_ASCII).decode() if buf[self.top] else ""
        right = buf[off + 1 : self.bot + 1].translate(_ASCII).decode()
        return left, right

    def expansion(self) -> PhiExpansion:
        return PhiExpansion(*self.words())


def iter_expansions(stop: int, start: int = 0, seed: PhiExpansion | None = None) -> Iterator[tuple[int, str, str]]:
    """Yield (N, left, right) for start <= N <= stop by repeated addition of 1.

    ``seed`` must be beta(start) when start > 0; otherwise it is computed.
    """
    if seed is None:
        seed = phi_encode(start) if start else PhiExpansion()
    reg = _Register(seed)
    n = start
    if n <= stop:
        yield (n, *reg.words())
    while n < stop:
        reg.add_one()
        n += 1
        yield (n, *reg.words())


_TABLE: list[tuple[str, str]] = []
_TABLE_REG: _Register | None = None
TABLE_LIMIT = 400_000


def expansion_table(max_n: int = 0) -> list[tuple[str, str]]:
    """Shared list of (left, right) for N = 0, 1, ..., at least max_n.

    Grown lazily and kept for reuse; callers must not mutate it.  Requests
    beyond TABLE_LIMIT should stream with :func:`iter_expansions` instead.
    """
    global _TABLE_REG
    if max_n > TABLE_LIMIT:
        raise ValueError(f"table limited to N <= {TABLE_LIMIT}; stream instead")
    if _TABLE_REG is None:
        _TABLE_REG = _Register()
        _TABLE.append(_TABLE_REG.words())
    while len(_TABLE) <= max_n:
        _TABLE_REG.add_one()
        _TABLE.append(_TABLE_REG.words())
    return _TABLE


def phi_encode(n: int, method: str = "doubling") -> PhiExpansion:
    """The admissible base-phi expansion beta(n).

    ``method="add-one"`` counts up from beta(0) one unit at a time (the
    reference path, linear in n); ``"doubling"`` walks the binary digits of n,
    doubling and incrementing with the same carry rules.
    """
    if n < 0:
        raise ValueError("phi_encode expects n >= 0")
    if method == "add-one":
        e = PhiExpansion()
        for _ in range(n):
            e = phi_add_one(e)
        return e
    if method != "doubling":
        raise ValueError(f"unknown method {method!r}")
    reg = _Register()
    for bit in bin(n)[2:] if n else "":
        reg.double()
        if bit == "1":
            reg.add_one()
    return reg.expansion()


def phi_decode(e: PhiExpansion | str) -> int:
    """Recover N from beta(N) along two independent exact paths.

    The full digit sum must be an integer, and it must equal the ceiling of
    the positive part alone.
    """
    if isinstance(e, str):
        e = PhiExpansion.parse(e)
    if not e.is_admissible():
        raise ValueError(f"inadmissible expansion {e}")
    total = e.value2()
    if total.b != 0 or total.a % 2:
        raise ValueError(f"expansion {e} does not represent an integer")
    n = total.a // 2
    ceiling = e.positive_part_value2().ceil_half()
    if ceiling != n:
        raise ValueError(f"ceiling of positive part of {e} is {ceiling}, value is {n}")
    return n


def beta_parts(n: int) -> tuple[str, str, str | None]:
    """(beta+, beta-, gamma-) of n; gamma- is None for n < 2."""
    e = phi_encode(n)
    gamma = None
    if n >= 2:
        if not e.right.endswith("01"):
            raise AssertionError(f"beta-({n}) = {e.right} does not end in 01")
        gamma = e.right[:-2]
    return e.left, e.right, gamma


# ------------------------------------------------------ embedding into Z(N)


def d_number(k: int) -> int:
    """V(k) = 3 floor(k phi) + k + 1, the positions of the block 00.1."""
    return 3 * floor_phi(k) + k + 1


def _count_below(n: int, f) -> int:
    """#{k >= 1 : f(k) < n} for increasing f."""
    lo, hi = 0, 1
    while f(hi) < n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) < n:
            lo = mid
        else:
            hi = mid
    return lo


def skip_count(n: int) -> int:
    """S(n) = #{k >= 1 : V(k) < n}: Zeckendorf words skipped before beta+(n)."""
    if n < 0:
        raise ValueError("skip_count expects n >= 0")
    return _count_below(n, d_number)


def skip_count_closed_forms(n: int) -> tuple[int | None, int]:
    """Two closed formulas for S(n); they drift from the operational count.

    First: max{k >= 0 : V(k) <= n} - 1 (None when the set is empty).
    Second: max{k >= 0 : 3 floor(k phi) + k <= n}.
    """
    first = _count_below(n + 1, d_number) - 1 if d_number(0) <= n else None
    second = _count_below(n + 1, lambda k: 3 * floor_phi(k) + k)
    return first, second


def skip_divergences(max_n: int) -> list[tuple[int, int, int | None, int]]:
    """Rows (n, S(n), first formula, second formula) where they disagree."""
    out = []
    for n in range(max_n + 1):
        s = skip_count(n)
        a, b = skip_count_closed_forms(n)
        if a != s or b != s:
            out.append((n, s, a, b))
    return out


@dataclass
class ZeckPhiReport:
    max_n: int
    checked: int = 0
    counterexample: tuple[int, str, str] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_zeckphi(max_n: int) -> ZeckPhiReport:
    """Check beta+(N) == Z(N + S(N)) for 0 <= N <= max_n."""
    rep = ZeckPhiReport(max_n)
    k = 1
    skips = 0
    for n, left, _ in iter_expansions(max_n):
        while d_number(k) < n:
            skips += 1
            k += 1
        z = zeck_encode(n + skips)
        rep.checked += 1
        if left != z:
            rep.counterexample = (n, left, z)
            break
    return rep
