"""Lucas intervals and the recursive structure of base-phi expansions.

Lambda_{2n} = [L_{2n}, L_{2n+1}] and Lambda_{2n+1} = [L_{2n+1}+1, L_{2n+2}-1]
tile the integers >= 2; Xi_n = Lambda_{2n-1} u Lambda_{2n} is the block of N
whose negative part has length 2n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .beatty import DELTA, H, KAPPA
from .exact import lucas
from .numeration import TABLE_LIMIT, PhiExpansion, expansion_table, iter_expansions, phi_encode

__all__ = [
    "LucasInterval",
    "lambda_interval",
    "xi_interval",
    "locate",
    "lucas_border_expansions",
    "BASE_TABLE",
    "phi_encode_recursive",
    "SplittingWord",
    "canonical_splitting_lambda",
    "canonical_splitting_xi",
    "kappa_word",
    "central_block",
    "check_congruence",
    "congruence_modulus",
    "PropagationReport",
    "propagation_check",
    "block_matches",
    "SurgeryError",
]


class SurgeryError(AssertionError):
    """A word did not have the shape the recursion relies on."""


@dataclass(frozen=True)
class LucasInterval:
    index: int
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start + 1

    def __contains__(self, n: int) -> bool:
        return self.start <= n <= self.end

    def __iter__(self):
        return iter(range(self.start, self.end + 1))

    def shifted(self, s: int) -> tuple[int, int]:
        return (self.start + s, self.end + s)


def lambda_interval(m: int) -> LucasInterval:
    if m < 1:
        raise ValueError("Lucas intervals are indexed from 1")
    if m % 2 == 0:
        return LucasInterval(m, lucas(m), lucas(m + 1))
    return LucasInterval(m, lucas(m) + 1, lucas(m + 1) - 1)


def xi_interval(n: int) -> tuple[int, int]:
    """Xi_n = [L_{2n-1} + 1, L_{2n+1}]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return lucas(2 * n - 1) + 1, lucas(2 * n + 1)


def locate(n: int) -> int:
    """The unique m with n in Lambda_m."""
    if n < 2:
        raise ValueError("Lucas intervals start at 2")
    m = 1
    while n > lambda_interval(m).end:
        m += 1
    return m


def lucas_border_expansions(n: int) -> dict[int, PhiExpansion]:
    """Closed forms for beta at L_{2n}, L_{2n+1}, L_{2n+1}+1 and L_{2n+2}-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {
        lucas(2 * n): PhiExpansion("1" + "0" * (2 * n), "0" * (2 * n - 1) + "1"),
        lucas(2 * n + 1): PhiExpansion("1" + "01" * n, "01" * n),
        lucas(2 * n + 1) + 1: PhiExpansion("1" + "0" * (2 * n + 1), "10" * n + "01"),
        lucas(2 * n + 2) - 1: PhiExpansion("10" * (n + 1), "0" * (2 * n + 1) + "1"),
    }


BASE_TABLE: dict[int, PhiExpansion] = {
    n: PhiExpansion.parse(t)
    for n, t in enumerate(
        [
            ".",
            "1.",
            "10.01",
            "100.01",
            "101.01",
            "1000.1001",
            "1010.0001",
            "10000.0001",
            "10001.0001",
            "10010.0101",
            "10100.0101",
            "10101.0101",
        ]
    )
}


def _drop_prefix(word: str, prefix: str) -> str:
    if not word.startswith(prefix):
        raise SurgeryError(f"{word!r} does not start with {prefix!r}")
    return word[len(prefix) :]


def _drop_suffix(word: str, suffix: str) -> str:
    if not word.endswith(suffix):
        raise SurgeryError(f"{word!r} does not end with {suffix!r}")
    return word[: -len(suffix)]


def _piece(n: int) -> tuple[str, int, int]:
    """Which translated sub-interval of its Lucas interval n falls in.

    Returns (label, shift, parity) with label in 'abc'; n - shift lies in the
    untranslated interval.
    """
    m = locate(n)
    k = (m - 1) // 2 if m % 2 else (m - 2) // 2
    if m % 2:
        # Lambda_{2k+1} = (Lambda_{2k-1} + L_{2k}) u (Lambda_{2k-2} + L_{2k+1}) u (Lambda_{2k-1} + L_{2k+1})
        if n - lucas(2 * k) in lambda_interval(2 * k - 1):
            return "a", lucas(2 * k), 1
        if n - lucas(2 * k + 1) in lambda_interval(2 * k - 2):
            return "b", lucas(2 * k + 1), 1
        return "c", lucas(2 * k + 1), 1
    # Lambda_{2k+2} = (Lambda_{2k} + L_{2k+1}) u (Lambda_{2k-1} + L_{2k+2}) u (Lambda_{2k} + L_{2k+2})
    if n - lucas(2 * k + 1) in lambda_interval(2 * k):
        return "a", lucas(2 * k + 1), 0
    if n - lucas(2 * k + 2) in lambda_interval(2 * k - 1):
        return "b", lucas(2 * k + 2), 0
    return "c", lucas(2 * k + 2), 0


def phi_encode_recursive(n: int) -> PhiExpansion:
    """beta(n) by descending through the translated Lucas sub-intervals.

    Prefix/suffix cancellations such as 1000 (10)^-1 are carried out as
    checked word surgery; a shape mismatch raises :class:`SurgeryError`.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    # collect the path down to the base table, then rebuild outward
    path = []
    while n not in BASE_TABLE:
        label, shift, odd = _piece(n)
        path.append((label, odd))
        n -= shift
    left, right = BASE_TABLE[n].left, BASE_TABLE[n].right
    for label, odd in reversed(path):
        if label == "a":
            left = "1000" + _drop_prefix(left, "10")
            right = _drop_suffix(right, "01") + ("1001" if odd else "0001")
        elif label == "b":
            left = "100" + left
            right = _drop_suffix(right, "01") + "001001" if odd else right + "01"
        else:
            left = "10" + left
            right = _drop_suffix(right, "01") + "0001" if odd else right + "01"
    return PhiExpansion(left, right)


# ------------------------------------------------------------- splittings


@dataclass(frozen=True)
class SplittingWord:
    """Coding of an interval as adjacent translates of Lambda_3, Lambda_4, Lambda_5."""

    word: str
    pieces: tuple[tuple[int, int], ...]  # (base index, additive shift)

    def intervals(self) -> list[tuple[int, int]]:
        return [lambda_interval(b).shifted(s) for b, s in self.pieces]

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.pieces)

    def check_tiles(self, start: int, end: int) -> bool:
        """Pieces are adjacent, disjoint and cover exactly [start, end]."""
        pos = start
        for lo, hi in self.intervals():
            if lo != pos or hi < lo:
                return False
            pos = hi + 1
        return pos == end + 1


def _lambda_pieces(m: int) -> list[tuple[int, int]]:
    if m in (3, 4, 5):
        return [(m, 0)]
    if m < 3:
        raise ValueError("canonical splittings start at Lambda_3")
    outer, inner = _lambda_pieces(m - 2), _lambda_pieces(m - 3)
    s1, s2 = lucas(m - 1), lucas(m)
    return [(b, s + s1) for b, s in outer] + [(b, s + s2) for b, s in inner] + [(b, s + s2) for b, s in outer]


def canonical_splitting_lambda(m: int) -> SplittingWord:
    pieces = _lambda_pieces(m)
    return SplittingWord("".join(str(b) for b, _ in pieces), tuple(pieces))


def canonical_splitting_xi(n: int) -> SplittingWord:
    """Splitting of Xi_n, n >= 2, from the splittings of its two Lucas intervals.

    The word is cross-checked against delta(h^(n-2)(b)).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    pieces = _lambda_pieces(2 * n - 1) + _lambda_pieces(2 * n)
    word = "".join(str(b) for b, _ in pieces)
    expected = DELTA(H.iterate("b", n - 2))
    if word != expected:
        raise AssertionError(f"Xi_{n}: splitting {word} differs from delta(h^{n - 2}(b)) = {expected}")
    return SplittingWord(word, tuple(pieces))


def kappa_word(m: int) -> str:
    """kappa^n(4) for m = 2n + 4, kappa^n(5) for m = 2n + 5."""
    if m < 4:
        raise ValueError("m must be >= 4")
    return KAPPA.iterate("4" if m % 2 == 0 else "5", (m - 4) // 2)


# ------------------------------------------------------------ congruences


def central_block(left: str, right: str, q: int) -> tuple[str, str]:
    """d_{q-1}..d_0 and d_-1..d_-q, zero padded."""
    lw = left[-q:] if len(left) >= q else left.rjust(q, "0")
    rw = right[:q] if len(right) >= q else right.ljust(q, "0")
    return lw, rw


def _expansion(n: int) -> tuple[str, str]:
    if n <= TABLE_LIMIT:
        return expansion_table(n)[n]
    e = phi_encode(n)
    return e.left, e.right


def _members(intervals: Iterable[tuple[int, int]]) -> list[int]:
    return [n for lo, hi in intervals for n in range(lo, hi + 1)]


def check_congruence(gamma: tuple[int, int], delta: Sequence[tuple[int, int]], q: int) -> bool:
    """True when the j-th elements of gamma and of the concatenated delta
    share their central 2q-digit block, for every j.
    """
    g = list(range(gamma[0], gamma[1] + 1))
    d = _members(delta)
    if len(g) != len(d):
        raise ValueError(f"length mismatch: {len(g)} vs {len(d)}")
    return all(central_block(*_expansion(x), q) == central_block(*_expansion(y), q) for x, y in zip(g, d))


def congruence_modulus(gamma: tuple[int, int], delta: Sequence[tuple[int, int]], q_max: int = 12) -> int:
    """Largest q <= q_max for which the congruence holds (0 if none)."""
    best = 0
    for q in range(1, q_max + 1):
        if not check_congruence(gamma, delta, q):
            break
        best = q
    return best


# ------------------------------------------------------------ propagation


def block_matches(left: str, right: str, w: str, v: str) -> bool:
    """Does beta = left.right end in w before the point and start with v after it?"""
    if w:
        if len(left) >= len(w):
            if not left.endswith(w):
                return False
        elif left.rjust(len(w), "0") != w:
            return False
    if v:
        if len(right) >= len(v):
            if not right.startswith(v):
                return False
        elif right.ljust(len(v), "0") != v:
            return False
    return True


@dataclass
class PropagationReport:
    block: tuple[str, str]
    coupled_to: tuple[str, str] | None
    offset: int
    max_n: int
    hypothesis_holds: bool = True
    conclusion_holds: bool = True
    violations: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.hypothesis_holds and self.conclusion_holds


WINDOW = 17


def propagation_check(
    block: tuple[str, str],
    max_n: int,
    *,
    coupled_to: tuple[str, str] | None = None,
    offset: int = 0,
    q: int = 4,
) -> PropagationReport:
    """Falsification harness for the propagation principle.

    Absence form (``coupled_to`` is None): the central block does not occur for
    N = 1..17, and then for no N <= max_n.  Coupled form: the block occurs at N
    iff ``coupled_to`` occurs at N - offset, first on N = offset..offset+17,
    then on every N <= max_n.
    """
    for w, v in (block,) + ((coupled_to,) if coupled_to else ()):
        if len(w) > q or len(v) > q:
            raise ValueError(f"block {w}.{v} is longer than q={q} on one side")
    if coupled_to is not None and not 1 <= offset <= 4:
        raise ValueError("offset must be between 1 and 4")
    rep = PropagationReport(block, coupled_to, offset, max_n)
    first = 1 if coupled_to is None else offset
    last_window = first + WINDOW if coupled_to is not None else WINDOW
    recent: deque[tuple[str, str]] = deque(maxlen=offset + 1)
    for n, left, right in iter_expansions(max(max_n, last_window)):
        recent.append((left, right))
        if n < first:
            continue
        if coupled_to is None:
            ok = not block_matches(left, right, *block)
        else:
            ok = block_matches(left, right, *block) == block_matches(*recent[0], *coupled_to)
        if ok:
            continue
        if n <= last_window:
            rep.hypothesis_holds = False
        if n <= max_n:
            rep.conclusion_holds = False
            rep.violations.append(n)
            if len(rep.violations) >= 10:
                break
    return rep
