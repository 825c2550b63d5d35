"""Generalized Beatty sequences n -> p*floor(n*phi) + q*n + r, and word morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exact import floor_phi, is_lucas

__all__ = [
    "GBSParams",
    "V",
    "V0",
    "A",
    "B",
    "gbs_terms",
    "gbs_compose_A",
    "gbs_compose_B",
    "fibonacci_word",
    "gbs_recognize",
    "Morphism",
    "FIB_MORPHISM",
    "F",
    "G",
    "H",
    "KAPPA",
    "DELTA",
    "morphism_iterate",
    "DiffWordClass",
    "classify_difference_word",
    "differences",
]


@dataclass(frozen=True)
class GBSParams:
    """V(p, q, r), or V0(p, q, r) when ``from_zero`` adds the n = 0 term."""

    p: int
    q: int
    r: int
    from_zero: bool = False

    def term(self, n: int) -> int:
        return self.p * floor_phi(n) + self.q * n + self.r

    @property
    def first_index(self) -> int:
        return 0 if self.from_zero else 1

    def terms(self, count: int) -> list[int]:
        n0 = self.first_index
        return [self.term(n) for n in range(n0, n0 + count)]

    def increasing(self) -> bool:
        # differences take the two values 2p+q and p+q
        return 2 * self.p + self.q > 0 and self.p + self.q > 0

    def terms_upto(self, bound: int) -> list[int]:
        """All terms <= bound; only defined for increasing sequences."""
        if not self.increasing():
            raise ValueError(f"{self} is not increasing")
        out = []
        n = self.first_index
        while (t := self.term(n)) <= bound:
            out.append(t)
            n += 1
        return out

    def __str__(self) -> str:
        return f"{'V0' if self.from_zero else 'V'}({self.p},{self.q},{self.r})"

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "origin": 0 if self.from_zero else 1}

    @classmethod
    def from_dict(cls, d: dict) -> GBSParams:
        return cls(d["p"], d["q"], d["r"], d["origin"] == 0)


def V(p: int, q: int, r: int) -> GBSParams:
    return GBSParams(p, q, r)


def V0(p: int, q: int, r: int) -> GBSParams:
    return GBSParams(p, q, r, True)


A = V(1, 0, 0)  # lower Wythoff
B = V(1, 1, 0)  # upper Wythoff


def gbs_terms(params: GBSParams, count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    return params.terms(count)


def gbs_compose_A(v: GBSParams) -> GBSParams:
    """Parameters of n -> V(A(n))."""
    if v.from_zero:
        raise ValueError("composition is defined for sequences indexed from 1")
    return GBSParams(v.p + v.q, v.p, v.r - v.p)


def gbs_compose_B(v: GBSParams) -> GBSParams:
    """Parameters of n -> V(B(n))."""
    if v.from_zero:
        raise ValueError("composition is defined for sequences indexed from 1")
    return GBSParams(2 * v.p + v.q, v.p + v.q, v.r)


def differences(seq: Sequence[int]) -> list[int]:
    return [y - x for x, y in zip(seq, seq[1:])]


# ------------------------------------------------------------------ words


class Morphism:
    """Letter-to-word substitution on single-character letters."""

    def __init__(self, images: dict[str, str], name: str = "") -> None:
        if any(not w for w in images.values()):
            raise ValueError("every letter needs a nonempty image")
        self.images = dict(images)
        self.name = name

    def __call__(self, word: str) -> str:
        im = self.images
        return "".join(im[c] for c in word)

    def iterate(self, word: str, k: int) -> str:
        if k < 0:
            raise ValueError("k must be >= 0")
        for _ in range(k):
            word = self(word)
        return word

    def compose(self, other: Morphism) -> Morphism:
        """self o other."""
        return Morphism({c: self(w) for c, w in other.images.items()}, f"{self.name}{other.name}")

    def __repr__(self) -> str:
        body = ", ".join(f"{c}->{w}" for c, w in self.images.items())
        return f"Morphism({self.name}: {body})"


FIB_MORPHISM = Morphism({"a": "ab", "b": "a"}, "fib")
F = Morphism({"a": "aba", "b": "ab"}, "f")
G = Morphism({"a": "baa", "b": "ba"}, "g")
H = Morphism({"a": "aab", "b": "ab"}, "h")
KAPPA = Morphism({"3": "5", "4": "434", "5": "545"}, "kappa")
DELTA = Morphism({"a": "54", "b": "34"}, "delta")


def morphism_iterate(m: Morphism, letter: str, k: int) -> str:
    return m.iterate(letter, k)


def _fixed_point_prefix(m: Morphism, start: str, length: int) -> str:
    w = start
    while len(w) < length:
        nxt = m(w)
        if len(nxt) <= len(w):
            raise ValueError(f"{m!r} does not grow from {start!r}")
        w = nxt
    return w[:length]


def fibonacci_word(a, b, length: int) -> list:
    """Prefix of abaababaabaab... with the letters replaced by ``a`` and ``b``."""
    if length < 1:
        raise ValueError("length must be >= 1")
    w = _fixed_point_prefix(FIB_MORPHISM, "a", length)
    return [a if c == "a" else b for c in w]


def gbs_recognize(seq: Sequence[int]) -> GBSParams | None:
    """Return V(p, q, r) if the differences of ``seq`` start the Fibonacci word.

    Only a prefix is checked, so at least 8 terms are required.
    """
    if len(seq) < 8:
        raise ValueError("need at least 8 terms")
    d = differences(seq)
    a = d[0]
    others = {x for x in d if x != a}
    if len(others) != 1:
        return None
    (b,) = others
    if d != fibonacci_word(a, b, len(d)):
        return None
    p, q = a - b, 2 * b - a
    return GBSParams(p, q, seq[0] - p - q)


@dataclass(frozen=True)
class DiffWordClass:
    """Which of x_F, b x_F, a x_F a difference sequence starts with."""

    tag: str  # "X_F" | "X_G" | "X_H" | "NONE"
    a: int | None = None
    b: int | None = None

    @property
    def lucas_letters(self) -> bool:
        return self.a is not None and is_lucas(self.a) and is_lucas(self.b)

    def to_dict(self) -> dict:
        return {"tag": self.tag, "a": self.a, "b": self.b}

    @classmethod
    def from_dict(cls, d: dict) -> DiffWordClass:
        return cls(d["tag"], d.get("a"), d.get("b"))

    def __str__(self) -> str:
        return self.tag if self.tag == "NONE" else f"{self.tag}({self.a},{self.b})"


def _class_candidates(d: list[int]) -> Iterator[DiffWordClass]:
    letters = sorted(set(d))
    if len(letters) != 2:
        return
    n = len(d)
    for tag in ("X_F", "X_G", "X_H"):
        for a, b in ((letters[0], letters[1]), (letters[1], letters[0])):
            x = fibonacci_word(a, b, n)
            if tag == "X_G":
                x = [b] + x[: n - 1]
            elif tag == "X_H":
                x = [a] + x[: n - 1]
            if x == d:
                yield DiffWordClass(tag, a, b)


def classify_difference_word(seq: Sequence[int], verbose: bool = False):
    """Classify the difference sequence of ``seq`` as X_F, X_G or X_H.

    Returns the first match in the order F, G, H (or NONE).  With
    ``verbose=True`` the list of all matching classes is returned instead.
    """
    if len(seq) < 8:
        raise ValueError("need at least 8 terms")
    found = list(_class_candidates(differences(seq)))
    if verbose:
        return found
    return found[0] if found else DiffWordClass("NONE")


def merge_sorted(parts: Iterable[Sequence[int]]) -> list[int]:
    return sorted(set().union(*map(set, parts)))
