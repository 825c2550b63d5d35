"""Where digit blocks occur in base-phi expansions.

Suffixes of beta+ are read with zeros padded on the left, prefixes of beta-
with zeros padded on the right.  Suffix and central scans start at N = 0;
prefix scans start at N = 2, the first N with a nonempty negative part.
"""

from __future__ import annotations

import json
import re
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .beatty import V, V0, DiffWordClass, GBSParams, classify_difference_word
from .exact import fib, frac_phi_compare, lucas
from .numeration import (
    TABLE_LIMIT,
    check_word,
    expansion_table,
    is_admissible,
    iter_expansions,
    phi_encode,
    zeck_decode,
)
from .structure import BASE_TABLE, _piece, block_matches, xi_interval

__all__ = [
    "ClosedForm",
    "EMPTY",
    "OccurrenceReport",
    "scan_suffix",
    "scan_central",
    "scan_prefix",
    "predict_suffix",
    "predict_prefix_small",
    "check_suffix",
    "check_prefix",
    "Trident",
    "xi_runs",
    "tridents",
    "singletons",
    "pi_essential",
    "code",
    "gamma_minus",
    "gamma_recursive",
    "PiPermutation",
    "pi_permutation",
    "verify_pi_arithmetic",
    "sketch_orbit",
    "rotation_permutation",
    "SKETCH",
    "RAW",
    "verify_all_gamma",
    "ConjectureRow",
    "conjecture_scan",
]


# ----------------------------------------------------------- closed forms


@dataclass(frozen=True)
class ClosedForm:
    """Disjoint union of GBS parts; no parts means the block never occurs.

    ``anchored`` marks an offset read off the first scanned occurrence rather
    than given in closed form.  ``alternatives`` lists competing readings that
    are reported alongside.
    """

    parts: tuple[GBSParams, ...] = ()
    anchored: bool = False
    alternatives: tuple[GBSParams, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.parts

    def terms_upto(self, bound: int) -> list[int]:
        out: set[int] = set()
        for p in self.parts:
            out.update(p.terms_upto(bound))
        return sorted(out)

    def is_trident(self) -> bool:
        ps = self.parts
        return (
            len(ps) == 3
            and len({(p.p, p.q, p.from_zero) for p in ps}) == 1
            and [p.r for p in ps] == [ps[0].r, ps[0].r + 1, ps[0].r + 2]
        )

    def __str__(self) -> str:
        if self.empty:
            return "EMPTY"
        if self.is_trident():
            p = self.parts[0]
            name = "V0" if p.from_zero else "V"
            return f"{name}({p.p},{p.q},[{p.r},{p.r + 1},{p.r + 2}])"
        return " u ".join(map(str, self.parts))

    def to_dict(self) -> dict:
        if self.empty:
            return {"empty": True}
        d: dict = {"union": [p.to_dict() for p in self.parts]}
        if self.anchored:
            d["anchored"] = True
        if self.alternatives:
            d["alternatives"] = [p.to_dict() for p in self.alternatives]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ClosedForm:
        if d.get("empty"):
            return EMPTY
        return cls(
            tuple(GBSParams.from_dict(x) for x in d["union"]),
            d.get("anchored", False),
            tuple(GBSParams.from_dict(x) for x in d.get("alternatives", ())),
        )


EMPTY = ClosedForm()


def _trident(p: int, q: int, r: int, from_zero: bool = False) -> ClosedForm:
    return ClosedForm(tuple(GBSParams(p, q, r + i, from_zero) for i in range(3)))


# ------------------------------------------------------------- scanning


def _matcher(kind: str, w: str, v: str):
    if kind == "suffix":
        return lambda left, right: block_matches(left, right, w, "")
    if kind == "prefix":
        return lambda left, right: block_matches(left, right, "", v)
    if kind == "central":
        return lambda left, right: block_matches(left, right, w, v)
    raise ValueError(f"unknown scan kind {kind!r}")


def _scan_range(args: tuple[str, str, str, int, int]) -> list[int]:
    kind, w, v, lo, hi = args
    match = _matcher(kind, w, v)
    seed = phi_encode(lo) if lo else None
    return [n for n, left, right in iter_expansions(hi, lo, seed) if match(left, right)]


def _scan(kind: str, w: str, v: str, max_n: int, jobs: int = 1) -> list[int]:
    lo = 2 if kind == "prefix" else 0
    if max_n < lo:
        return []
    if jobs <= 1 or max_n < 50_000:
        if max_n <= TABLE_LIMIT:
            match = _matcher(kind, w, v)
            table = expansion_table(max_n)
            return [n for n in range(lo, max_n + 1) if match(*table[n])]
        return _scan_range((kind, w, v, lo, max_n))
    step = -(-(max_n - lo + 1) // jobs)
    chunks = [(kind, w, v, a, min(a + step - 1, max_n)) for a in range(lo, max_n + 1, step)]
    with ProcessPoolExecutor(jobs) as ex:
        parts = list(ex.map(_scan_range, chunks))
    return [n for part in parts for n in part]


def scan_suffix(w: str, max_n: int, jobs: int = 1) -> list[int]:
    """All N <= max_n whose beta+ (left padded) ends in w."""
    return _scan("suffix", check_word(w), "", max_n, jobs)


def scan_central(w: str, v: str, max_n: int, jobs: int = 1) -> list[int]:
    """All N <= max_n with beta+ ending in w and beta- starting with v."""
    return _scan("central", check_word(w), check_word(v), max_n, jobs)


def scan_prefix(v: str, max_n: int, jobs: int = 1) -> list[int]:
    """All 2 <= N <= max_n whose beta- (right padded) starts with v."""
    return _scan("prefix", "", check_word(v), max_n, jobs)


def _first_suffix_occurrence(w: str, limit: int = 10**7) -> int | None:
    match = _matcher("suffix", w, "")
    if limit <= TABLE_LIMIT:
        table = expansion_table(limit)
        return next((n for n in range(limit + 1) if match(*table[n])), None)
    return next((n for n, left, right in iter_expansions(limit) if match(left, right)), None)


# ----------------------------------------------------------- predictions

_EMPTY_FAMILY = re.compile(r"1(00)+1\Z")


def predict_suffix(w: str) -> ClosedForm:
    """Closed form for R_w, the N whose beta+ ends in w."""
    check_word(w)
    if not w:
        raise ValueError("w must be nonempty")
    k = len(w)
    if w == "0":
        return ClosedForm((V0(-1, 3, 0),), alternatives=(V(-1, 3, 0),))
    if set(w) == {"0"}:
        m = k // 2
        if k % 2 == 0:
            return ClosedForm((V(lucas(2 * m), lucas(2 * m - 1), 1), V0(lucas(2 * m - 1), lucas(2 * m - 2), 0)))
        return ClosedForm((V0(lucas(2 * m + 1), lucas(2 * m), 0), V(lucas(2 * m), lucas(2 * m - 1), 1)))
    if w[-1] == "1":
        zeros = k - 1
        if set(w[:-1]) <= {"0"}:
            if zeros <= 1:
                return ClosedForm((V0(1, 2, 1),))
            m = zeros // 2
            return ClosedForm((V0(lucas(2 * m + 1), lucas(2 * m), 1),))
        if _EMPTY_FAMILY.search(w):
            return EMPTY
        if re.fullmatch(r"10(00)*1", w):
            m = (k - 3) // 2
            return ClosedForm((V(lucas(2 * m + 2), lucas(2 * m + 1), -lucas(2 * m + 1) + 1),))
    # Lucas-Wythoff with slopes fixed by length and leading digit, offset anchored
    p, q = (lucas(k - 2), lucas(k - 3)) if w[0] == "0" else (lucas(k - 1), lucas(k - 2))
    first = _first_suffix_occurrence(w)
    if first is None:
        return EMPTY
    return ClosedForm((V(p, q, first - p - q),), anchored=True)


_PREFIX_TABLE: dict[str, ClosedForm] = {
    "0": _trident(1, 2, -1),
    "1": ClosedForm((V(3, 1, 1),)),
    "10": ClosedForm((V(3, 1, 1),)),
    "00": _trident(3, 1, 2),
    "01": _trident(4, 3, 2, True),
    "010": _trident(4, 3, 2, True),
    "000": _trident(4, 3, -1),
    "001": _trident(7, 4, 2),
    "100": ClosedForm((V(4, 3, -2),)),
    "101": ClosedForm((V(7, 4, 1),)),
}


def predict_prefix_small(v: str) -> ClosedForm | None:
    """Closed form for R_.v when |v| <= 3; None beyond the table."""
    check_word(v)
    if not 1 <= len(v) <= 3:
        return None
    return _PREFIX_TABLE[v]


# --------------------------------------------------------------- reports


@dataclass
class OccurrenceReport:
    block: str
    kind: str  # suffix | central | prefix
    horizon: int
    scanned: list[int]
    predicted: ClosedForm | None = None
    verdict: str = "NO_PREDICTION"

    @property
    def passed(self) -> bool:
        return self.verdict == "MATCH"

    def judge(self) -> OccurrenceReport:
        if self.predicted is None:
            self.verdict = "NO_PREDICTION"
            return self
        expected = self.predicted.terms_upto(self.horizon)
        if expected == self.scanned:
            self.verdict = "MATCH"
        else:
            i = next((i for i, (a, b) in enumerate(zip(expected, self.scanned)) if a != b), None)
            if i is None:
                i = min(len(expected), len(self.scanned))
            self.verdict = f"MISMATCH@{i}"
        return self

    def to_dict(self) -> dict:
        return {
            "block": self.block,
            "kind": self.kind,
            "horizon": self.horizon,
            "scanned": self.scanned,
            "predicted": None if self.predicted is None else self.predicted.to_dict(),
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> OccurrenceReport:
        pred = None if d["predicted"] is None else ClosedForm.from_dict(d["predicted"])
        return cls(d["block"], d["kind"], d["horizon"], list(d["scanned"]), pred, d["verdict"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> OccurrenceReport:
        return cls.from_dict(json.loads(text))


def check_suffix(w: str, horizon: int = 10**4, jobs: int = 1) -> OccurrenceReport:
    return OccurrenceReport(w, "suffix", horizon, scan_suffix(w, horizon, jobs), predict_suffix(w)).judge()


def check_prefix(v: str, horizon: int = 10**4, jobs: int = 1) -> OccurrenceReport:
    return OccurrenceReport("." + v, "prefix", horizon, scan_prefix(v, horizon, jobs), predict_prefix_small(v)).judge()


# -------------------------------------------------------------- tridents


@dataclass(frozen=True)
class Trident:
    start: int

    @property
    def members(self) -> tuple[int, int, int]:
        return (self.start, self.start + 1, self.start + 2)

    @property
    def essential(self) -> int:
        return self.start + 1


def _negative_parts(lo: int, hi: int) -> Iterator[tuple[int, str]]:
    if hi <= TABLE_LIMIT:
        table = expansion_table(hi)
        for n in range(lo, hi + 1):
            yield n, table[n][1]
    else:
        for n, _, right in iter_expansions(hi, lo, phi_encode(lo)):
            yield n, right


def xi_runs(n: int) -> list[tuple[int, int, str]]:
    """Maximal runs (start, length, beta-) of equal negative parts in Xi_n."""
    lo, hi = xi_interval(n)
    runs: list[tuple[int, int, str]] = []
    for k, right in _negative_parts(lo, hi):
        if runs and runs[-1][2] == right:
            s, ln, _ = runs[-1]
            runs[-1] = (s, ln + 1, right)
        else:
            runs.append((k, 1, right))
    bad = [r for r in runs if r[1] not in (1, 3)]
    if bad:
        raise AssertionError(f"Xi_{n} has runs that are neither singletons nor tridents: {bad[:3]}")
    return runs


def tridents(n: int) -> list[Trident]:
    return [Trident(s) for s, ln, _ in xi_runs(n) if ln == 3]


def singletons(n: int) -> list[int]:
    return [s for s, ln, _ in xi_runs(n) if ln == 1]


def pi_essential(n: int) -> list[int]:
    """Singletons and trident middles of Xi_n, in increasing order."""
    return [s + ln // 2 for s, ln, _ in xi_runs(n)]


def gamma_minus(n: int) -> str:
    if n < 2:
        raise ValueError("gamma- is defined for N >= 2")
    right = phi_encode(n).right
    if not right.endswith("01"):
        raise AssertionError(f"beta-({n}) = {right} does not end in 01")
    return right[:-2]


def code(n: int) -> int:
    """C(N): the Zeckendorf value of gamma-(N)."""
    return zeck_decode(gamma_minus(n))


_GAMMA_TAIL = {
    ("a", 1): "10",
    ("b", 1): "0010",
    ("c", 1): "00",
    ("a", 0): "00",
    ("b", 0): "01",
    ("c", 0): "01",
}


def gamma_recursive(n: int) -> str:
    """gamma-(N) through the six-case recursion on translated Lucas intervals."""
    if n < 2:
        raise ValueError("gamma- is defined for N >= 2")
    tail = []
    while n not in BASE_TABLE:
        label, shift, odd = _piece(n)
        tail.append(_GAMMA_TAIL[label, odd])
        n -= shift
    return BASE_TABLE[n].right[:-2] + "".join(reversed(tail))


# ----------------------------------------------------------- permutations


@dataclass(frozen=True)
class PiPermutation:
    n: int
    values: tuple[int, ...]

    @property
    def size(self) -> int:
        return fib(2 * self.n)

    def is_bijection(self) -> bool:
        return sorted(self.values) == list(range(self.size))

    def __str__(self) -> str:
        return " ".join(map(str, self.values))


def pi_permutation(n: int) -> PiPermutation:
    """Codes of the essential elements of Xi_n, in increasing N."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = xi_interval(n)
    table = expansion_table(hi) if hi <= TABLE_LIMIT else None
    vals = []
    for e in pi_essential(n):
        right = table[e][1] if table is not None else phi_encode(e).right
        vals.append(zeck_decode(right[:-2]))
    perm = PiPermutation(n, tuple(vals))
    if not perm.is_bijection():
        raise AssertionError(f"Pi_{2 * n} is not a permutation of 0..{perm.size - 1}")
    return perm


def verify_pi_arithmetic(n: int) -> bool:
    """Pi starts at F_{2n} - 1 and steps by F_{2n-2} modulo F_{2n}."""
    vals = pi_permutation(n).values
    size, step = fib(2 * n), fib(2 * n - 2)
    if vals[0] != size - 1:
        return False
    return all((b - a - step) % size == 0 for a, b in zip(vals, vals[1:]))


SKETCH, RAW = "sketch", "raw"


def sketch_orbit(n: int) -> list[int]:
    """u_j = (j - 1) F_{2n-1} mod F_{2n}, j = 1..F_{2n}."""
    size, u2 = fib(2 * n), fib(2 * n - 1)
    return [(j * u2) % size for j in range(size)]


def rotation_permutation(n: int, convention: str = SKETCH) -> list[int]:
    """Pi_{2n} from the circle rotation by phi.

    ``sketch``: take the orbit u_1..u_N, append u_{N+1} = N, read it backwards
    from u_{N+1} down to u_2 and subtract 1.  ``raw``: rank k = 1..F_{2n} by
    decreasing fractional part {k phi} (exact comparisons) and emit k - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    size = fib(2 * n)
    if convention == SKETCH:
        u = sketch_orbit(n) + [size]
        return [x - 1 for x in reversed(u[1:])]
    if convention == RAW:
        from functools import cmp_to_key

        ks = sorted(range(1, size + 1), key=cmp_to_key(lambda i, j: -frac_phi_compare(i, j)))
        return [k - 1 for k in ks]
    raise ValueError(f"unknown convention {convention!r}")


def verify_all_gamma(n: int) -> bool:
    """{beta-(N) : N in Xi_n} is the set of admissible words of length 2n ending in 1."""
    lo, hi = xi_interval(n)
    seen = {right for _, right in _negative_parts(lo, hi)}
    if n <= 10:
        words = {"".join(t) + "1" for t in product("01", repeat=2 * n - 1)}
        expected = {x for x in words if is_admissible(x)}
    else:
        from .numeration import zeck_encode

        expected = {zeck_encode(c).rjust(2 * n - 2, "0") + "01" for c in range(fib(2 * n))}
    return seen == expected and len(seen) == fib(2 * n)


# -------------------------------------------------------------- conjecture


@dataclass
class ConjectureRow:
    word: str
    structure: str  # single | trident | mixed | undersampled | empty
    classes: list[DiffWordClass] = field(default_factory=list)
    count: int = 0

    @property
    def lucas_letters(self) -> bool:
        return bool(self.classes) and all(c.lucas_letters for c in self.classes)

    @property
    def classified(self) -> bool:
        return bool(self.classes) and all(c.tag != "NONE" for c in self.classes)

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "structure": self.structure,
            "classes": [c.to_dict() for c in self.classes],
            "count": self.count,
            "lucas_letters": self.lucas_letters,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ConjectureRow:
        return cls(d["word"], d["structure"], [DiffWordClass.from_dict(c) for c in d["classes"]], d["count"])

    def __str__(self) -> str:
        cls_txt = " ".join(map(str, self.classes)) or "-"
        return f".{self.word}: {self.structure} [{cls_txt}] lucas={self.lucas_letters} runs={self.count}"


def admissible_words(max_len: int) -> list[str]:
    out = []
    for k in range(1, max_len + 1):
        out.extend("".join(t) for t in product("01", repeat=k) if is_admissible("".join(t)))
    return out


def _run_stream(horizon: int) -> Iterator[tuple[int, int, str]]:
    """Complete runs (start, length, beta-) of equal beta- for 2 <= N <= horizon.

    The run still open at the horizon is dropped, it may be cut short.
    """
    cur_start, cur_len, cur = 0, 0, None
    for n, right in _negative_parts(2, horizon):
        if right == cur:
            cur_len += 1
            continue
        if cur is not None:
            yield cur_start, cur_len, cur
        cur_start, cur_len, cur = n, 1, right


def conjecture_scan(max_prefix_len: int = 5, horizon: int = 10**6) -> list[ConjectureRow]:
    """Classify R_.w for every admissible w with |w| <= max_prefix_len.

    A prefix scan is a union of whole runs of equal beta-; when all runs are
    tridents the three positions are classified separately.
    """
    words = admissible_words(max_prefix_len)
    starts = {w: array("q") for w in words}
    lengths = {w: array("b") for w in words}
    for s, ln, right in _run_stream(horizon):
        padded = right.ljust(max_prefix_len, "0")
        for k in range(1, max_prefix_len + 1):
            w = padded[:k]
            starts[w].append(s)
            lengths[w].append(ln)
    rows = []
    for w in words:
        st, ls = starts[w], lengths[w]
        row = ConjectureRow(w, "empty", count=len(st))
        kinds = set(ls)
        if not st:
            pass
        elif len(st) < 8:
            row.structure = "undersampled"
        elif kinds == {1}:
            row.structure = "single"
            row.classes = [classify_difference_word(st)]
        elif kinds == {3}:
            row.structure = "trident"
            row.classes = [classify_difference_word([s + i for s in st]) for i in range(3)]
        else:
            row.structure = "mixed"
            members = [s + i for s, ln in zip(st, ls) for i in range(ln)]
            row.classes = [classify_difference_word(members)]
        rows.append(row)
    return rows
