"""Registry of named verifiers; each returns a CheckResult and never raises on failure."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .beatty import DELTA, H, V, V0, differences, fibonacci_word
from .exact import fib, lucas
from .numeration import (
    TABLE_LIMIT,
    PhiExpansion,
    expansion_table,
    is_admissible,
    iter_expansions,
    phi_decode,
    verify_zeckphi,
)
from .occurrence import (
    EMPTY,
    RAW,
    SKETCH,
    ClosedForm,
    _trident,
    check_prefix,
    check_suffix,
    code,
    conjecture_scan,
    gamma_minus,
    gamma_recursive,
    pi_permutation,
    rotation_permutation,
    scan_central,
    scan_prefix,
    scan_suffix,
    singletons,
    sketch_orbit,
    tridents,
    verify_all_gamma,
    verify_pi_arithmetic,
)
from .structure import (
    canonical_splitting_lambda,
    canonical_splitting_xi,
    check_congruence,
    kappa_word,
    lambda_interval,
    lucas_border_expansions,
    phi_encode_recursive,
    xi_interval,
)

__all__ = ["CheckResult", "REGISTRY", "run_check", "SUFFIX_TREE", "PREFIX_TREE"]


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> CheckResult:
        if self.passed:
            self.passed = False
            self.counterexample = msg
        return self

    def expect(self, ok: bool, msg: str) -> bool:
        self.checked += 1
        if not ok:
            self.fail(msg)
        return ok

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CheckResult:
        return cls(d["name"], d["passed"], d["checked"], d["counterexample"], list(d["notes"]))


# labelled occurrence trees: word -> closed form as printed on the node
SUFFIX_TREE: dict[str, ClosedForm] = {
    "0": ClosedForm((V0(-1, 3, 0),)),
    "00": ClosedForm((V0(1, 2, 0), V(3, 1, 1))),
    "000": ClosedForm((V0(4, 3, 0), V(3, 1, 1))),
    "0000": ClosedForm((V0(4, 3, 0), V(7, 4, 1))),
    "1000": ClosedForm((V(4, 3, -2),)),
    "100": ClosedForm((V(3, 1, -1),)),
    "0100": ClosedForm((V(3, 1, -1),)),
    "10": ClosedForm((V(1, 2, -1),)),
    "010": ClosedForm((V(1, 2, -1),)),
    "0010": ClosedForm((V(3, 1, -2),)),
    "1010": ClosedForm((V(4, 3, -1),)),
    "1": ClosedForm((V0(1, 2, 1),)),
    "01": ClosedForm((V0(1, 2, 1),)),
    "001": ClosedForm((V0(4, 3, 1),)),
    "0001": ClosedForm((V0(4, 3, 1),)),
    "00001": ClosedForm((V0(11, 7, 1),)),
    "10001": ClosedForm((V(7, 4, -3),)),
    "1001": EMPTY,
    "101": ClosedForm((V(3, 1, 0),)),
    "0101": ClosedForm((V(3, 1, 0),)),
    "00101": ClosedForm((V(4, 3, -3),)),
    "10101": ClosedForm((V(7, 4, 0),)),
}

PREFIX_TREE: dict[str, ClosedForm] = {
    "0": _trident(1, 2, -1),
    "00": _trident(3, 1, 2),
    "000": _trident(4, 3, -1),
    "001": _trident(7, 4, 2),
    "01": _trident(4, 3, 2, True),
    "010": _trident(4, 3, 2, True),
    "1": ClosedForm((V(3, 1, 1),)),
    "10": ClosedForm((V(3, 1, 1),)),
    "100": ClosedForm((V(4, 3, -2),)),
    "101": ClosedForm((V(7, 4, 1),)),
}


def _table_or_stream(max_n: int):
    if max_n <= TABLE_LIMIT:
        table = expansion_table(max_n)
        return ((n, *table[n]) for n in range(max_n + 1))
    return iter_expansions(max_n)


def check_zeckphi(max_n: int = 10**5, **_) -> CheckResult:
    rep = verify_zeckphi(max_n)
    res = CheckResult("zeckphi", checked=rep.checked)
    if rep.counterexample:
        n, left, z = rep.counterexample
        res.fail(f"N={n}: beta+={left} but Z(N+S(N))={z}")
    return res


def check_ceiling(max_n: int = 10**5, **_) -> CheckResult:
    res = CheckResult("ceiling")
    for n, left, right in _table_or_stream(max_n):
        try:
            got = phi_decode(PhiExpansion(left, right))
        except ValueError as exc:
            res.expect(False, f"N={n}: {exc}")
            break
        if not res.expect(got == n, f"N={n}: decoded {got}"):
            break
    return res


def check_recursive(max_n: int = 5778, **_) -> CheckResult:
    res = CheckResult("recursive")
    for n, left, right in _table_or_stream(max_n):
        e = phi_encode_recursive(n)
        if not res.expect((e.left, e.right) == (left, right), f"N={n}: recursive {e}, iterative {left}.{right}"):
            break
    return res


def check_borders(n_max: int = 9, **_) -> CheckResult:
    res = CheckResult("borders")
    for n in range(1, n_max + 1):
        for k, e in lucas_border_expansions(n).items():
            res.expect(phi_encode_recursive(k) == e, f"beta({k}) != {e}")
        l2n, l2n1, l2n2 = lucas(2 * n), lucas(2 * n + 1), lucas(2 * n + 2)
        gammas = {l2n: "0" * (2 * n - 2), l2n1: "01" * (n - 1), l2n1 + 1: "10" * n, l2n2 - 1: "0" * (2 * n)}
        codes = {l2n: 0, l2n1: fib(2 * n - 1) - 1, l2n1 + 1: fib(2 * n + 2) - 1, l2n2 - 1: 0}
        for k, g in gammas.items():
            res.expect(gamma_minus(k) == g, f"gamma-({k}) = {gamma_minus(k)}, expected {g}")
            res.expect(code(k) == codes[k], f"C({k}) = {code(k)}, expected {codes[k]}")
    return res


def check_splitting_lambda(m_max: int = 16, **_) -> CheckResult:
    res = CheckResult("splitting-lambda")
    res.expect(canonical_splitting_lambda(6).word == "434", "C(Lambda_6) != 434")
    res.expect(
        canonical_splitting_lambda(6).shifts == (lucas(5), lucas(6), lucas(6)), "Lambda_6 shifts != (L5, L6, L6)"
    )
    res.expect(canonical_splitting_lambda(8).word == "4345434", "C(Lambda_8) != 4345434")
    for m in range(3, m_max + 1):
        sw = canonical_splitting_lambda(m)
        li = lambda_interval(m)
        res.expect(sw.check_tiles(li.start, li.end), f"Lambda_{m}: pieces do not tile")
        if m >= 4:
            res.expect(sw.word == kappa_word(m), f"Lambda_{m}: {sw.word} != kappa word")
    return res


def check_splitting_xi(n_max: int = 8, **_) -> CheckResult:
    res = CheckResult("splitting-xi")
    res.expect(canonical_splitting_xi(2).word == "34", "C(Xi_2) != 34")
    res.expect(canonical_splitting_xi(3).word == "5434", "C(Xi_3) != 5434")
    for n in range(2, n_max + 1):
        try:
            sw = canonical_splitting_xi(n)
        except AssertionError as exc:
            res.expect(False, str(exc))
            continue
        res.expect(sw.word == DELTA(H.iterate("b", n - 2)), f"Xi_{n}: word mismatch")
        res.expect(sw.check_tiles(*xi_interval(n)), f"Xi_{n}: pieces do not tile")
    return res


def _lam(m: int) -> tuple[int, int]:
    li = lambda_interval(m)
    return li.start, li.end


def check_congruences(m_max: int = 16, **_) -> CheckResult:
    res = CheckResult("congruence")
    res.expect(check_congruence(_lam(5), [_lam(3), _lam(2), _lam(3)], 1), "Lambda_5 ~ 323 mod 1 fails")
    res.expect(check_congruence(_lam(6), [_lam(4), _lam(3), _lam(4)], 3), "Lambda_6 ~ 434 mod 3 fails")
    res.expect(not check_congruence(_lam(6), [_lam(4), _lam(3), _lam(4)], 5), "Lambda_6 ~ 434 mod 5 holds")
    for m in range(8, m_max + 1):
        ok = check_congruence(_lam(m), [_lam(m - 2), _lam(m - 3), _lam(m - 2)], 4)
        res.expect(ok, f"Lambda_{m} ~ Lambda_{m - 2} Lambda_{m - 3} Lambda_{m - 2} mod 4 fails")
    # glued: Lambda_{m+1} Lambda_{m+2} from the two separate congruences
    for m in range(7, m_max - 1):
        gamma = (_lam(m + 1)[0], _lam(m + 2)[1])
        delta = [_lam(m - 1), _lam(m - 2), _lam(m - 1), _lam(m), _lam(m - 1), _lam(m)]
        res.expect(check_congruence(gamma, delta, 4), f"glued congruence fails at m={m}")
    return res


_TRAILING = re.compile(r"10*\Z")


def check_exclusions(max_n: int = 10**5, m_max: int = 8, **_) -> CheckResult:
    """No 10^{2m}.1, no 10^{2m+1}.0, no beta+ ending in 10^{2m}1, for 1 <= m <= m_max."""
    res = CheckResult("exclusions")
    for n, left, right in _table_or_stream(max_n):
        res.checked += 1
        t = len(left) - len(left.rstrip("0"))
        if t and t < len(left) and t <= 2 * m_max + 1:
            d1 = right[:1] or "0"
            if t % 2 == 0 and d1 == "1":
                res.fail(f"N={n}: 10^{t}.1 in {left}.{right}")
                break
            if t % 2 == 1 and t >= 3 and d1 == "0":
                res.fail(f"N={n}: 10^{t}.0 in {left}.{right}")
                break
        if left.endswith("1") and len(left) > 1:
            core = left[:-1]
            t = len(core) - len(core.rstrip("0"))
            if t and t < len(core) and t % 2 == 0 and t <= 2 * m_max:
                res.fail(f"N={n}: beta+ ends in 10^{t}1: {left}")
                break
    return res


def check_suffix_tree(max_n: int = 10**4, **_) -> CheckResult:
    res = CheckResult("suffix-tree")
    for w, label in SUFFIX_TREE.items():
        scanned = scan_suffix(w, max_n)
        res.expect(scanned == label.terms_upto(max_n), f"R_{w}: scan differs from {label}")
        rep = check_suffix(w, max_n)
        res.expect(rep.passed, f"R_{w}: predicted {rep.predicted}, {rep.verdict}")
    alt = V(-1, 3, 0).terms_upto(max_n)
    res.notes.append(f"R_0 with n >= 1 only (V(-1,3,0)) matches scan: {alt == scan_suffix('0', max_n)}")
    return res


def check_prefix_table(max_n: int = 10**4, **_) -> CheckResult:
    res = CheckResult("prefix-table")
    for v, label in PREFIX_TREE.items():
        scanned = scan_prefix(v, max_n)
        res.expect(scanned == label.terms_upto(max_n), f"R_.{v}: scan differs from {label}")
        rep = check_prefix(v, max_n)
        res.expect(rep.passed, f"R_.{v}: {rep.verdict}")
    printed_a = _trident(2, 1, -1)
    res.notes.append(f"R_.0 as V(2,1,[-1,0,1]) matches scan: {printed_a.terms_upto(max_n) == scan_prefix('0', max_n)}")
    return res


def _all_words(lo: int, hi: int, last: str | None = None) -> list[str]:
    out = [""]
    words = []
    for k in range(1, hi + 1):
        out = [w + c for w in out for c in "01" if is_admissible(w + c)]
        if k >= lo:
            words.extend(w for w in out if last is None or w.endswith(last))
    return words


def check_suffix_families(max_n: int = 10**5, m_max: int = 4, len_max: int = 10, **_) -> CheckResult:
    res = CheckResult("suffix-families")
    for m in range(1, m_max + 1):
        for w in ("0" * (2 * m), "0" * (2 * m + 1), "0" * (2 * m) + "1", "0" * (2 * m + 1) + "1",
                  "1" + "0" * (2 * m) + "1", "1" + "0" * (2 * m + 1) + "1"):
            rep = check_suffix(w, max_n)
            res.expect(rep.passed, f"R_{w}: predicted {rep.predicted}, {rep.verdict}")
        # central blocks behind the all-zero unions
        for k, v0, v1 in (
            (2 * m, V0(lucas(2 * m - 1), lucas(2 * m - 2), 0), V(lucas(2 * m), lucas(2 * m - 1), 1)),
            (2 * m + 1, V0(lucas(2 * m + 1), lucas(2 * m), 0), V(lucas(2 * m), lucas(2 * m - 1), 1)),
        ):
            z = "0" * k
            res.expect(scan_central(z, "0", max_n) == v0.terms_upto(max_n), f"R_{z}.0 != {v0}")
            res.expect(scan_central(z, "1", max_n) == v1.terms_upto(max_n), f"R_{z}.1 != {v1}")
    # generic words: difference word of R_w is the Fibonacci word on consecutive Lucas letters
    horizon = min(max_n, 10**4)
    special = re.compile(r"(\A0*1\Z)|(1(00)+1\Z)|(\A0+\Z)")
    for w in _all_words(2, len_max):
        if special.search(w):
            continue
        k = len(w)
        a, b = (lucas(k), lucas(k - 1)) if w[0] == "0" else (lucas(k + 1), lucas(k))
        seq = scan_suffix(w, horizon)
        if len(seq) < 8:
            res.notes.append(f"R_{w}: only {len(seq)} terms up to {horizon}")
            continue
        d = differences(seq)
        res.expect(d == fibonacci_word(a, b, len(d)), f"R_{w}: differences are not x_F({a},{b})")
        res.expect(seq[0] - a <= 0, f"R_{w}: offset is positive")
    # R_w = R_{w~ . 0} + 1 for w ending in 1, w~ = w with last digit 0
    for w in _all_words(2, 8, last="1"):
        wt = w[:-1] + "0"
        lhs = scan_suffix(w, horizon)
        rhs = [x + 1 for x in scan_central(wt, "0", horizon - 1)]
        res.expect(lhs == rhs, f"R_{w} != R_{wt}.0 + 1")
    return res


def check_tridents(n_max: int = 8, **_) -> CheckResult:
    res = CheckResult("tridents")
    for n in range(1, n_max + 1):
        try:
            t, s = tridents(n), singletons(n)
        except AssertionError as exc:
            res.expect(False, str(exc))
            continue
        res.expect(len(t) == fib(2 * n - 1), f"Xi_{n}: {len(t)} tridents, expected F_{2 * n - 1}")
        res.expect(len(s) == fib(2 * n - 2), f"Xi_{n}: {len(s)} singletons, expected F_{2 * n - 2}")
        last_odd = lambda_interval(2 * n - 1).end
        first_even = lambda_interval(2 * n).start
        res.expect(
            any(x.members == (last_odd, first_even, first_even + 1) for x in t),
            f"Xi_{n}: border trident missing",
        )
    return res


def check_gamma_all(n_max: int = 7, max_n: int = 10**4, **_) -> CheckResult:
    res = CheckResult("gamma-all")
    for n in range(1, n_max + 1):
        res.expect(verify_all_gamma(n), f"Xi_{n}: negative parts are not all admissible words ending in 1")
    table = expansion_table(min(max_n, TABLE_LIMIT))
    for k in range(2, min(max_n, TABLE_LIMIT) + 1):
        if not res.expect(gamma_recursive(k) == table[k][1][:-2], f"N={k}: recursive gamma- differs"):
            break
    return res


def check_pi_arith(n_max: int = 8, **_) -> CheckResult:
    res = CheckResult("pi-arith")
    res.expect(pi_permutation(2).values == (2, 0, 1), "Pi_4 != (2 0 1)")
    res.expect(pi_permutation(3).values == (7, 2, 5, 0, 3, 6, 1, 4), "Pi_6 != (7 2 5 0 3 6 1 4)")
    for n in range(1, n_max + 1):
        res.expect(verify_pi_arithmetic(n), f"Pi_{2 * n} is not the orbit of F_{2 * n}-1 under +F_{2 * n - 2}")
    return res


def check_rotation(n_max: int = 8, **_) -> CheckResult:
    res = CheckResult("rotation")
    res.expect(sketch_orbit(3) == [0, 5, 2, 7, 4, 1, 6, 3], "n=3 orbit != (0 5 2 7 4 1 6 3)")
    for n in range(2, n_max + 1):
        pi = list(pi_permutation(n).values)
        res.expect(rotation_permutation(n, SKETCH) == pi, f"sketch convention differs from Pi_{2 * n}")
        res.expect(rotation_permutation(n, RAW) == pi, f"raw orbit differs from Pi_{2 * n}")
    return res


def check_conjecture(max_n: int = 10**6, max_len: int = 5, **_) -> CheckResult:
    res = CheckResult("conjecture")
    rows = {r.word: r for r in conjecture_scan(max_len, max_n)}
    for r in rows.values():
        if r.structure in ("undersampled", "empty"):
            res.notes.append(f".{r.word}: {r.structure}")
            continue
        res.expect(r.classified, f".{r.word}: unclassified ({r})")
        res.expect(r.lucas_letters, f".{r.word}: letters not Lucas ({r})")
    if "1001" in rows:
        c = rows["1001"].classes
        res.expect(c and str(c[0]) == "X_G(29,18)", f".1001 -> {c}")
    if "0100" in rows:
        c = rows["0100"].classes
        res.expect(rows["0100"].structure == "trident" and str(c[0]) == "X_H(18,11)", f".0100 -> {c}")
    if "10" in rows:
        c = rows["10"].classes
        res.expect(c and str(c[0]) == "X_F(7,4)", f".10 -> {c}")
    return res


REGISTRY: dict[str, Callable[..., CheckResult]] = {
    "zeckphi": check_zeckphi,
    "ceiling": check_ceiling,
    "recursive": check_recursive,
    "borders": check_borders,
    "splitting-lambda": check_splitting_lambda,
    "splitting-xi": check_splitting_xi,
    "congruence": check_congruences,
    "exclusions": check_exclusions,
    "suffix-tree": check_suffix_tree,
    "prefix-table": check_prefix_table,
    "suffix-families": check_suffix_families,
    "tridents": check_tridents,
    "gamma-all": check_gamma_all,
    "pi-arith": check_pi_arith,
    "rotation": check_rotation,
    "conjecture": check_conjecture,
}

# checks that take a horizon; the rest are parametrised by an index bound
_HORIZON = {"zeckphi", "ceiling", "recursive", "exclusions", "suffix-tree", "prefix-table", "suffix-families",
            "gamma-all", "conjecture"}
_INDEX = {"borders": "n_max", "tridents": "n_max", "gamma-all": "n_max", "pi-arith": "n_max", "rotation": "n_max",
          "splitting-lambda": "m_max", "splitting-xi": "n_max", "congruence": "m_max"}


def run_check(name: str, max_n: int | None = None, n: int | None = None) -> CheckResult:
    if name not in REGISTRY:
        raise KeyError(name)
    kwargs = {}
    if max_n is not None and name in _HORIZON:
        kwargs["max_n"] = max_n
    if n is not None and name in _INDEX:
        kwargs[_INDEX[name]] = n
    return REGISTRY[name](**kwargs)
