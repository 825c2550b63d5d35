import re

import pytest

from oracles import greedy_phi
from phibase.beatty import V, V0, DiffWordClass, differences, fibonacci_word
from phibase.checks import PREFIX_TREE, SUFFIX_TREE
from phibase.exact import fib, lucas
from phibase.numeration import expansion_table, is_admissible
from phibase.occurrence import (
    EMPTY,
    RAW,
    SKETCH,
    ClosedForm,
    ConjectureRow,
    OccurrenceReport,
    Trident,
    admissible_words,
    check_prefix,
    check_suffix,
    code,
    conjecture_scan,
    gamma_minus,
    gamma_recursive,
    pi_essential,
    pi_permutation,
    predict_prefix_small,
    predict_suffix,
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
from phibase.structure import lambda_interval, xi_interval

# N, beta-(N), gamma-(N), C(N) on Xi_2 and Xi_3
NEG_TABLE = [
    (5, "1001", "10", 2),
    (6, "0001", "00", 0),
    (7, "0001", "00", 0),
    (8, "0001", "00", 0),
    (9, "0101", "01", 1),
    (10, "0101", "01", 1),
    (11, "0101", "01", 1),
    (12, "101001", "1010", 7),
    (13, "001001", "0010", 2),
    (14, "001001", "0010", 2),
    (15, "001001", "0010", 2),
    (16, "100001", "1000", 5),
    (17, "000001", "0000", 0),
    (18, "000001", "0000", 0),
    (19, "000001", "0000", 0),
    (20, "010001", "0100", 3),
    (21, "010001", "0100", 3),
    (22, "010001", "0100", 3),
    (23, "100101", "1001", 6),
    (24, "000101", "0001", 1),
    (25, "000101", "0001", 1),
    (26, "000101", "0001", 1),
    (27, "010101", "0101", 4),
    (28, "010101", "0101", 4),
    (29, "010101", "0101", 4),
]


@pytest.mark.parametrize("n,beta_minus,gamma,c", NEG_TABLE)
def test_negative_table(n, beta_minus, gamma, c):
    assert greedy_phi(n).split(".")[1] == beta_minus
    assert gamma_minus(n) == gamma
    assert gamma_recursive(n) == gamma
    assert code(n) == c


def test_scan_examples():
    assert scan_suffix("10", 11) == [2, 6, 9]
    assert scan_suffix("1", 11) == [1, 4, 8, 11]
    assert scan_suffix("1001", 10**4) == []
    assert scan_central("00", "1", 16) == [5, 12, 16]
    assert scan_central("00", "0", 11) == [0, 3, 7, 10]
    assert scan_central("10", "1", 10**4) == []
    assert scan_prefix("1", 16) == [5, 12, 16]
    assert scan_prefix("0", 11) == [2, 3, 4, 6, 7, 8, 9, 10, 11]
    assert scan_prefix("101", 12) == [12]
    with pytest.raises(ValueError):
        scan_suffix("11", 10)


def test_scan_against_direct_oracle():
    strings = [greedy_phi(n).split(".") for n in range(600)]
    for w in ("0", "01", "100", "0101", "00"):
        direct = [n for n, (l, _) in enumerate(strings) if l.rjust(len(w), "0").endswith(w)]
        assert scan_suffix(w, 599) == direct
        pre = [n for n, (_, r) in enumerate(strings) if n >= 2 and r.ljust(len(w), "0").startswith(w)]
        assert scan_prefix(w, 599) == pre


def test_parallel_scan_is_deterministic():
    assert scan_suffix("0010", 120_000, jobs=2) == scan_suffix("0010", 120_000)


def test_predict_suffix_examples():
    assert predict_suffix("100") == ClosedForm((V(3, 1, -1),), anchored=True)
    assert predict_suffix("000").parts == (V0(4, 3, 0), V(3, 1, 1))
    assert predict_suffix("10001").parts == (V(7, 4, -3),)
    assert predict_suffix("1001") == EMPTY
    assert predict_suffix("0") .parts == (V0(-1, 3, 0),)
    with pytest.raises(ValueError):
        predict_suffix("")


@pytest.mark.parametrize("word", sorted(SUFFIX_TREE))
def test_suffix_tree_node(word):
    rep = check_suffix(word, 10**4)
    assert rep.passed, (word, rep.verdict)
    assert SUFFIX_TREE[word].terms_upto(10**4) == rep.scanned


@pytest.mark.parametrize("word", sorted(PREFIX_TREE))
def test_prefix_table_entry(word):
    assert predict_prefix_small(word) == PREFIX_TREE[word]
    rep = check_prefix(word, 10**4)
    assert rep.passed, (word, rep.verdict)


def test_prefix_examples():
    assert str(predict_prefix_small("001")) == "V(7,4,[2,3,4])"
    assert str(predict_prefix_small("010")) == "V0(4,3,[2,3,4])"
    assert str(predict_prefix_small("100")) == "V(4,3,-2)"
    assert predict_prefix_small("1001") is None


def test_zero_suffix_alternative_excluded():
    scanned = scan_suffix("0", 10**4)
    assert scanned[0] == 0
    assert V0(-1, 3, 0).terms_upto(10**4) == scanned
    assert V(-1, 3, 0).terms_upto(10**4) == scanned[1:]


def test_suffix_families():
    h = 20_000
    for k in range(1, 5):
        assert scan_suffix("0" * (2 * k) + "1", h) == V0(lucas(2 * k + 1), lucas(2 * k), 1).terms_upto(h)
        assert scan_suffix("1" + "00" * k + "1", h) == []
        j = k - 1
        assert scan_suffix("10" + "00" * j + "1", h) == V(
            lucas(2 * j + 2), lucas(2 * j + 1), 1 - lucas(2 * j + 1)
        ).terms_upto(h)
        assert scan_suffix("0" * (2 * k), h) == predict_suffix("0" * (2 * k)).terms_upto(h)


def test_generic_difference_letters():
    h = 60_000
    for k in range(2, 9):
        for w in ("".join(t) for t in __import__("itertools").product("01", repeat=k)):
            if not is_admissible(w) or set(w) == {"0"} or re.search(r"1(00)*1\Z", w) or re.fullmatch(r"0*1", w):
                continue
            seq = scan_suffix(w, h)
            if len(seq) < 8:
                continue
            a, b = (lucas(k), lucas(k - 1)) if w[0] == "0" else (lucas(k + 1), lucas(k))
            assert differences(seq) == fibonacci_word(a, b, len(seq) - 1), w


def test_coupling_with_central_zero():
    h = 20_000
    for w in ("01", "0101", "0001", "00101", "000101", "1000101"):
        seq = scan_suffix(w, h)
        assert seq
        shifted = scan_central(w[:-1] + "0", "0", h - 1)
        assert seq == [x + 1 for x in shifted]
    # the .0 is needed: the bare suffix 00 also occurs before a 1
    assert scan_suffix("01", 200) != [x + 1 for x in scan_suffix("00", 199)]


def test_tridents_small():
    assert [t.members for t in tridents(1)] == [(2, 3, 4)]
    assert singletons(1) == []
    assert [t.members for t in tridents(2)] == [(6, 7, 8), (9, 10, 11)]
    assert singletons(2) == [5]
    assert pi_essential(2) == [5, 7, 10]
    assert Trident(6).essential == 7


def test_trident_counts_and_splitting():
    for n in range(1, 9):
        assert len(tridents(n)) == fib(2 * n - 1)
        assert len(singletons(n)) == fib(2 * n - 2)
        if n >= 2:
            last = lambda_interval(2 * n - 1).end
            t = next(t for t in tridents(n) if last in t.members)
            assert t.members == (last, last + 1, last + 2)


def test_code_examples():
    assert code(12) == 7 and code(23) == 6
    for n in range(1, 9):
        assert code(lucas(2 * n + 1) + 1) == fib(2 * n + 2) - 1
        assert code(lucas(2 * n)) == 0
    with pytest.raises(ValueError):
        code(1)


def test_gamma_border_values():
    for n in range(1, 10):
        assert gamma_minus(lucas(2 * n + 2) - 1) == "0" * (2 * n)
        assert gamma_recursive(lucas(2 * n + 2) - 1) == "0" * (2 * n)
        for k in (lucas(2 * n), lucas(2 * n + 1), lucas(2 * n + 1) + 1):
            assert gamma_recursive(k) == gamma_minus(k)
    assert gamma_recursive(13) == "0010" and gamma_recursive(20) == "0100"


def test_gamma_recursive_matches_scan():
    table = expansion_table(30_000)
    for n in range(2, 30_001):
        assert gamma_recursive(n) == table[n][1][:-2], n


def test_gamma_recursive_large():
    for n in (10**9 + 7, 3 * 10**11, lucas(40) - 1, lucas(41) + 1):
        assert gamma_recursive(n) == greedy_phi(n).split(".")[1][:-2]


def test_pi_examples():
    assert pi_permutation(1).values == (0,)
    assert pi_permutation(2).values == (2, 0, 1)
    assert str(pi_permutation(3)) == "7 2 5 0 3 6 1 4"
    for n in range(1, 9):
        p = pi_permutation(n)
        assert p.is_bijection() and p.size == fib(2 * n)
        assert verify_pi_arithmetic(n)


def test_pi_codes_agree_with_code():
    for n in range(2, 7):
        assert list(pi_permutation(n).values) == [code(e) for e in pi_essential(n)]


def test_rotation_conventions():
    assert sketch_orbit(3) == [0, 5, 2, 7, 4, 1, 6, 3]
    assert rotation_permutation(2) == [2, 0, 1]
    for n in range(2, 9):
        pi = list(pi_permutation(n).values)
        assert rotation_permutation(n, SKETCH) == pi
        assert rotation_permutation(n, RAW) == pi
    with pytest.raises(ValueError):
        rotation_permutation(3, "tau")


def test_all_gamma_words():
    lo, hi = xi_interval(2)
    assert {greedy_phi(n).split(".")[1] for n in range(lo, hi + 1)} == {"1001", "0001", "0101"}
    for n in range(1, 8):
        assert verify_all_gamma(n)


def test_report_json_roundtrip():
    for rep in (
        check_suffix("100", 500),
        check_suffix("1001", 500),
        check_prefix("0", 500),
        OccurrenceReport(".1001", "prefix", 100, [23], None).judge(),
        check_suffix("0", 500),
    ):
        back = OccurrenceReport.from_json(rep.to_json())
        assert back == rep


def test_report_mismatch_index():
    rep = OccurrenceReport("x", "suffix", 20, [3, 10, 15], ClosedForm((V(3, 1, -1),))).judge()
    assert rep.verdict == "MISMATCH@2" and not rep.passed
    rep = OccurrenceReport("x", "suffix", 20, [3, 10], ClosedForm((V(3, 1, -1),))).judge()
    assert rep.verdict == "MISMATCH@2"


def test_conjecture_small():
    rows = {r.word: r for r in conjecture_scan(4, 200_000)}
    assert rows["1001"].classes == [DiffWordClass("X_G", 29, 18)]
    assert rows["0100"].structure == "trident"
    assert rows["0100"].classes[0] == DiffWordClass("X_H", 18, 11)
    assert rows["10"].classes == [DiffWordClass("X_F", 7, 4)]
    for r in rows.values():
        assert r.classified and r.lucas_letters, str(r)
        assert ConjectureRow.from_dict(r.to_dict()) == r
    assert len(admissible_words(4)) == sum(fib(k + 2) for k in range(1, 5))
