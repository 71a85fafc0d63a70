import pytest
from hypothesis import given, settings, strategies as st

from detpol import dfa as dfalib
from detpol import regex as rx

from .conftest import match_regex, words_up_to


def test_compile_ab_star_three_states():
    d = dfalib.compile_regex("(ab)*")
    assert d.n == 3
    assert d.accepts("") and d.accepts("abab") and not d.accepts("aba")


def test_compile_empty_language():
    d = dfalib.compile_regex("@", "ab")
    assert d.n == 1 and not d.finals


def test_compile_finite_language_enumeration():
    d = dfalib.compile_regex("a|b|%")
    assert list(d.words(3)) == ["", "a", "b"]


def test_combine_basics():
    a_star = dfalib.compile_regex("a*", "ab")
    b_star = dfalib.compile_regex("b*", "ab")
    assert dfalib.combine("intersection", a_star, b_star) == dfalib.compile_regex("%", "ab")
    assert dfalib.combine("complement", dfalib.empty("ab")) == dfalib.universal("ab")


def test_difference_by_enumeration():
    contains_a = dfalib.compile_regex("b*a(a|b)*")
    starts_a = dfalib.compile_regex("a(a|b)*")
    diff = dfalib.combine("difference", contains_a, starts_a)
    for w in words_up_to("ab", 6):
        assert diff.accepts(w) == (("a" in w) and not w.startswith("a"))


def test_alphabet_mismatch():
    with pytest.raises(dfalib.AlphabetMismatch):
        dfalib.union(dfalib.compile_regex("a*", "ab"), dfalib.compile_regex("c*", "c"))


def test_quotients():
    assert dfalib.quotient(dfalib.compile_regex("a(a|b)*"), "a", "left") == dfalib.universal("ab")
    ab_star = dfalib.compile_regex("(ab)*")
    assert dfalib.quotient(ab_star, "a", "left") == dfalib.compile_regex("b(ab)*")
    assert dfalib.quotient(ab_star, "b", "right") == dfalib.compile_regex("(ab)*a")


def test_quotient_coherence():
    lang = dfalib.compile_regex("(ab)*|b*a")
    for u in ["", "a", "ab", "ba"]:
        left = dfalib.quotient(lang, u, "left")
        right = dfalib.quotient(lang, u, "right")
        for w in words_up_to("ab", 6 - len(u)):
            assert left.accepts(w) == lang.accepts(u + w)
            assert right.accepts(w) == lang.accepts(w + u)


def test_minimization_idempotent():
    for pattern in ["(ab)*", "b*a(a|b)*", "(a|b)*aa(a|b)*", "a*b*"]:
        d = dfalib.compile_regex(pattern)
        assert d.minimal() == d


REGEX_POOL = [
    "(ab)*",
    "b*a(a|b)*",
    "a*b*",
    "(a|b)*aa(a|b)*",
    "(b|ab)*(a|%)",
    "a+b+",
    "%",
    "@",
    "(a|b)(a|b)*",
]


@pytest.mark.parametrize("pattern", REGEX_POOL)
def test_dfa_agrees_with_direct_matcher(pattern):
    node = rx.parse_regex(pattern)
    d = dfalib.compile_regex(node, "ab")
    for w in words_up_to("ab", 8):
        assert d.accepts(w) == match_regex(node, w), (pattern, w)


@pytest.mark.parametrize("pattern", REGEX_POOL)
def test_to_regex_roundtrip(pattern):
    d = dfalib.compile_regex(pattern, "ab")
    assert dfalib.compile_regex(dfalib.to_regex(d), "ab") == d


def test_format_parse_roundtrip():
    d = dfalib.compile_regex("b*a(a|b)*")
    assert dfalib.parse_dfa(dfalib.format_dfa(d)) == d


def test_reverse():
    d = dfalib.compile_regex("ab*")
    assert d.reverse() == dfalib.compile_regex("b*a")


@st.composite
def random_dfas(draw):
    n = draw(st.integers(1, 4))
    alphabet = ("a", "b")
    delta = [[draw(st.integers(0, n - 1)) for _ in alphabet] for _ in range(n)]
    finals = {q for q in range(n) if draw(st.booleans())}
    return dfalib.Dfa(alphabet, n, delta, 0, finals)


@given(random_dfas(), random_dfas())
@settings(max_examples=40, deadline=None)
def test_boolean_ops_by_enumeration(d1, d2):
    inter = dfalib.intersection(d1, d2)
    un = dfalib.union(d1, d2)
    diff = dfalib.difference(d1, d2)
    for w in words_up_to("ab", 5):
        assert inter.accepts(w) == (d1.accepts(w) and d2.accepts(w))
        assert un.accepts(w) == (d1.accepts(w) or d2.accepts(w))
        assert diff.accepts(w) == (d1.accepts(w) and not d2.accepts(w))
