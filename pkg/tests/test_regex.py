import pytest
from hypothesis import given, strategies as st

from detpol import regex as rx


def test_grammar_cases():
    r = rx.parse_regex("b*a(a|b)*")
    assert r == rx.Concat(
        (rx.Star(rx.Lit("b")), rx.Lit("a"), rx.Star(rx.Union((rx.Lit("a"), rx.Lit("b")))))
    )


def test_epsilon_and_empty_literals():
    assert rx.parse_regex("%") == rx.EPSILON
    assert rx.parse_regex("@") == rx.EMPTY
    assert rx.parse_regex("a|b|%") == rx.Union((rx.Lit("a"), rx.Lit("b"), rx.EPSILON))


def test_unbalanced_reports_offset():
    with pytest.raises(rx.RegexSyntaxError) as err:
        rx.parse_regex("((ab)+c+(ba)+")
    assert err.value.offset == 0


def test_bad_character_offset():
    with pytest.raises(rx.RegexSyntaxError) as err:
        rx.parse_regex("ab[c")
    assert err.value.offset == 2


def test_precedence():
    assert rx.parse_regex("ab|c") == rx.Union((rx.Concat((rx.Lit("a"), rx.Lit("b"))), rx.Lit("c")))
    assert rx.parse_regex("ab*") == rx.Concat((rx.Lit("a"), rx.Star(rx.Lit("b"))))
    assert rx.parse_regex("(ab)*") == rx.Star(rx.Concat((rx.Lit("a"), rx.Lit("b"))))


def test_alphabet_inferred():
    assert rx.parse_regex("b*a(a|b)*").alphabet == {"a", "b"}
    assert rx.parse_regex("%").alphabet == set()


def _regex_nodes(depth):
    leaf = st.sampled_from(
        [rx.Lit("a"), rx.Lit("b"), rx.Lit("c"), rx.EPSILON, rx.EMPTY]
    )
    if depth == 0:
        return leaf
    sub = _regex_nodes(depth - 1)
    return st.one_of(
        leaf,
        st.builds(rx.Star, sub),
        st.builds(rx.Plus, sub),
        st.builds(lambda a, b: rx.Union((a, b)), sub, sub).map(_flatten_union),
        st.builds(lambda a, b: rx.Concat((a, b)), sub, sub).map(_flatten_concat),
    )


def _flatten_union(node):
    parts = []
    for p in node.parts:
        parts.extend(p.parts if isinstance(p, rx.Union) else [p])
    return rx.Union(tuple(parts))


def _flatten_concat(node):
    parts = []
    for p in node.parts:
        parts.extend(p.parts if isinstance(p, rx.Concat) else [p])
    return rx.Concat(tuple(parts))


@given(_regex_nodes(3))
def test_print_parse_roundtrip(node):
    assert rx.parse_regex(rx.render(node)) == node
