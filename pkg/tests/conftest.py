"""Shared fixtures and independent oracles for the test suite."""

from itertools import product

import pytest

from detpol import dfa as dfalib
from detpol import regex as rx
from detpol.cli import load_corpus
from detpol.membership import Context


def words_up_to(alphabet, max_len):
    out = []
    for length in range(max_len + 1):
        out.extend("".join(t) for t in product(alphabet, repeat=length))
    return out


def match_regex(node, word):
    """Independent regex matcher by position-set simulation (no automata)."""
    if isinstance(node, rx.Empty):
        return False
    if isinstance(node, rx.Epsilon):
        return word == ""
    if isinstance(node, rx.Lit):
        return word == node.letter
    if isinstance(node, rx.Union):
        return any(match_regex(p, word) for p in node.parts)
    if isinstance(node, rx.Concat):
        return _match_concat(node.parts, word)
    if isinstance(node, rx.Star):
        return _match_star(node.inner, word, allow_empty=True)
    if isinstance(node, rx.Plus):
        return _match_star(node.inner, word, allow_empty=False)
    raise TypeError(node)


def _match_concat(parts, word):
    states = {0}
    for p in parts:
        states = {
            j
            for i in states
            for j in range(i, len(word) + 1)
            if match_regex(p, word[i:j])
        }
        if not states:
            return False
    return len(word) in states


def _match_star(inner, word, allow_empty):
    # reachability over split points
    reach = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(i + 1, len(word) + 1):
            if j not in reach and match_regex(inner, word[i:j]):
                reach.add(j)
                frontier.append(j)
    if allow_empty:
        return len(word) in reach
    return len(word) in reach and len(word) > 0


def brute_syntactic_classes(language, alphabet, max_len):
    """Context-signature classes of words (the brute-force syntactic quotient).

    Signature of u: acceptance of x+u+y over all contexts with |x|,|y| <= the
    number of DFA states, which distinguishes exactly the syntactic classes of
    a minimal DFA.  Returns (class list of representatives, class index map).
    """
    contexts = words_up_to(alphabet, language.n)

    def signature(u):
        return tuple(language.accepts(x + u + y) for x in contexts for y in contexts)

    reps = []
    index = {}
    frontier = [""]
    sig_of = {}
    while frontier:
        u = frontier.pop(0)
        if len(u) > max_len:
            continue
        s = signature(u)
        if s in index:
            continue
        index[s] = len(reps)
        sig_of[u] = s
        reps.append(u)
        for a in alphabet:
            frontier.append(u + a)
    return reps, index, signature


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_langs(corpus):
    return [
        (fid, alphabet, dfalib.compile_regex(regex, alphabet))
        for fid, alphabet, regex, _ in corpus
    ]


@pytest.fixture(scope="session")
def ctx():
    return Context()
