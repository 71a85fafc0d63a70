from itertools import combinations

import pytest

from detpol import dfa as dfalib
from detpol.classes import AT, LPOL, PT, PTK, ST, canonical_morphism
from detpol.equiv import (
    EnumerationCapExceeded,
    c_pairs_finite,
    canonical_equiv_enumerated,
    canonical_equiv_finite,
    quotient_c_morphism,
)
from detpol.membership import Context, decide_membership
from detpol.monoid import congruence_from_pairs, total_congruence
from detpol.syntactic import RecognizedLanguage, syntactic_morphism

from .conftest import words_up_to


def _contains_a():
    return syntactic_morphism(dfalib.compile_regex("b*a(a|b)*")).morphism


def _ab_star():
    return syntactic_morphism(dfalib.compile_regex("(ab)*")).morphism


def test_st_pairs_are_everything():
    alpha = _contains_a()
    eta = canonical_morphism(ST, "ab")
    pairs = c_pairs_finite(eta, alpha)
    assert pairs == {(s, t) for s in range(2) for t in range(2)}


def test_at_pairs_on_contains_a_are_diagonal():
    alpha = _contains_a()
    eta = canonical_morphism(AT, "ab")
    pairs = c_pairs_finite(eta, alpha)
    assert pairs == {(0, 0), (1, 1)}


def test_at_pairs_against_bounded_enumeration():
    alpha = _ab_star()
    eta = canonical_morphism(AT, "ab")
    pairs = c_pairs_finite(eta, alpha)
    # stabilized brute force: words up to length 6 with equal content
    brute = set()
    by_content = {}
    for w in words_up_to("ab", 6):
        by_content.setdefault(frozenset(w), []).append(w)
    for group in by_content.values():
        for u in group:
            for v in group:
                brute.add((alpha(u), alpha(v)))
    assert brute == pairs


def test_lemma_2_10_pair_multiplication():
    for eta_base in [ST, AT, PTK(2)]:
        eta = canonical_morphism(eta_base, "ab")
        for alpha in [_contains_a(), _ab_star()]:
            pairs = c_pairs_finite(eta, alpha)
            m = alpha.target
            for (s1, t1), (s2, t2) in combinations(sorted(pairs), 2):
                assert (m.mul(s1, s2), m.mul(t1, t2)) in pairs


def test_lemma_2_12_enumerated_equals_pair_closure():
    ctx = Context()
    for base in [ST, AT, PTK(1), PTK(2)]:
        for alpha in [_contains_a(), _ab_star()]:
            fine = canonical_equiv_finite(base, alpha)
            brute = canonical_equiv_enumerated(
                alpha, lambda rl: ctx.morphism_in_class(base, rl)
            )
            assert fine == brute, (base, alpha)


def test_canonical_equiv_examples():
    alpha = _contains_a()
    assert canonical_equiv_finite(ST, alpha) == total_congruence(alpha.target)
    assert canonical_equiv_finite(AT, alpha).is_identity()
    # PT on U1 via enumeration: both preimages are piecewise testable
    ctx = Context()
    cong = ctx.canonical_equiv(PT, alpha)
    assert cong.is_identity()


def test_enumeration_cap():
    alpha = _ab_star()
    with pytest.raises(EnumerationCapExceeded):
        canonical_equiv_enumerated(alpha, lambda rl: True, cap=3)


def test_lemma_2_13_result_is_congruence():
    # Congruence construction validates compatibility eagerly
    for base in [ST, AT, PTK(2)]:
        for alpha in [_contains_a(), _ab_star()]:
            canonical_equiv_finite(base, alpha)  # would raise if incompatible


def test_monotonicity_larger_class_coarser_relation():
    # AT included in PT included in LPOL(PT): ~D grows with the class
    ctx = Context()
    for alpha in [_contains_a(), _ab_star()]:
        at = ctx.canonical_equiv(AT, alpha)
        pt = ctx.canonical_equiv(PT, alpha)
        lp = ctx.canonical_equiv(LPOL(PT), alpha)
        for s in range(alpha.target.n):
            for t in range(alpha.target.n):
                if at.related(s, t):
                    assert pt.related(s, t)
                if pt.related(s, t):
                    assert lp.related(s, t)


def test_quotient_c_morphism_recognizes_exactly_class_languages():
    # Lemma 2.14 at desk scale for AT on the (ab)* morphism
    alpha = _ab_star()
    cong = canonical_equiv_finite(AT, alpha)
    quot = quotient_c_morphism(alpha, cong)
    ctx = Context()
    for mask in range(1 << quot.target.n):
        accept = {x for x in range(quot.target.n) if mask >> x & 1}
        from detpol.classes import _syntactic_collapse, base_membership

        rl = _syntactic_collapse(RecognizedLanguage(quot, accept))
        assert base_membership(AT, rl)


def test_quotient_c_morphism_identity_and_total():
    alpha = _ab_star()
    from detpol.monoid import identity_congruence

    quot = quotient_c_morphism(alpha, identity_congruence(alpha.target))
    assert quot.target.n == alpha.target.n
    quot = quotient_c_morphism(alpha, total_congruence(alpha.target))
    assert quot.target.n == 1
