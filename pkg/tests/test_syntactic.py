from detpol import dfa as dfalib
from detpol.monoid import congruence_from_pairs
from detpol.syntactic import image_language, joint_morphism, syntactic_morphism

from .conftest import brute_syntactic_classes, words_up_to


def test_contains_a_is_u1():
    rl = syntactic_morphism(dfalib.compile_regex("b*a(a|b)*"))
    m = rl.morphism.target
    assert m.n == 2
    assert rl.morphism("a") != m.unit
    assert rl.morphism("b") == m.unit
    assert rl.accept == {rl.morphism("a")}


def test_empty_language_trivial_monoid():
    rl = syntactic_morphism(dfalib.compile_regex("@", "ab"))
    assert rl.morphism.target.n == 1 and rl.accept == frozenset()


def test_ab_star_six_elements():
    rl = syntactic_morphism(dfalib.compile_regex("(ab)*"))
    m = rl.morphism.target
    assert m.n == 6
    a, b = rl.morphism("a"), rl.morphism("b")
    assert m.mul(a, a) == m.mul(b, b)  # both hit the zero
    assert rl.accept == {rl.morphism(""), rl.morphism("ab")}


def test_morphism_is_multiplicative():
    rl = syntactic_morphism(dfalib.compile_regex("(ab)*"))
    for u in words_up_to("ab", 4):
        for v in words_up_to("ab", 3):
            assert rl.morphism(u + v) == rl.morphism.target.mul(rl.morphism(u), rl.morphism(v))


def test_brute_force_syntactic_classes_agree():
    for pattern in ["(ab)*", "b*a(a|b)*", "a*b*", "(b|ab)*(a|%)"]:
        lang = dfalib.compile_regex(pattern, "ab")
        rl = syntactic_morphism(lang)
        reps, index, signature = brute_syntactic_classes(lang, "ab", 12)
        assert len(reps) == rl.morphism.target.n
        # words with equal signatures map to equal elements and vice versa
        for u in reps:
            for v in reps:
                assert (signature(u) == signature(v)) == (rl.morphism(u) == rl.morphism(v))


def test_syntactic_minimality_no_proper_quotient_recognizes():
    for pattern in ["(ab)*", "b*a(a|b)*", "a*b*"]:
        rl = syntactic_morphism(dfalib.compile_regex(pattern, "ab"))
        m = rl.morphism.target
        for x in range(m.n):
            for y in range(x + 1, m.n):
                try:
                    cong = congruence_from_pairs(m, [(x, y)])
                except ValueError:
                    continue  # the generated partition is not even a congruence
                saturates = all(
                    all((b in rl.accept) == (block[0] in rl.accept) for b in block)
                    for block in cong.blocks
                )
                assert not saturates, f"{pattern}: proper quotient via ({x},{y})"


def test_image_language():
    rl = syntactic_morphism(dfalib.compile_regex("b*a(a|b)*"))
    assert image_language(rl, set(range(rl.morphism.target.n))) == dfalib.universal("ab")
    assert image_language(rl, set()) == dfalib.empty("ab")
    b_star = image_language(rl, {rl.morphism.target.unit})
    for w in words_up_to("ab", 6):
        assert b_star.accepts(w) == ("a" not in w)


def test_joint_morphism_recognizes_inputs():
    a_star = syntactic_morphism(dfalib.compile_regex("a*", "ab"))
    b_star = syntactic_morphism(dfalib.compile_regex("b*", "ab"))
    joint, projections = joint_morphism([a_star.morphism, b_star.morphism])
    for rl, proj in zip([a_star, b_star], projections):
        accept = {x for x in range(joint.target.n) if proj[x] in rl.accept}
        lang = joint.image_dfa(accept)
        for w in words_up_to("ab", 6):
            assert lang.accepts(w) == rl.contains(w)


def test_joint_morphism_single_input_isomorphic():
    rl = syntactic_morphism(dfalib.compile_regex("(ab)*"))
    joint, _ = joint_morphism([rl.morphism])
    assert joint.target.n == rl.morphism.target.n


def test_joint_morphism_duplicate_input_isomorphic():
    rl = syntactic_morphism(dfalib.compile_regex("(ab)*"))
    joint, _ = joint_morphism([rl.morphism, rl.morphism])
    assert joint.target.n == rl.morphism.target.n


def test_witness_words():
    rl = syntactic_morphism(dfalib.compile_regex("(ab)*"))
    for elt, word in rl.morphism.witness.items():
        assert rl.morphism(word) == elt
