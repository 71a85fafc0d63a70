import pytest

from detpol import dfa as dfalib
from detpol import monoid as mo
from detpol.syntactic import syntactic_morphism

U1 = mo.FiniteMonoid([[0, 1], [1, 1]], 0, names=["1", "s"])
Z2 = mo.FiniteMonoid([[0, 1], [1, 0]], 0, names=["1", "g"])
Z4 = mo.FiniteMonoid([[(i + j) % 4 for j in range(4)] for i in range(4)], 0)
TRIVIAL = mo.FiniteMonoid([[0]], 0)


def ab_star_monoid():
    return syntactic_morphism(dfalib.compile_regex("(ab)*")).morphism.target


def test_validation_rejects_bad_tables():
    with pytest.raises(ValueError):
        mo.FiniteMonoid([[0, 1], [0, 0]], 0)  # unit not neutral
    with pytest.raises(ValueError):
        mo.FiniteMonoid([[0, 1], [1, 0]], 1)  # wrong unit
    with pytest.raises(ValueError):
        # non-associative magma with a unit: 1*x = x but (x x) x != x (x x)
        mo.FiniteMonoid([[0, 1, 2], [1, 2, 1], [2, 0, 0]], 0)


def test_green_trivial_monoid():
    assert len(TRIVIAL.green().j_classes) == 1


def test_green_u1():
    g = U1.green()
    assert len(g.j_classes) == 2
    assert g.lt_j(1, 0)  # s strictly below 1


def test_green_ab_star():
    m = ab_star_monoid()
    g = m.green()
    a, ab = m.names.index("a"), m.names.index("ab")
    assert g.eq_j(a, ab)
    # brute-force witness: a = a*b*a and ab = 1*a*b computed over the table
    assert m.mul_all([a, m.names.index("b"), a]) == a


def test_lemma_2_2_on_fixtures():
    for m in [U1, Z2, Z4, TRIVIAL, ab_star_monoid()]:
        g = m.green()
        for s in range(m.n):
            for t in range(m.n):
                if g.leq_r(s, t) and g.leq_j(t, s):
                    assert g.eq_r(s, t)
                if g.leq_l(s, t) and g.leq_j(t, s):
                    assert g.eq_l(s, t)


def test_green_inclusion_j_contains_r_and_l():
    for m in [U1, Z2, Z4, ab_star_monoid()]:
        g = m.green()
        for s in range(m.n):
            for t in range(m.n):
                if g.leq_r(s, t) or g.leq_l(s, t):
                    assert g.leq_j(s, t)


def test_omega_values():
    assert Z2.omega == 2
    assert U1.omega == 1
    assert ab_star_monoid().omega == 2
    assert Z4.omega == 4


def test_omega_properties():
    for m in [U1, Z2, Z4, TRIVIAL, ab_star_monoid()]:
        w = m.omega
        for s in range(m.n):
            sw = m.power(s, w)
            assert m.mul(sw, sw) == sw
        if w > 1:
            assert any(
                m.mul(m.power(s, w - 1), m.power(s, w - 1)) != m.power(s, w - 1)
                for s in range(m.n)
            )


def test_generated_submonoid():
    assert mo.generated_submonoid(U1, set()) == {0}
    assert mo.generated_submonoid(Z4, {1}) == {0, 1, 2, 3}
    # inside U1 x U1 via an explicit product table
    elements, index, table = mo.product_closure([U1, U1], [(1, 1)])
    assert set(elements) == {(0, 0), (1, 1)}


def test_congruence_validation():
    with pytest.raises(ValueError):
        mo.Congruence(Z4, [0, 0, 1, 1])  # blocks {0,1},{2,3} not compatible
    mo.Congruence(Z4, [0, 1, 0, 1])  # mod-2 blocks are compatible


def test_quotients():
    q, proj = mo.quotient(U1, mo.identity_congruence(U1))
    assert q.n == 2 and q.table == U1.table
    q, proj = mo.quotient(U1, mo.total_congruence(U1))
    assert q.n == 1
    q, proj = mo.quotient(Z4, mo.Congruence(Z4, [0, 1, 0, 1]))
    assert q.n == 2
    for x in range(Z4.n):
        for y in range(Z4.n):
            assert proj[Z4.mul(x, y)] == q.mul(proj[x], proj[y])


def test_syntactic_congruence_of_subset():
    assert mo.syntactic_congruence_of_subset(U1, set(range(U1.n))).n_blocks == 1
    assert mo.syntactic_congruence_of_subset(U1, set()).n_blocks == 1
    m = ab_star_monoid()
    accept = {m.names.index("1"), m.names.index("ab")}
    cong = mo.syntactic_congruence_of_subset(m, accept)
    assert cong.is_identity()


def test_syntactic_congruence_brute_force():
    m = ab_star_monoid()
    accept = {m.names.index("1"), m.names.index("ab")}
    cong = mo.syntactic_congruence_of_subset(m, accept)
    for s in range(m.n):
        for t in range(m.n):
            same = all(
                (m.mul_all([x, s, y]) in accept) == (m.mul_all([x, t, y]) in accept)
                for x in range(m.n)
                for y in range(m.n)
            )
            assert cong.related(s, t) == same


def test_reverse_monoid():
    m = ab_star_monoid()
    r = m.reverse()
    for x in range(m.n):
        for y in range(m.n):
            assert r.mul(x, y) == m.mul(y, x)
