"""Pair relations and the canonical equivalence of a class on a morphism's
target, together with the quotient morphism.
"""

from .classes import canonical_morphism, is_finite_base
from .monoid import Congruence, congruence_from_pairs, product_closure, quotient
from .syntactic import MonoidMorphism


class EnumerationCapExceeded(RuntimeError):
    pass


def c_pairs_finite(eta, alpha):
    """Pair relation for a finite base given by its canonical morphism:
    {(alpha(u), alpha(v)) : eta(u) = eta(v)} computed from reachable pairs."""
    if eta.alphabet != alpha.alphabet:
        raise ValueError("morphisms must share an alphabet")
    gens = [(eta.letter_image[a], alpha.letter_image[a]) for a in alpha.alphabet]
    reachable, _, _ = product_closure([eta.target, alpha.target], gens)
    by_class = {}
    for n_elt, m_elt in reachable:
        by_class.setdefault(n_elt, set()).add(m_elt)
    pairs = set()
    for group in by_class.values():
        for s in group:
            for t in group:
                pairs.add((s, t))
    return pairs


def canonical_equiv_finite(base, alpha):
    """~C for a finite base: the equivalence generated by the pair relation."""
    eta = canonical_morphism(base, alpha.alphabet)
    return congruence_from_pairs(alpha.target, c_pairs_finite(eta, alpha))


def canonical_equiv_enumerated(alpha, member, cap=16):
    """~C by brute force: enumerate accepting sets F of the target, test the
    preimage for class membership via the callback, and split elements by
    their membership vector across the good sets.

    member(rl) decides membership of a recognized language in the class; it is
    handed languages whose morphism is already collapsed to the syntactic one.
    """
    from .classes import _syntactic_collapse
    from .syntactic import RecognizedLanguage

    m = alpha.target
    if m.n > cap:
        raise EnumerationCapExceeded(
            f"target has {m.n} elements, enumeration cap is {cap}"
        )
    signatures = [[] for _ in range(m.n)]
    for mask in range(1 << m.n):
        accept = frozenset(x for x in range(m.n) if mask >> x & 1)
        rl = RecognizedLanguage(alpha, accept)
        if member(_syntactic_collapse(rl)):
            for x in range(m.n):
                signatures[x].append(mask >> x & 1)
    index = {}
    blocks = []
    for x in range(m.n):
        key = tuple(signatures[x])
        if key not in index:
            index[key] = len(index)
        blocks.append(index[key])
    return Congruence(m, blocks)


def quotient_c_morphism(alpha, cong):
    """Compose alpha with the projection onto the quotient by the congruence."""
    collapsed, proj = quotient(alpha.target, cong)
    return MonoidMorphism(
        alpha.alphabet,
        collapsed,
        {a: proj[i] for a, i in alpha.letter_image.items()},
        validate=False,
    )
