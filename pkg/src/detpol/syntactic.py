"""Morphisms from the free monoid onto finite monoids, and the syntactic
morphism of a regular language.
"""

from . import dfa as dfalib
from .dfa import AlphabetMismatch, Dfa
from .monoid import (
    FiniteMonoid,
    generated_submonoid,
    product_closure,
    quotient,
    syntactic_congruence_of_subset,
)


class MonoidMorphism:
    """Surjective morphism A* -> M given by letter images.

    Each target element carries a shortest witness word (BFS order), used for
    dumps and witness extraction.
    """

    __slots__ = ("alphabet", "target", "letter_image", "witness")

    def __init__(self, alphabet, target, letter_image, validate=True):
        self.alphabet = tuple(alphabet)
        self.target = target
        self.letter_image = dict(letter_image)
        if validate:
            reach = generated_submonoid(target, set(self.letter_image.values()))
            if len(reach) != target.n:
                raise ValueError("morphism is not surjective onto its target")
        self.witness = self._witnesses()

    def _witnesses(self):
        out = {self.target.unit: ""}
        queue = [self.target.unit]
        while queue:
            x = queue.pop(0)
            for a in self.alphabet:
                y = self.target.table[x][self.letter_image[a]]
                if y not in out:
                    out[y] = out[x] + a
                    queue.append(y)
        return out

    def __call__(self, word):
        acc = self.target.unit
        table = self.target.table
        img = self.letter_image
        for a in word:
            try:
                acc = table[acc][img[a]]
            except KeyError:
                raise AlphabetMismatch(f"letter {a!r} not in alphabet {self.alphabet}") from None
        return acc

    def image_dfa(self, accept):
        """Minimal DFA of the preimage of the accepting set."""
        accept = frozenset(accept)
        n = self.target.n
        delta = [
            [self.target.table[q][self.letter_image[a]] for a in self.alphabet]
            for q in range(n)
        ]
        return Dfa(self.alphabet, n, delta, self.target.unit, accept).minimal()

    def key(self):
        """Hashable identity: alphabet, table, unit and letter images."""
        return (
            self.alphabet,
            self.target.table,
            self.target.unit,
            tuple(self.letter_image[a] for a in self.alphabet),
        )

    def __repr__(self):
        return f"<MonoidMorphism {''.join(self.alphabet)} -> {self.target.n} elements>"


class RecognizedLanguage:
    """A morphism together with an accepting subset of its target."""

    __slots__ = ("morphism", "accept")

    def __init__(self, morphism, accept):
        self.morphism = morphism
        self.accept = frozenset(accept)

    def contains(self, word):
        return self.morphism(word) in self.accept

    def to_dfa(self):
        return self.morphism.image_dfa(self.accept)

    def key(self):
        return (self.morphism.key(), self.accept)


def transition_monoid(d):
    """Transformation monoid of a DFA; returns (FiniteMonoid, letter image map)."""
    ident = tuple(range(d.n))
    maps = {ident: 0}
    elements = [ident]
    letter_image = {}
    queue = [ident]
    letter_maps = {
        a: tuple(d.delta[q][li] for q in range(d.n)) for li, a in enumerate(d.alphabet)
    }

    def compose(f, g):
        return tuple(g[f[q]] for q in range(d.n))

    for a, fa in letter_maps.items():
        if fa not in maps:
            maps[fa] = len(elements)
            elements.append(fa)
            queue.append(fa)
        letter_image[a] = maps[fa]
    while queue:
        f = queue.pop(0)
        for fa in letter_maps.values():
            g = compose(f, fa)
            if g not in maps:
                maps[g] = len(elements)
                elements.append(g)
                queue.append(g)
    table = [[maps[compose(f, g)] for g in elements] for f in elements]
    monoid = FiniteMonoid(table, 0, validate=False)
    accept = frozenset(i for i, f in enumerate(elements) if f[d.init] in d.finals)
    return monoid, letter_image, accept


def syntactic_morphism(d):
    """Syntactic morphism of the language of d, as a RecognizedLanguage.

    Computed as the transition monoid of the minimal DFA collapsed by the
    syntactic congruence of its accepting set.
    """
    d = d.minimal()
    monoid, letter_image, accept = transition_monoid(d)
    cong = syntactic_congruence_of_subset(monoid, accept)
    collapsed, proj = quotient(monoid, cong)
    morphism = MonoidMorphism(
        d.alphabet, collapsed, {a: proj[i] for a, i in letter_image.items()}, validate=False
    )
    morphism.target.names = tuple(
        morphism.witness[x] if morphism.witness[x] else "1" for x in range(collapsed.n)
    )
    return RecognizedLanguage(morphism, {proj[i] for i in accept})


def image_language(rl, accept):
    """Minimal DFA of the preimage of a subset of the target."""
    if not frozenset(accept) <= frozenset(range(rl.morphism.target.n)):
        raise ValueError("accepting set exceeds the target")
    return rl.morphism.image_dfa(accept)


def joint_morphism(morphisms):
    """Surjective restriction of the product morphism.

    Returns (morphism, projections) where projections[i] maps each element of
    the joint target to its i-th coordinate, so the joint morphism recognizes
    every language each input recognizes.
    """
    if not morphisms:
        raise ValueError("need at least one morphism")
    alphabet = morphisms[0].alphabet
    if any(m.alphabet != alphabet for m in morphisms):
        raise AlphabetMismatch("joint morphism needs a common alphabet")
    targets = [m.target for m in morphisms]
    gens = [tuple(m.letter_image[a] for m in morphisms) for a in alphabet]
    elements, index, table = product_closure(targets, gens)
    unit = tuple(t.unit for t in targets)
    joint = FiniteMonoid(table, index[unit], validate=False)
    letter_image = {a: index[g] for a, g in zip(alphabet, gens)}
    morphism = MonoidMorphism(alphabet, joint, letter_image, validate=False)
    projections = [tuple(e[i] for e in elements) for i in range(len(morphisms))]
    return morphism, projections
