"""Distinguished position sets, snapshots, the three word equivalences, and
marked-product classification.

Position conventions: a word w of length L has labeled positions 1..L and
artificial endpoints 0 and L+1; w(i, j) is the infix strictly between i and j.
"""

from dataclasses import dataclass
from itertools import combinations

from . import dfa as dfalib
from .dfa import Dfa
from .syntactic import RecognizedLanguage

MODES = ("left", "right", "mixed")


def infix_images(eta, word):
    """img[i][j] = eta(w(i, j)) for 0 <= i < j <= len(word)+1."""
    n = len(word)
    table = eta.target.table
    img = {}
    for i in range(n + 1):
        acc = eta.target.unit
        img[(i, i + 1)] = acc
        for j in range(i + 2, n + 2):
            acc = table[acc][eta.letter_image[word[j - 2]]]
            img[(i, j)] = acc
    return img


def marked_positions(eta, k, word, mode):
    """The inductively distinguished subset of labeled positions."""
    if mode == "mixed":
        return sorted(
            set(marked_positions(eta, k, word, "left"))
            | set(marked_positions(eta, k, word, "right"))
        )
    n = len(word)
    img = infix_images(eta, word)
    g = eta.target.green()
    table = eta.target.table
    current = set()
    for _ in range(k):
        prev = current
        current = set(prev)
        if mode == "left":
            anchors = prev | {0}
            for i in range(1, n + 1):
                if i in current:
                    continue
                ai = eta.letter_image[word[i - 1]]
                for j in anchors:
                    if j < i and g.lt_r(table[img[(j, i)]][ai], img[(j, i)]):
                        current.add(i)
                        break
        else:
            anchors = prev | {n + 1}
            for i in range(1, n + 1):
                if i in current:
                    continue
                ai = eta.letter_image[word[i - 1]]
                for j in anchors:
                    if i < j and g.lt_l(table[ai][img[(i, j)]], img[(i, j)]):
                        current.add(i)
                        break
        if current == prev:
            break
    return sorted(current)


def snapshot(eta, word, positions):
    """Alternating tuple of gap images and the labels of the positions."""
    n = len(word)
    if any(not 1 <= i <= n for i in positions):
        raise ValueError("positions must be labeled positions of the word")
    pts = [0] + sorted(positions) + [n + 1]
    img = infix_images(eta, word)
    out = [img[(pts[0], pts[1])]]
    for h in range(1, len(pts) - 1):
        out.append(word[pts[h] - 1])
        out.append(img[(pts[h], pts[h + 1])])
    return tuple(out)


def mode_snapshot(eta, k, word, mode):
    return snapshot(eta, word, marked_positions(eta, k, word, mode))


def equivalent(eta, k, mode, u, v):
    """Same snapshot over the canonical position sets of both words."""
    return mode_snapshot(eta, k, u, mode) == mode_snapshot(eta, k, v, mode)


def equivalent_existential(eta, k, mode, u, v):
    """Alternate test: some subset of v's labeled positions matches u's
    canonical snapshot.  Agrees with the direct test."""
    target = mode_snapshot(eta, k, u, mode)
    want = (len(target) - 1) // 2
    for subset in combinations(range(1, len(v) + 1), want):
        if snapshot(eta, v, subset) == target:
            return True
    return False


@dataclass(frozen=True)
class MarkedProduct:
    """The language parts[0] a_1 parts[1] ... a_n parts[n]."""

    parts: tuple  # of Dfa
    letters: tuple  # of str

    def __post_init__(self):
        if len(self.parts) != len(self.letters) + 1:
            raise ValueError("need one more part than marked letters")
        for p in self.parts[1:]:
            if p.alphabet != self.parts[0].alphabet:
                raise dfalib.AlphabetMismatch("marked product parts disagree on alphabet")

    @property
    def alphabet(self):
        return self.parts[0].alphabet

    def language(self):
        out = self.parts[0]
        for letter, part in zip(self.letters, self.parts[1:]):
            out = dfalib.concat(out, part, letter=letter)
        return out

    def prefix_language(self, i):
        """parts[0] a_1 ... a_{i-1} parts[i-1] for the i-th marked letter."""
        out = self.parts[0]
        for h in range(i - 1):
            out = dfalib.concat(out, self.parts[h + 1], letter=self.letters[h])
        return out

    def suffix_language(self, i):
        """parts[i] a_{i+1} ... a_n parts[n] for the i-th marked letter."""
        out = self.parts[i]
        for h in range(i, len(self.letters)):
            out = dfalib.concat(out, self.parts[h + 1], letter=self.letters[h])
        return out


def class_as_product(eta, k, mode, word):
    """The mode-equivalence class of the word, as a marked product of
    preimage languages read off its snapshot."""
    positions = marked_positions(eta, k, word, mode)
    snap = snapshot(eta, word, positions)
    parts = [eta.image_dfa({snap[0]})]
    letters = []
    for h in range(1, len(snap), 2):
        letters.append(snap[h])
        parts.append(eta.image_dfa({snap[h + 1]}))
    return MarkedProduct(tuple(parts), tuple(letters))


@dataclass
class ProductFlags:
    left_det: bool
    right_det: bool
    mixed_det: bool
    unambiguous: bool


def classify_product(product):
    """Determinism flags per the per-letter emptiness tests, plus an
    unambiguity decision by two-track search."""
    n = len(product.letters)
    alphabet = product.alphabet
    astar = dfalib.universal(alphabet)
    left_ok = []
    right_ok = []
    for i in range(1, n + 1):
        li = product.prefix_language(i)
        a = product.letters[i - 1]
        bad = dfalib.intersection(li, dfalib.concat(li, astar, letter=a))
        left_ok.append(bad.is_empty())
        ri = product.suffix_language(i)
        bad = dfalib.intersection(ri, dfalib.concat(astar, ri, letter=a))
        right_ok.append(bad.is_empty())
    return ProductFlags(
        left_det=all(left_ok),
        right_det=all(right_ok),
        mixed_det=all(l or r for l, r in zip(left_ok, right_ok)),
        unambiguous=_unambiguous(product),
    )


def _layered_edges(product):
    """NFA of the product: states (layer, dfa state); edges per letter are the
    in-layer move plus the layer advance when the layer accepts its part."""
    n = len(product.letters)

    def edges(state, letter):
        layer, q = state
        part = product.parts[layer]
        li = part.letter_index(letter)
        out = [(layer, part.delta[q][li])]
        if layer < n and q in part.finals and letter == product.letters[layer]:
            out.append((layer + 1, product.parts[layer + 1].init))
        return out

    return edges


def _unambiguous(product):
    """A word has two accepting decompositions iff the two-track product of
    the layered automaton reaches an accepting pair off the diagonal run."""
    n = len(product.letters)
    edges = _layered_edges(product)
    start = (0, product.parts[0].init)

    def accepting(state):
        layer, q = state
        return layer == n and q in product.parts[n].finals

    seen = {(start, start, False)}
    stack = [(start, start, False)]
    while stack:
        p, q, split = stack.pop()
        if split and accepting(p) and accepting(q):
            return False
        for letter in product.alphabet:
            for p2 in edges(p, letter):
                for q2 in edges(q, letter):
                    nxt = (p2, q2, split or p2 != q2)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return True
