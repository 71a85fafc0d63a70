"""Idempotent semirings, nice multiplicative rating maps, imprints and the
covering reduction.

Downward-closed pair sets are held as antichains of maximal elements; the
semiring order is r <= s iff r + s = s.
"""

from dataclasses import dataclass

from . import dfa as dfalib
from .syntactic import syntactic_morphism


class Semiring:
    """Finite idempotent semiring with hashable values."""

    zero = None
    one = None

    def add(self, r, s):
        raise NotImplementedError

    def mul(self, r, s):
        raise NotImplementedError

    def leq(self, r, s):
        return self.add(r, s) == s

    def below(self, r):
        """All values <= r."""
        raise NotImplementedError

    def idempotents_below(self, r):
        return [f for f in self.below(r) if self.mul(f, f) == f]

    def size(self):
        raise NotImplementedError

    def iter_all(self):
        raise NotImplementedError

    def validate(self, exhaustive_cap=16):
        """Check the semiring laws; exhaustive when small, sampled otherwise."""
        import random

        if self.size() <= exhaustive_cap:
            elems = list(self.iter_all())
            triples = [(x, y, z) for x in elems for y in elems for z in elems]
        else:
            rng = random.Random(1)
            elems = [self.zero, self.one]
            seen = {self.zero, self.one}
            # grow a random sample closed-ish under the operations
            for _ in range(40):
                x = rng.choice(elems)
                y = rng.choice(elems)
                for z in (self.add(x, y), self.mul(x, y)):
                    if z not in seen:
                        seen.add(z)
                        elems.append(z)
            triples = [
                (rng.choice(elems), rng.choice(elems), rng.choice(elems))
                for _ in range(2000)
            ]
        for x, y, z in triples:
            if self.add(x, y) != self.add(y, x):
                raise ValueError("addition is not commutative")
            if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)):
                raise ValueError("addition is not associative")
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise ValueError("multiplication is not associative")
            if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)):
                raise ValueError("left distributivity fails")
            if self.mul(self.add(x, y), z) != self.add(self.mul(x, z), self.mul(y, z)):
                raise ValueError("right distributivity fails")
        for x in elems:
            if self.add(x, x) != x:
                raise ValueError("addition is not idempotent")
            if self.add(x, self.zero) != x:
                raise ValueError("zero is not neutral")
            if self.mul(x, self.one) != x or self.mul(self.one, x) != x:
                raise ValueError("one is not neutral")
            if self.mul(x, self.zero) != self.zero or self.mul(self.zero, x) != self.zero:
                raise ValueError("zero does not annihilate")


def _submasks(v):
    s = v
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & v


class PowersetSemiring(Semiring):
    """Subsets of a finite monoid: union as addition, lifted product as
    multiplication; values are bitmasks."""

    def __init__(self, monoid):
        self.monoid = monoid
        self.zero = 0
        self.one = 1 << monoid.unit
        self._mul_memo = {}
        self._elem_memo = {}
        self._idem_memo = {}

    def add(self, r, s):
        return r | s

    def leq(self, r, s):
        return r | s == s

    def mul(self, r, s):
        key = (r, s)
        out = self._mul_memo.get(key)
        if out is None:
            out = 0
            x = r
            while x:
                low = x & -x
                i = low.bit_length() - 1
                out |= self._elem_mul(i, s)
                x ^= low
            self._mul_memo[key] = out
        return out

    def _elem_mul(self, i, s):
        key = (i, s)
        out = self._elem_memo.get(key)
        if out is None:
            row = self.monoid.table[i]
            out = 0
            x = s
            while x:
                low = x & -x
                j = low.bit_length() - 1
                out |= 1 << row[j]
                x ^= low
            self._elem_memo[key] = out
        return out

    def below(self, r):
        return _submasks(r)

    def idempotents_below(self, r):
        out = self._idem_memo.get(r)
        if out is None:
            out = tuple(f for f in _submasks(r) if self.mul(f, f) == f)
            self._idem_memo[r] = out
        return out

    def size(self):
        return 1 << self.monoid.n

    def iter_all(self):
        return range(1 << self.monoid.n)

    def set_of(self, mask):
        return frozenset(i for i in range(self.monoid.n) if mask >> i & 1)

    def format(self, mask):
        return "{" + ",".join(self.monoid.names[i] for i in range(self.monoid.n) if mask >> i & 1) + "}"


class ProductSemiring(Semiring):
    """Componentwise product of semirings; values are tuples."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.zero = tuple(f.zero for f in self.factors)
        self.one = tuple(f.one for f in self.factors)

    def add(self, r, s):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, r, s))

    def mul(self, r, s):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, r, s))

    def leq(self, r, s):
        return all(f.leq(x, y) for f, x, y in zip(self.factors, r, s))

    def below(self, r):
        def rec(i):
            if i == len(self.factors):
                yield ()
                return
            for rest in rec(i + 1):
                for x in self.factors[i].below(r[i]):
                    yield (x,) + rest

        return rec(0)

    def idempotents_below(self, r):
        def rec(i):
            if i == len(self.factors):
                yield ()
                return
            for rest in rec(i + 1):
                for x in self.factors[i].idempotents_below(r[i]):
                    yield (x,) + rest

        return list(rec(0))

    def size(self):
        out = 1
        for f in self.factors:
            out *= f.size()
        return out

    def iter_all(self):
        def rec(i):
            if i == len(self.factors):
                yield ()
                return
            for x in self.factors[i].iter_all():
                for rest in rec(i + 1):
                    yield (x,) + rest

        return rec(0)

    def format(self, r):
        return "(" + ", ".join(f.format(x) if hasattr(f, "format") else str(x) for f, x in zip(self.factors, r)) + ")"


class TableSemiring(Semiring):
    """Explicit small semiring given by its addition and multiplication tables."""

    def __init__(self, add_table, mul_table, zero, one, validate=True):
        self.add_table = tuple(tuple(row) for row in add_table)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.n = len(self.add_table)
        self.zero = zero
        self.one = one
        if validate:
            self.validate(exhaustive_cap=64)

    def add(self, r, s):
        return self.add_table[r][s]

    def mul(self, r, s):
        return self.mul_table[r][s]

    def below(self, r):
        return [s for s in range(self.n) if self.add_table[s][r] == r]

    def size(self):
        return self.n

    def iter_all(self):
        return range(self.n)

    def format(self, r):
        return str(r)


class RatingMap:
    """Nice multiplicative rating map, given by its word-level morphism."""

    def __init__(self, semiring, alphabet, letter_value):
        self.semiring = semiring
        self.alphabet = tuple(sorted(alphabet))
        self.letter_value = dict(letter_value)
        self._eval_memo = {}

    def word(self, w):
        acc = self.semiring.one
        for a in w:
            acc = self.semiring.mul(acc, self.letter_value[a])
        return acc

    def language(self, k):
        return eval_nice(self, k)

    def realized_values(self):
        """The finite multiplicative submonoid {rho(w) : w in A*}."""
        seen = {self.semiring.one}
        queue = [self.semiring.one]
        while queue:
            v = queue.pop()
            for a in self.alphabet:
                nv = self.semiring.mul(v, self.letter_value[a])
                if nv not in seen:
                    seen.add(nv)
                    queue.append(nv)
        return seen

    def key(self):
        return (id(self.semiring), self.alphabet, tuple(sorted(self.letter_value.items())))


def rho_of_morphism(alpha):
    """Canonical rating map of a morphism: subsets of the target, direct image."""
    semiring = PowersetSemiring(alpha.target)
    return RatingMap(
        semiring,
        alpha.alphabet,
        {a: 1 << alpha.letter_image[a] for a in alpha.alphabet},
    )


def eval_nice(rho, k):
    """Value of a regular language under a nice map: the sum of the values of
    its words, computed as a (state, value) reachability fixpoint."""
    key = k
    out = rho._eval_memo.get(key)
    if out is not None:
        return out
    sr = rho.semiring
    if set(k.alphabet) - set(rho.alphabet):
        raise dfalib.AlphabetMismatch("language alphabet exceeds the rating map's")
    letter_idx = [(a, k.letter_index(a)) for a in k.alphabet]
    seen = {(k.init, sr.one)}
    queue = [(k.init, sr.one)]
    total = sr.zero
    while queue:
        q, v = queue.pop()
        if q in k.finals:
            total = sr.add(total, v)
        for a, li in letter_idx:
            nxt = (k.delta[q][li], sr.mul(v, rho.letter_value[a]))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    rho._eval_memo[key] = total
    return total


class PointedImprint:
    """Downward-closed subset of N x R held as an antichain of maximal pairs.

    eta is the reference morphism onto N; provenance tags are kept for the
    generator pairs that were explicitly added.
    """

    def __init__(self, eta, semiring):
        self.eta = eta
        self.semiring = semiring
        self.maxima = {}  # n element -> set of maximal values
        self.provenance = {}

    def add(self, n, v, tag="added"):
        """Insert the downset of (n, v); returns True if anything grew."""
        cur = self.maxima.setdefault(n, set())
        leq = self.semiring.leq
        if any(leq(v, m) for m in cur):
            return False
        for m in [m for m in cur if leq(m, v)]:
            cur.discard(m)
            self.provenance.pop((n, m), None)
        cur.add(v)
        self.provenance[(n, v)] = tag
        return True

    def contains(self, n, v):
        cur = self.maxima.get(n)
        if not cur:
            return False
        leq = self.semiring.leq
        return any(leq(v, m) for m in cur)

    def pairs(self):
        """Maximal pairs, in a deterministic order."""
        for n in sorted(self.maxima):
            for v in sorted(self.maxima[n], key=repr):
                yield (n, v)

    def idempotent_pairs(self):
        """All (e, f) in the downset with e idempotent in N and f
        multiplicatively idempotent in R."""
        table = self.eta.target.table
        out = set()
        for n, vs in self.maxima.items():
            if table[n][n] != n:
                continue
            for v in vs:
                out.update((n, f) for f in self.semiring.idempotents_below(v))
        return sorted(out, key=repr)

    def project_max(self):
        """Antichain of the R-projection (the plain optimal imprint)."""
        leq = self.semiring.leq
        out = []
        for _, v in self.pairs():
            if any(leq(v, m) for m in out):
                continue
            out = [m for m in out if not leq(m, v)] + [v]
        return out

    def project_contains(self, v):
        leq = self.semiring.leq
        return any(leq(v, m) for m in self.project_max())

    def materialize(self):
        """Full pair set; for small instances and tests only."""
        out = set()
        for n, vs in self.maxima.items():
            for v in vs:
                out.update((n, b) for b in self.semiring.below(v))
        return out

    def copy(self):
        other = PointedImprint(self.eta, self.semiring)
        other.maxima = {n: set(vs) for n, vs in self.maxima.items()}
        other.provenance = dict(self.provenance)
        return other

    def dominates(self, other):
        """Downset inclusion: other ⊆ self."""
        return all(self.contains(n, v) for n, v in other.pairs())

    def __eq__(self, other):
        return (
            isinstance(other, PointedImprint)
            and {n: frozenset(v) for n, v in self.maxima.items() if v}
            == {n: frozenset(v) for n, v in other.maxima.items() if v}
        )

    def __len__(self):
        return sum(len(v) for v in self.maxima.values())

    def format(self):
        sr = self.semiring
        names = self.eta.target.names
        lines = []
        for n, v in self.pairs():
            shown = sr.format(v) if hasattr(sr, "format") else str(v)
            lines.append(f"({names[n]}, {shown})")
        return "\n".join(lines)


def trivial_pairs(eta, rho):
    """Reachable pairs (eta(w), rho(w)); a submonoid of N x R."""
    sr = rho.semiring
    unit = (eta.target.unit, sr.one)
    gens = [(eta.letter_image[a], rho.letter_value[a]) for a in rho.alphabet]
    seen = {unit}
    queue = [unit]
    while queue:
        n, v = queue.pop()
        for gn, gv in gens:
            nxt = (eta.target.table[n][gn], sr.mul(v, gv))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


@dataclass
class CoveringInstance:
    """The rating map and goal set produced by the covering reduction."""

    rho: RatingMap
    accept_masks: tuple  # per input language, over its own coordinate
    languages: tuple

    def goal(self, value):
        """Is the value in F, i.e. does it meet every accepting set?"""
        return all(x & f for x, f in zip(value, self.accept_masks))


def covering_input(l0, others):
    """Reduction from covering to optimal-imprint computation: one powerset
    coordinate per input language (the target first), goal = tuples meeting
    every accepting set."""
    langs = [l0] + list(others)
    alphabet = l0.alphabet
    for d in langs:
        if d.alphabet != alphabet:
            raise dfalib.AlphabetMismatch("covering inputs must share an alphabet")
    recognized = [syntactic_morphism(d) for d in langs]
    factors = [PowersetSemiring(rl.morphism.target) for rl in recognized]
    semiring = ProductSemiring(factors)
    letter_value = {
        a: tuple(1 << rl.morphism.letter_image[a] for rl in recognized) for a in alphabet
    }
    accept_masks = tuple(
        sum(1 << i for i in rl.accept) for rl in recognized
    )
    return CoveringInstance(
        RatingMap(semiring, alphabet, letter_value), accept_masks, tuple(langs)
    )


def base_imprint_finite(base_expr, rho, alphabet=None):
    """Pointed imprint of a finite base: the downset of (s, rho of the class
    of s) per canonical-morphism class s, which the canonical cover realizes."""
    from .classes import canonical_morphism, is_finite_base

    if not is_finite_base(base_expr):
        raise ValueError(f"{base_expr} is not a finite base prevariety")
    if alphabet is None:
        alphabet = rho.alphabet
    eta = canonical_morphism(base_expr, alphabet)
    sr = rho.semiring
    class_value = {}
    for n, v in trivial_pairs(eta, rho):
        class_value[n] = sr.add(class_value.get(n, sr.zero), v)
    out = PointedImprint(eta, sr)
    for n, v in class_value.items():
        out.add(n, v, tag="base-class")
    return out


def imprint_from_covering(coverable, l, rho):
    """Optimal imprint over R from a covering oracle: the downset of sums over
    value sets whose preimage family cannot be covered from l.

    coverable(l, list_of_dfas) decides the covering problem for the class.
    """
    sr = rho.semiring
    realized = sorted(rho.realized_values(), key=repr)
    preimage = {}
    for q in realized:
        preimage[q] = value_preimage(rho, q)
    maxima = []
    for mask in range(1, 1 << len(realized)):
        q_set = [realized[i] for i in range(len(realized)) if mask >> i & 1]
        if not coverable(l, [preimage[q] for q in q_set]):
            total = sr.zero
            for q in q_set:
                total = sr.add(total, q)
            if not any(sr.leq(total, m) for m in maxima):
                maxima = [m for m in maxima if not sr.leq(m, total)] + [total]
    return maxima


def value_preimage(rho, value):
    """Minimal DFA of the words with exactly the given rating value."""
    sr = rho.semiring
    index = {(sr.one): 0}
    table = []
    queue = [sr.one]
    while queue:
        v = queue.pop(0)
        row = []
        for a in rho.alphabet:
            nv = sr.mul(v, rho.letter_value[a])
            if nv not in index:
                index[nv] = len(index)
                queue.append(nv)
            row.append(index[nv])
        table.append(row)
    finals = {i for v, i in index.items() if v == value}
    return dfalib.Dfa(rho.alphabet, len(index), table, 0, finals).minimal()
