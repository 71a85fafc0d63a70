"""Finite monoids: multiplication tables, Green's relations, omega powers,
congruences and quotients.

Elements are dense indices 0..n-1; tables are row-major (table[s][t] = s*t).
"""

from math import gcd


class FiniteMonoid:
    __slots__ = ("n", "table", "unit", "names", "_omega", "_green")

    def __init__(self, table, unit, names=None, validate=True):
        self.table = tuple(tuple(row) for row in table)
        self.n = len(self.table)
        self.unit = unit
        self.names = tuple(names) if names else tuple(str(i) for i in range(self.n))
        self._omega = None
        self._green = None
        if validate:
            self._validate()

    def _validate(self):
        n, t, e = self.n, self.table, self.unit
        if any(len(row) != n for row in t):
            raise ValueError("table is not square")
        if any(t[e][x] != x or t[x][e] != x for x in range(n)):
            raise ValueError("unit is not neutral")
        if n <= 64:
            triples = ((x, y, z) for x in range(n) for y in range(n) for z in range(n))
        else:
            import random

            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(200000))
        for x, y, z in triples:
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValueError(f"not associative at ({x},{y},{z})")

    def mul(self, x, y):
        return self.table[x][y]

    def mul_all(self, elements):
        acc = self.unit
        for x in elements:
            acc = self.table[acc][x]
        return acc

    def power(self, x, k):
        acc = self.unit
        base = x
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    def idempotents(self):
        return [x for x in range(self.n) if self.table[x][x] == x]

    @property
    def omega(self):
        """Least k >= 1 with x^k idempotent for every element x."""
        if self._omega is None:
            self._omega = _omega_of(self)
        return self._omega

    def omega_power(self, x):
        return self.power(x, self.omega)

    def green(self):
        if self._green is None:
            self._green = _green_of(self)
        return self._green

    def is_j_trivial(self):
        g = self.green()
        return all(len(c) == 1 for c in g.j_classes)

    def reverse(self):
        """Opposite monoid (multiplication order swapped)."""
        t = self.table
        return FiniteMonoid(
            [[t[y][x] for y in range(self.n)] for x in range(self.n)],
            self.unit,
            names=self.names,
            validate=False,
        )

    def __repr__(self):
        return f"<FiniteMonoid n={self.n}>"


def _omega_of(m):
    lcm = 1
    max_tail = 1
    for x in range(m.n):
        seen = {}
        cur = x
        i = 1
        while cur not in seen:
            seen[cur] = i
            cur = m.table[cur][x]
            i += 1
        tail = seen[cur]
        period = i - seen[cur]
        lcm = lcm * period // gcd(lcm, period)
        max_tail = max(max_tail, tail)
    k = lcm
    while k < max_tail:
        k += lcm
    return k


class GreenData:
    """Preorders <=R, <=L, <=J as sets-of-below, plus their classes."""

    __slots__ = ("below_r", "below_l", "below_j", "r_class", "l_class", "j_class",
                 "r_classes", "l_classes", "j_classes")

    def __init__(self, below_r, below_l, below_j):
        self.below_r = below_r
        self.below_l = below_l
        self.below_j = below_j
        self.r_class, self.r_classes = _classes_of(below_r)
        self.l_class, self.l_classes = _classes_of(below_l)
        self.j_class, self.j_classes = _classes_of(below_j)

    def leq_r(self, s, t):
        """s <=R t, i.e. s = t*r for some r."""
        return s in self.below_r[t]

    def leq_l(self, s, t):
        return s in self.below_l[t]

    def leq_j(self, s, t):
        return s in self.below_j[t]

    def lt_r(self, s, t):
        return self.leq_r(s, t) and not self.leq_r(t, s)

    def lt_l(self, s, t):
        return self.leq_l(s, t) and not self.leq_l(t, s)

    def lt_j(self, s, t):
        return self.leq_j(s, t) and not self.leq_j(t, s)

    def eq_r(self, s, t):
        return self.r_class[s] == self.r_class[t]

    def eq_l(self, s, t):
        return self.l_class[s] == self.l_class[t]

    def eq_j(self, s, t):
        return self.j_class[s] == self.j_class[t]


def _classes_of(below):
    n = len(below)
    cls = [-1] * n
    classes = []
    for s in range(n):
        if cls[s] >= 0:
            continue
        group = [t for t in range(n) if t in below[s] and s in below[t]]
        for t in group:
            cls[t] = len(classes)
        classes.append(tuple(group))
    return cls, classes


def _green_of(m):
    n, t = m.n, m.table
    below_r = [frozenset(t[s][r] for r in range(n)) for s in range(n)]
    below_l = [frozenset(t[q][s] for q in range(n)) for s in range(n)]
    below_j = []
    for s in range(n):
        ideal = set()
        for q in range(n):
            qs = t[q][s]
            ideal.update(t[qs][r] for r in range(n))
        below_j.append(frozenset(ideal))
    return GreenData(below_r, below_l, below_j)


def green(m):
    return m.green()


def generated_submonoid(m, generators):
    """Least subset of m containing the unit and generators, closed under product."""
    out = {m.unit}
    out.update(generators)
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for g in generators:
            for y in (m.table[x][g], m.table[g][x]):
                if y not in out:
                    out.add(y)
                    frontier.append(y)
    return frozenset(out)


class Congruence:
    """Multiplication-compatible partition of a monoid's elements."""

    __slots__ = ("monoid", "block_of", "blocks")

    def __init__(self, monoid, block_of, validate=True):
        self.monoid = monoid
        # renumber blocks by first occurrence for a canonical form
        remap = {}
        canon = []
        for b in block_of:
            if b not in remap:
                remap[b] = len(remap)
            canon.append(remap[b])
        self.block_of = tuple(canon)
        nb = len(remap)
        members = [[] for _ in range(nb)]
        for x, b in enumerate(self.block_of):
            members[b].append(x)
        self.blocks = tuple(tuple(b) for b in members)
        if validate:
            self._validate()

    def _validate(self):
        m, blk = self.monoid, self.block_of
        prod = {}
        for x in range(m.n):
            for y in range(m.n):
                key = (blk[x], blk[y])
                val = blk[m.table[x][y]]
                if prod.setdefault(key, val) != val:
                    raise ValueError("partition is not multiplication-compatible")

    @property
    def n_blocks(self):
        return len(self.blocks)

    def related(self, x, y):
        return self.block_of[x] == self.block_of[y]

    def pairs(self):
        """All related pairs (x, y), including the diagonal."""
        for block in self.blocks:
            for x in block:
                for y in block:
                    yield (x, y)

    def is_identity(self):
        return self.n_blocks == self.monoid.n

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)


def identity_congruence(m):
    return Congruence(m, range(m.n), validate=False)


def total_congruence(m):
    return Congruence(m, [0] * m.n, validate=False)


def congruence_from_pairs(m, pairs):
    """Finest congruence relating the given pairs (reflexive-transitive closure
    of the pair relation; compatibility is validated, not forced)."""
    parent = list(range(m.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx_, ry = find(x), find(y)
        if rx_ != ry:
            parent[rx_] = ry
    return Congruence(m, [find(x) for x in range(m.n)])


def quotient(m, cong):
    """Quotient monoid and the projection map element -> block index."""
    if cong.monoid is not m and cong.monoid.table != m.table:
        raise ValueError("congruence belongs to a different monoid")
    blk = cong.block_of
    reps = [block[0] for block in cong.blocks]
    table = [[blk[m.table[x][y]] for y in reps] for x in reps]
    names = ["|".join(m.names[x] for x in block) for block in cong.blocks]
    q = FiniteMonoid(table, blk[m.unit], names=names, validate=False)
    return q, blk


def syntactic_congruence_of_subset(m, accept):
    """Coarsest congruence saturating the subset: s ~ t iff for all x, y,
    x*s*y in accept <-> x*t*y in accept."""
    accept = frozenset(accept)
    t = m.table
    n = m.n
    sig = {}
    blocks = [0] * n
    for s in range(n):
        key = frozenset(
            (x, y) for x in range(n) for y in range(n) if t[t[x][s]][y] in accept
        )
        if key not in sig:
            sig[key] = len(sig)
        blocks[s] = sig[key]
    return Congruence(m, blocks, validate=False)


def product_closure(monoids, generator_tuples, units=None):
    """Submonoid of a direct product generated by the given element tuples.

    Returns (element list, index map, table) where elements are tuples.
    """
    unit = tuple(m.unit for m in monoids) if units is None else tuple(units)
    index = {unit: 0}
    elements = [unit]
    queue = [unit]
    gens = [tuple(g) for g in generator_tuples]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = tuple(m.table[xi][gi] for m, xi, gi in zip(monoids, x, g))
            if y not in index:
                index[y] = len(index)
                elements.append(y)
                queue.append(y)
    table = []
    for x in elements:
        row = []
        for y in elements:
            z = tuple(m.table[xi][yi] for m, xi, yi in zip(monoids, x, y))
            row.append(index[z])
        table.append(row)
    return elements, index, table
