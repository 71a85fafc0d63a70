"""Saturation fixpoints for the polynomial-closure covering problems, the
recursive imprint evaluation for class towers over finite bases, covering and
separation decisions, and witness extraction.
"""

from dataclasses import dataclass

from . import dfa as dfalib
from .classes import (
    Base,
    ClassExprError,
    Op,
    canonical_morphism,
    is_finite_base,
    parse_class,
    render_class,
)
from .rating import (
    PointedImprint,
    base_imprint_finite,
    covering_input,
    eval_nice,
    rho_of_morphism,
    trivial_pairs,
)
from .wordstruct import MarkedProduct, class_as_product


class UnsupportedClassError(ClassExprError):
    pass


def _close_multiplication(imprint):
    """Close the antichain under componentwise products (the downset of the
    result is then multiplication-closed)."""
    table = imprint.eta.target.table
    mul = imprint.semiring.mul
    frontier = list(imprint.pairs())
    while frontier:
        n1, v1 = frontier.pop()
        for n2, v2 in list(imprint.pairs()):
            for n, v in ((table[n1][n2], mul(v1, v2)), (table[n2][n1], mul(v2, v1))):
                if imprint.add(n, v, tag="product"):
                    frontier.append((n, v))


def saturate_lrpol(mode, p_imprint, eta, rho):
    """Least (LPol, P)- or (RPol, P)-saturated subset of N x R: trivial
    elements closed under downset, multiplication, and the one-sided
    idempotent absorption rule."""
    if mode not in ("L", "R"):
        raise ValueError("mode must be 'L' or 'R'")
    sr = rho.semiring
    table = eta.target.table
    g = eta.target.green()
    out = PointedImprint(eta, sr)
    for n, v in trivial_pairs(eta, rho):
        out.add(n, v, tag="trivial")
    p_pairs = list(p_imprint.pairs())
    while True:
        _close_multiplication(out)
        grew = False
        for e, f in out.idempotent_pairs():
            for s, r in p_pairs:
                if mode == "L":
                    if g.leq_r(e, s):
                        if out.add(table[e][s], sr.mul(f, r), tag="rule-9.1"):
                            grew = True
                else:
                    if g.leq_l(e, s):
                        if out.add(table[s][e], sr.mul(r, f), tag="rule-9.2"):
                            grew = True
        if not grew:
            return out


def compute_blocks(p1, p, p2):
    """All block pairs with a stored decomposition: left part from P1 with an
    idempotent flank, middle from P, right part from P2 with an idempotent
    flank, the flanks J-equivalent to the product."""
    eta = p.eta
    n_monoid = eta.target
    table = n_monoid.table
    g = n_monoid.green()
    sr = p.semiring
    mul = sr.mul

    left = {}
    for s1, r1 in p1.pairs():
        for e1, f1 in p1.idempotent_pairs():
            key = (table[s1][e1], mul(r1, f1), g.j_class[e1])
            left.setdefault(key, ((n_monoid.names[s1], n_monoid.names[e1])))
    right = {}
    for s2, r2 in p2.pairs():
        for e2, f2 in p2.idempotent_pairs():
            key = (table[e2][s2], mul(f2, r2), g.j_class[e2])
            right.setdefault(key, ((n_monoid.names[e2], n_monoid.names[s2])))

    middle = {}
    for (x, q, c), wit in left.items():
        for s3, r3 in p.pairs():
            key = (table[x][s3], mul(q, r3), c)
            middle.setdefault(key, wit + (n_monoid.names[s3],))

    blocks = {}
    for (y, u, c), wit in middle.items():
        for (z, t, c2), wit2 in right.items():
            if c2 != c:
                continue
            s = table[y][z]
            if g.j_class[s] != c:
                continue
            blocks.setdefault((s, mul(u, t)), wit + wit2)
    # keep only value-maximal blocks per monoid element
    pruned = {}
    by_elt = {}
    for (s, r), wit in blocks.items():
        cur = by_elt.setdefault(s, [])
        if any(sr.leq(r, m) for m in cur):
            continue
        cur[:] = [m for m in cur if not sr.leq(m, r)] + [r]
    for (s, r), wit in blocks.items():
        if r in by_elt.get(s, []):
            pruned[(s, r)] = wit
    return pruned


def saturate_mpol(p1, p, p2, eta, rho):
    """Least (MPol, P1, P, P2)-saturated subset: trivial elements plus every
    alternating block/middle chain, closed under downset and multiplication.

    The unbounded chain rule is a reachability fixpoint over states
    (accumulated pair, preceding block element); the chain inputs are fixed,
    so one pass followed by a multiplication closure suffices.
    """
    sr = rho.semiring
    table = eta.target.table
    g = eta.target.green()
    out = PointedImprint(eta, sr)
    for n, v in trivial_pairs(eta, rho):
        out.add(n, v, tag="trivial")

    blocks = compute_blocks(p1, p, p2)
    block_list = sorted(blocks, key=repr)
    p_pairs = list(p.pairs())

    seen = set()
    queue = []
    for t, u in block_list:
        state = (t, u, t)
        if state not in seen:
            seen.add(state)
            queue.append(state)
        out.add(t, u, tag="rule-10.1")
    while queue:
        acc_n, acc_r, prev = queue.pop()
        for s_p, r_p in p_pairs:
            if not g.eq_j(table[prev][s_p], prev):
                continue
            for t, u in block_list:
                if not g.eq_j(table[s_p][t], t):
                    continue
                n2 = table[table[acc_n][s_p]][t]
                r2 = sr.mul(sr.mul(acc_r, r_p), u)
                out.add(n2, r2, tag="rule-10.1")
                state = (n2, r2, t)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    _close_multiplication(out)
    return out


def tower_base(expr):
    """The base of a pure LPOL/RPOL/MPOL tower; raises if not a tower."""
    while isinstance(expr, Op):
        if expr.op == "UPOL":
            raise UnsupportedClassError("no covering fixpoint for UPOL layers")
        expr = expr.inner
    if isinstance(expr, Base):
        return expr
    raise UnsupportedClassError(f"covering only supports operator towers, not {expr}")


def substitute_base(expr, new_base):
    if isinstance(expr, Base):
        return new_base
    return Op(expr.op, substitute_base(expr.inner, new_base))


def imprint_for_class(expr, rho, ptk_level=3, cache=None):
    """Pointed imprint of a tower over a finite base; a PT base is replaced by
    the descending PTK approximation.  Returns (imprint, exact flag)."""
    base = tower_base(expr)
    exact = True
    if base.name == "PT":
        expr = substitute_base(expr, Base("PTK", ptk_level))
        base = Base("PTK", ptk_level)
        exact = False
    eta = canonical_morphism(base, rho.alphabet)
    if cache is None:
        cache = {}

    def rec(e):
        key = render_class(e)
        if key in cache:
            return cache[key]
        if isinstance(e, Base):
            out = base_imprint_finite(e, rho)
        elif e.op in ("LPOL", "RPOL"):
            inner = rec(e.inner)
            out = saturate_lrpol("L" if e.op == "LPOL" else "R", inner, eta, rho)
        elif e.op == "MPOL":
            inner = rec(e.inner)
            p1 = rec(Op("LPOL", e.inner))
            p2 = rec(Op("RPOL", e.inner))
            out = saturate_mpol(p1, inner, p2, eta, rho)
        else:
            raise UnsupportedClassError(f"unsupported layer {e.op}")
        cache[key] = out
        return out

    return rec(expr), exact


@dataclass
class CoverReport:
    verdict: str  # coverable | not_coverable | unknown_at_approximation
    certified: str  # exact | approx-sound
    class_expr: str
    imprint_size: int
    ptk_level: int = 0

    @property
    def coverable(self):
        return self.verdict == "coverable"


def decide_covering(expr, l0, others, ptk_level=3, cache=None):
    """Covering decision through the imprint fixpoints; a PT base demotes
    negative answers to unknown (the PTK approximation only certifies
    coverable verdicts)."""
    if isinstance(expr, str):
        expr = parse_class(expr)
    instance = covering_input(l0, others)
    imprint, exact = imprint_for_class(expr, instance.rho, ptk_level, cache=cache)
    hit = any(instance.goal(v) for v in imprint.project_max())
    if not hit:
        verdict = "coverable"
    elif exact:
        verdict = "not_coverable"
    else:
        verdict = "unknown_at_approximation"
    return CoverReport(
        verdict=verdict,
        certified="exact" if exact else "approx-sound",
        class_expr=render_class(expr),
        imprint_size=len(imprint),
        ptk_level=0 if exact else ptk_level,
    )


def decide_separation(expr, l1, l2, ptk_level=3, cache=None):
    """L1 separable from L2 within the class iff (L1, {L2}) is coverable."""
    return decide_covering(expr, l1, [l2], ptk_level=ptk_level, cache=cache)


class _SaturatedMonoid:
    """Fully materialized saturated set, viewed as a finite monoid of pairs;
    supports the Green-style stabilization tests of the cover extraction."""

    def __init__(self, imprint):
        self.eta = imprint.eta
        self.sr = imprint.semiring
        self.pairs = sorted(imprint.materialize(), key=repr)
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self._ideal = {}

    def mul(self, p, q):
        return (
            self.eta.target.table[p[0]][q[0]],
            self.sr.mul(p[1], q[1]),
        )

    def contains(self, p):
        return p in self.index

    def ideal(self, p, side):
        """Right ideal p*S (side 'R') or left ideal S*p (side 'L')."""
        key = (p, side)
        out = self._ideal.get(key)
        if out is None:
            if side == "R":
                out = {self.mul(p, c) for c in self.pairs}
            else:
                out = {self.mul(c, p) for c in self.pairs}
            self._ideal[key] = out
        return out

    def green_equiv(self, p, q, side):
        return p in self.ideal(q, side) and q in self.ideal(p, side)


def extract_lrpol_cover(mode, inner_expr, s, rho, ptk_level=3, cache=None):
    """Tight cover of the canonical class of s by left (or right) deterministic
    marked products over the inner class, following the saturation's
    stabilization recursion.  Returns a list of MarkedProduct."""
    if mode not in ("L", "R"):
        raise ValueError("mode must be 'L' or 'R'")
    base = tower_base(inner_expr)
    if base.name == "PT":
        raise UnsupportedClassError("extraction needs an exact finite base")
    eta = canonical_morphism(base, rho.alphabet)
    n_monoid = eta.target
    table = n_monoid.table
    g = n_monoid.green()
    sr = rho.semiring
    p_inner, _ = imprint_for_class(inner_expr, rho, ptk_level, cache=cache)
    level = Op("LPOL" if mode == "L" else "RPOL", inner_expr)
    s_imprint, _ = imprint_for_class(level, rho, ptk_level, cache=cache)
    sat = _SaturatedMonoid(s_imprint)
    unit_pair = (n_monoid.unit, sr.one)
    alphabet = rho.alphabet

    def rho_of_product(mp):
        return eval_nice(rho, mp.language())

    def inner_cover(t):
        """Tight cover of the class of t by inner-class languages whose
        value stays inside the inner imprint."""
        if isinstance(inner_expr, Base):
            return [MarkedProduct((eta.image_dfa({t}),), ())]
        if inner_expr.op in ("LPOL", "RPOL"):
            return extract_lrpol_cover(
                "L" if inner_expr.op == "LPOL" else "R",
                inner_expr.inner,
                t,
                rho,
                ptk_level,
                cache=cache,
            )
        raise UnsupportedClassError(f"no cover extraction through {inner_expr.op}")

    def stabilized(t_elt, tq):
        if mode == "L":
            for cand in sat.pairs:
                if g.eq_r(cand[0], t_elt) and sat.green_equiv(
                    sat.mul(tq, cand), tq, "R"
                ):
                    return True
        else:
            for cand in sat.pairs:
                if g.eq_l(cand[0], t_elt) and sat.green_equiv(
                    sat.mul(cand, tq), tq, "L"
                ):
                    return True
        return False

    memo = {}

    def cover(t_elt, tq):
        key = (t_elt, tq)
        if key in memo:
            return memo[key]
        memo[key] = []  # cycle guard; the recursion measure rules cycles out
        if stabilized(t_elt, tq):
            out = inner_cover(t_elt)
            memo[key] = out
            return out
        out = []
        if mode == "L":
            triples = [
                (s1, a, s2)
                for s1 in range(n_monoid.n)
                for a in alphabet
                for s2 in range(n_monoid.n)
                if table[table[s1][eta.letter_image[a]]][s2] == t_elt
                and g.eq_r(t_elt, table[s1][eta.letter_image[a]])
                and g.lt_r(table[s1][eta.letter_image[a]], s1)
            ]
            for s1, a, s2 in triples:
                for u in cover(s1, unit_pair):
                    q2 = sr.mul(
                        sr.mul(tq[1], rho_of_product(u)), rho.letter_value[a]
                    )
                    t2 = table[table[tq[0]][s1]][eta.letter_image[a]]
                    for v in cover(s2, (t2, q2)):
                        out.append(
                            MarkedProduct(
                                u.parts + v.parts, u.letters + (a,) + v.letters
                            )
                        )
        else:
            triples = [
                (s1, a, s2)
                for s1 in range(n_monoid.n)
                for a in alphabet
                for s2 in range(n_monoid.n)
                if table[s1][table[eta.letter_image[a]][s2]] == t_elt
                and g.eq_l(t_elt, table[eta.letter_image[a]][s2])
                and g.lt_l(table[eta.letter_image[a]][s2], s2)
            ]
            for s1, a, s2 in triples:
                for v in cover(s2, unit_pair):
                    q2 = sr.mul(
                        rho.letter_value[a], sr.mul(rho_of_product(v), tq[1])
                    )
                    t2 = table[eta.letter_image[a]][table[s2][tq[0]]]
                    for u in cover(s1, (t2, q2)):
                        out.append(
                            MarkedProduct(
                                u.parts + v.parts, u.letters + (a,) + v.letters
                            )
                        )
        memo[key] = out
        return out

    return cover(s, unit_pair)


def extract_mpol_separator(inner_base, l1, l2, k_max=4, rep_length_bound=10):
    """Semi-algorithmic separator construction: cover L1 by mixed-equivalence
    classes of the canonical inner morphism for growing k and test
    disjointness from L2.  Returns (products, k) or None when the bound is
    exhausted."""
    if not is_finite_base(inner_base):
        raise UnsupportedClassError("separator extraction needs a finite base")
    eta = canonical_morphism(inner_base, l1.alphabet)
    if l2.alphabet != l1.alphabet:
        raise dfalib.AlphabetMismatch("separation inputs must share an alphabet")
    if l1.is_empty():
        return [], 0
    for k in range(1, k_max + 1):
        union = dfalib.empty(l1.alphabet)
        products = []
        covered = False
        for length in range(rep_length_bound + 1):
            new = False
            for w in _words_of_length(l1.alphabet, length):
                if not l1.accepts(w) or union.accepts(w):
                    continue
                mp = class_as_product(eta, k, "mixed", w)
                products.append(mp)
                union = dfalib.union(union, mp.language())
                new = True
            if union.includes(l1):
                covered = True
                break
        if covered and dfalib.intersection(union, l2).is_empty():
            return products, k
    return None


def _words_of_length(alphabet, length):
    from itertools import product

    for tup in product(alphabet, repeat=length):
        yield "".join(tup)
