"""Class expressions over the base prevarieties and their operators, plus
canonical morphisms and membership oracles for the finite bases.

Grammar: ``ST | AT | PT | PTK(k) | LPOL(E) | RPOL(E) | MPOL(E) | UPOL(E) |
INTER(E,E) | LP(n,E) | RP(n,E) | BSIGMA2(n)``.
"""

from dataclasses import dataclass
from functools import lru_cache

from .monoid import FiniteMonoid, product_closure
from .syntactic import MonoidMorphism


class ClassExprError(ValueError):
    pass


class ClassExpr:
    __slots__ = ()

    def __str__(self):
        return render_class(self)


@dataclass(frozen=True)
class Base(ClassExpr):
    name: str  # ST | AT | PT
    k: int = 0  # piece length, PTK only

    def __post_init__(self):
        if self.name not in ("ST", "AT", "PT", "PTK"):
            raise ClassExprError(f"unknown base {self.name}")
        if self.name == "PTK" and self.k < 1:
            raise ClassExprError("PTK needs piece length k >= 1")


@dataclass(frozen=True)
class Op(ClassExpr):
    op: str  # LPOL | RPOL | MPOL | UPOL
    inner: ClassExpr

    def __post_init__(self):
        if self.op not in ("LPOL", "RPOL", "MPOL", "UPOL"):
            raise ClassExprError(f"unknown operator {self.op}")


@dataclass(frozen=True)
class Inter(ClassExpr):
    left: ClassExpr
    right: ClassExpr


ST = Base("ST")
AT = Base("AT")
PT = Base("PT")


def PTK(k):
    return Base("PTK", k)


def LPOL(e):
    return Op("LPOL", e)


def RPOL(e):
    return Op("RPOL", e)


def MPOL(e):
    return Op("MPOL", e)


def UPOL(e):
    return Op("UPOL", e)


def INTER(l, r):
    return Inter(l, r)


def LP(n, base):
    """Level n of the left-start deterministic hierarchy over the base."""
    if n < 0:
        raise ClassExprError("hierarchy level must be >= 0")
    if n == 0:
        return base
    return LPOL(RP(n - 1, base))


def RP(n, base):
    if n < 0:
        raise ClassExprError("hierarchy level must be >= 0")
    if n == 0:
        return base
    return RPOL(LP(n - 1, base))


def BSIGMA2(n):
    """n-th Boolean alternation level of two-variable logic with order."""
    if n < 1:
        raise ClassExprError("BSIGMA2 level must be >= 1")
    expr = PT
    for _ in range(n - 1):
        expr = MPOL(expr)
    return expr


def parse_class(text):
    """Parse a class expression; aliases are expanded immediately."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos] in " \t":
            pos += 1

    def expect(ch):
        nonlocal pos
        skip_ws()
        if pos >= len(text) or text[pos] != ch:
            raise ClassExprError(f"expected {ch!r} at offset {pos} in {text!r}")
        pos += 1

    def ident():
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            pos += 1
        if start == pos:
            raise ClassExprError(f"expected name at offset {pos} in {text!r}")
        return text[start:pos].upper()

    def number():
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ClassExprError(f"expected number at offset {pos} in {text!r}")
        return int(text[start:pos])

    def expr():
        nonlocal pos
        name = ident()
        if name in ("ST", "AT", "PT"):
            return Base(name)
        if name == "PTK":
            expect("(")
            k = number()
            expect(")")
            return PTK(k)
        if name in ("LPOL", "RPOL", "MPOL", "UPOL"):
            expect("(")
            inner = expr()
            expect(")")
            return Op(name, inner)
        if name == "INTER":
            expect("(")
            left = expr()
            expect(",")
            right = expr()
            expect(")")
            return Inter(left, right)
        if name in ("LP", "RP"):
            expect("(")
            n = number()
            expect(",")
            base = expr()
            expect(")")
            return LP(n, base) if name == "LP" else RP(n, base)
        if name == "BSIGMA2":
            expect("(")
            n = number()
            expect(")")
            return BSIGMA2(n)
        raise ClassExprError(f"unknown class {name}")

    out = expr()
    skip_ws()
    if pos != len(text):
        raise ClassExprError(f"trailing input at offset {pos} in {text!r}")
    return out


def render_class(e):
    if isinstance(e, Base):
        return f"PTK({e.k})" if e.name == "PTK" else e.name
    if isinstance(e, Op):
        return f"{e.op}({render_class(e.inner)})"
    if isinstance(e, Inter):
        return f"INTER({render_class(e.left)},{render_class(e.right)})"
    raise TypeError(f"not a class expression: {e!r}")


def is_finite_base(e):
    """Bases that are finite prevarieties, hence have a canonical morphism."""
    return isinstance(e, Base) and e.name in ("ST", "AT", "PTK")


def canonical_morphism(base, alphabet):
    """Canonical morphism of a finite base prevariety over the alphabet."""
    alphabet = tuple(sorted(alphabet))
    if not is_finite_base(base):
        raise ClassExprError(f"{base} has no canonical morphism (not a finite base)")
    return _canonical_cached(base.name, base.k, alphabet)


@lru_cache(maxsize=None)
def _canonical_cached(name, k, alphabet):
    if name == "ST":
        m = FiniteMonoid([[0]], 0, names=["1"], validate=False)
        return MonoidMorphism(alphabet, m, {a: 0 for a in alphabet}, validate=False)
    if name == "AT":
        # powerset of the alphabet under union; letter a -> {a}
        subsets = []
        index = {}
        for mask in range(1 << len(alphabet)):
            s = frozenset(a for i, a in enumerate(alphabet) if mask >> i & 1)
            index[s] = len(subsets)
            subsets.append(s)
        table = [[index[x | y] for y in subsets] for x in subsets]
        names = ["{" + ",".join(sorted(s)) + "}" for s in subsets]
        m = FiniteMonoid(table, index[frozenset()], names=names, validate=False)
        return MonoidMorphism(
            alphabet, m, {a: index[frozenset([a])] for a in alphabet}, validate=False
        )
    # PTK(k): sets of scattered subwords of length <= k, truncated product
    def subwords(word):
        out = {""}
        for a in word:
            out |= {w + a for w in out if len(w) < k}
        return frozenset(out)

    def mul(x, y):
        return frozenset(u + v for u in x for v in y if len(u) + len(v) <= k)

    unit = frozenset([""])
    gens = [subwords(a) for a in alphabet]
    elements = [unit]
    index = {unit: 0}
    queue = [unit]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(index)
                elements.append(y)
                queue.append(y)
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    names = [
        "{" + ",".join(w or "%" for w in sorted(s, key=lambda w: (len(w), w))) + "}"
        for s in elements
    ]
    m = FiniteMonoid(table, 0, names=names, validate=False)
    return MonoidMorphism(
        alphabet, m, {a: index[subwords(a)] for a in alphabet}, validate=False
    )


def base_membership(base, rl):
    """Does the recognized language belong to the base class?"""
    if not isinstance(base, Base):
        raise ClassExprError(f"{base} is not a base class")
    morphism, accept = rl.morphism, rl.accept
    if base.name == "ST":
        return not accept or len(accept) == morphism.target.n
    if base.name == "PT":
        return _syntactic_collapse(rl).morphism.target.is_j_trivial()
    eta = canonical_morphism(base, morphism.alphabet)
    # factorization test: within one canonical class, acceptance must agree
    seen = {}
    for n_elt, m_elt in _reachable_pairs(eta, morphism):
        inside = m_elt in accept
        if seen.setdefault(n_elt, inside) != inside:
            return False
    return True


def _reachable_pairs(eta, alpha):
    """All pairs (eta(w), alpha(w)) for w in A*."""
    gens = [(eta.letter_image[a], alpha.letter_image[a]) for a in alpha.alphabet]
    elements, _, _ = product_closure([eta.target, alpha.target], gens)
    return elements


def _syntactic_collapse(rl):
    """Collapse a recognized language to its syntactic morphism."""
    from .monoid import quotient, syntactic_congruence_of_subset

    cong = syntactic_congruence_of_subset(rl.morphism.target, rl.accept)
    if cong.is_identity():
        return rl
    collapsed, proj = quotient(rl.morphism.target, cong)
    morphism = MonoidMorphism(
        rl.morphism.alphabet,
        collapsed,
        {a: proj[i] for a, i in rl.morphism.letter_image.items()},
        validate=False,
    )
    from .syntactic import RecognizedLanguage

    return RecognizedLanguage(morphism, {proj[i] for i in rl.accept})
