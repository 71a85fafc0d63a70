"""Equation-based membership decisions for the polynomial-closure operators,
and the top-level language membership decision.
"""

from dataclasses import dataclass, field

from . import dfa as dfalib
from .classes import (
    Base,
    ClassExprError,
    Inter,
    Op,
    _syntactic_collapse,
    base_membership,
    is_finite_base,
    parse_class,
    render_class,
)
from .equiv import (
    canonical_equiv_enumerated,
    canonical_equiv_finite,
)
from .syntactic import syntactic_morphism


@dataclass
class EquationReport:
    holds: bool
    equation: str
    witness: tuple = None  # (element names, lhs name, rhs name) on failure

    def __bool__(self):
        return self.holds


def _fail(m, equation, elements, lhs, rhs):
    if lhs == rhs:
        raise AssertionError("failure witness does not violate the equation")
    names = tuple(m.names[x] for x in elements)
    return EquationReport(False, equation, (names, m.names[lhs], m.names[rhs]))


def check_upol(m, related):
    """s^{w+1} = s^w t s^w for all related (s, t)."""
    w = m.omega
    for s, t in related:
        sw = m.power(s, w)
        lhs = m.mul(sw, s)
        rhs = m.mul(m.mul(sw, t), sw)
        if lhs != rhs:
            return _fail(m, "s^{w+1} = s^w t s^w", (s, t), lhs, rhs)
    return EquationReport(True, "s^{w+1} = s^w t s^w")


def check_lpol(m, related):
    """s^{w+1} = s^w t for all related (s, t)."""
    w = m.omega
    for s, t in related:
        sw = m.power(s, w)
        lhs = m.mul(sw, s)
        rhs = m.mul(sw, t)
        if lhs != rhs:
            return _fail(m, "s^{w+1} = s^w t", (s, t), lhs, rhs)
    return EquationReport(True, "s^{w+1} = s^w t")


def check_rpol(m, related):
    """s^{w+1} = t s^w for all related (s, t)."""
    w = m.omega
    for s, t in related:
        sw = m.power(s, w)
        lhs = m.mul(s, sw)
        rhs = m.mul(t, sw)
        if lhs != rhs:
            return _fail(m, "s^{w+1} = t s^w", (s, t), lhs, rhs)
    return EquationReport(True, "s^{w+1} = t s^w")


def check_mpol(m, related):
    """(sq)^w s (rs)^w = (sq)^w t (rs)^w for all q, r and related (s, t)."""
    w = m.omega
    related = list(related)
    for q in range(m.n):
        for r in range(m.n):
            for s, t in related:
                sqw = m.power(m.mul(s, q), w)
                rsw = m.power(m.mul(r, s), w)
                lhs = m.mul(m.mul(sqw, s), rsw)
                rhs = m.mul(m.mul(sqw, t), rsw)
                if lhs != rhs:
                    return _fail(m, "(sq)^w s (rs)^w = (sq)^w t (rs)^w", (q, r, s, t), lhs, rhs)
    return EquationReport(True, "(sq)^w s (rs)^w = (sq)^w t (rs)^w")


CHECKS = {"LPOL": check_lpol, "RPOL": check_rpol, "MPOL": check_mpol, "UPOL": check_upol}


@dataclass
class Context:
    """Caches and size caps shared across one decision session."""

    enum_cap: int = 16
    equiv_cache: dict = field(default_factory=dict)
    member_cache: dict = field(default_factory=dict)

    def canonical_equiv(self, expr, alpha):
        """~C for the class expression on the morphism's target."""
        key = (render_class(expr), alpha.key())
        if key not in self.equiv_cache:
            if is_finite_base(expr):
                cong = canonical_equiv_finite(expr, alpha)
            else:
                cong = canonical_equiv_enumerated(
                    alpha,
                    lambda rl: self.morphism_in_class(expr, rl),
                    cap=self.enum_cap,
                )
            self.equiv_cache[key] = cong
        return self.equiv_cache[key]

    def morphism_in_class(self, expr, rl):
        """Membership test; rl's morphism must be syntactic for its language."""
        key = (render_class(expr), rl.key())
        if key in self.member_cache:
            return self.member_cache[key]
        if isinstance(expr, Base):
            out = base_membership(expr, rl)
        elif isinstance(expr, Inter):
            out = self.morphism_in_class(expr.left, rl) and self.morphism_in_class(
                expr.right, rl
            )
        elif isinstance(expr, Op):
            cong = self.canonical_equiv(expr.inner, rl.morphism)
            out = bool(CHECKS[expr.op](rl.morphism.target, cong.pairs()))
        else:
            raise ClassExprError(f"unsupported class expression {expr!r}")
        self.member_cache[key] = out
        return out


def decide_membership(expr, language, ctx=None):
    """Does the language (Dfa or regex source) belong to the class?"""
    if isinstance(expr, str):
        expr = parse_class(expr)
    if isinstance(language, str):
        language = dfalib.compile_regex(language)
    if ctx is None:
        ctx = Context()
    rl = _syntactic_collapse(syntactic_morphism(language))
    return ctx.morphism_in_class(expr, rl)


def membership_report(expr, language, ctx=None):
    """Verdict plus the failing equation witness, if any."""
    if isinstance(expr, str):
        expr = parse_class(expr)
    if isinstance(language, str):
        language = dfalib.compile_regex(language)
    if ctx is None:
        ctx = Context()
    rl = _syntactic_collapse(syntactic_morphism(language))
    if isinstance(expr, Op):
        cong = ctx.canonical_equiv(expr.inner, rl.morphism)
        return CHECKS[expr.op](rl.morphism.target, cong.pairs())
    verdict = ctx.morphism_in_class(expr, rl)
    return EquationReport(verdict, render_class(expr))
