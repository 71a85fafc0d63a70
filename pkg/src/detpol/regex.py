"""Regular expression syntax trees and the parser for the ASCII grammar.

Grammar: letters ``a``-``z`` are literals, ``|`` is union, juxtaposition is
concatenation, postfix ``*`` / ``+`` are star and plus, ``%`` is the empty
word, ``@`` is the empty language, parentheses group.  Precedence:
star/plus > concatenation > union.
"""

from dataclasses import dataclass


class RegexSyntaxError(ValueError):
    """Raised on malformed regex input; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class Regex:
    __slots__ = ()

    def __str__(self):
        return render(self)

    @property
    def alphabet(self):
        """Set of letters occurring literally in the expression."""
        out = set()
        _collect_letters(self, out)
        return out


@dataclass(frozen=True)
class Empty(Regex):
    __slots__ = ()


@dataclass(frozen=True)
class Epsilon(Regex):
    __slots__ = ()


@dataclass(frozen=True)
class Lit(Regex):
    letter: str


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


@dataclass(frozen=True)
class Plus(Regex):
    inner: Regex


EMPTY = Empty()
EPSILON = Epsilon()


def _collect_letters(r, out):
    if isinstance(r, Lit):
        out.add(r.letter)
    elif isinstance(r, (Union, Concat)):
        for p in r.parts:
            _collect_letters(p, out)
    elif isinstance(r, (Star, Plus)):
        _collect_letters(r.inner, out)


def parse_regex(text):
    """Parse regex source into a syntax tree, inferring the alphabet from literals."""
    parser = _Parser(text)
    node = parser.union()
    if parser.pos != len(text):
        raise RegexSyntaxError(f"unexpected {text[parser.pos]!r}", parser.pos)
    return node


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def union(self):
        parts = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.concat())
        if len(parts) == 1:
            return parts[0]
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Union) else [p])
        return Union(tuple(flat))

    def concat(self):
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            parts.append(self.postfix())
        if not parts:
            raise RegexSyntaxError("empty expression", self.pos)
        if len(parts) == 1:
            return parts[0]
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Concat) else [p])
        return Concat(tuple(flat))

    def postfix(self):
        node = self.atom()
        while self.peek() in ("*", "+"):
            node = Star(node) if self.peek() == "*" else Plus(node)
            self.pos += 1
        return node

    def atom(self):
        c = self.peek()
        if c is None:
            raise RegexSyntaxError("unexpected end of input", self.pos)
        if c == "(":
            start = self.pos
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("unbalanced parenthesis", start)
            self.pos += 1
            return node
        if c == "%":
            self.pos += 1
            return EPSILON
        if c == "@":
            self.pos += 1
            return EMPTY
        if c.isalpha() and c.islower():
            self.pos += 1
            return Lit(c)
        raise RegexSyntaxError(f"unexpected {c!r}", self.pos)


def render(r):
    """Print a regex so that parse_regex(render(r)) == r."""
    return _render(r, 0)


# precedence levels: 0 union, 1 concat, 2 postfix
def _render(r, level):
    if isinstance(r, Empty):
        return "@"
    if isinstance(r, Epsilon):
        return "%"
    if isinstance(r, Lit):
        return r.letter
    if isinstance(r, Union):
        body = "|".join(_render(p, 1) for p in r.parts)
        return f"({body})" if level > 0 else body
    if isinstance(r, Concat):
        body = "".join(_render(p, 2) for p in r.parts)
        return f"({body})" if level > 1 else body
    if isinstance(r, Star):
        return _render_postfix(r.inner) + "*"
    if isinstance(r, Plus):
        return _render_postfix(r.inner) + "+"
    raise TypeError(f"not a regex node: {r!r}")


def _render_postfix(inner):
    body = _render(inner, 2)
    if isinstance(inner, (Union, Concat, Star, Plus)):
        return f"({body})" if not body.startswith("(") else body
    return body
