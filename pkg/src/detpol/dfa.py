"""Complete DFAs in canonical minimal form, plus the Boolean/quotient algebra.

Every public operation returns a minimized, completed DFA renumbered by
breadth-first search from the initial state, so structural equality of two
values decides language equality (over the same alphabet).
"""

from itertools import product as _iterproduct

from . import regex as rx


class AlphabetMismatch(ValueError):
    pass


class Dfa:
    __slots__ = ("alphabet", "n", "delta", "init", "finals")

    def __init__(self, alphabet, n, delta, init, finals):
        self.alphabet = tuple(alphabet)
        self.n = n
        self.delta = tuple(tuple(row) for row in delta)
        self.init = init
        self.finals = frozenset(finals)
        if len(self.delta) != n or any(len(row) != len(self.alphabet) for row in self.delta):
            raise ValueError("transition table is not total")
        if not (0 <= init < n) or any(not 0 <= q < n for q in self.finals):
            raise ValueError("state out of range")

    def __eq__(self, other):
        return (
            isinstance(other, Dfa)
            and self.alphabet == other.alphabet
            and self.n == other.n
            and self.delta == other.delta
            and self.init == other.init
            and self.finals == other.finals
        )

    def __hash__(self):
        return hash((self.alphabet, self.n, self.delta, self.init, self.finals))

    def __repr__(self):
        return f"<Dfa {self.n} states over {''.join(self.alphabet)}>"

    def letter_index(self, a):
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise AlphabetMismatch(f"letter {a!r} not in alphabet {self.alphabet}") from None

    def step(self, q, a):
        return self.delta[q][self.letter_index(a)]

    def run(self, word, start=None):
        q = self.init if start is None else start
        for a in word:
            q = self.step(q, a)
        return q

    def accepts(self, word):
        return self.run(word) in self.finals

    def is_empty(self):
        return not self.finals or not any(q in self.finals for q in self._reachable())

    def includes(self, other):
        """Language inclusion: other ⊆ self."""
        return difference(other, self).is_empty()

    def same_language(self, other):
        return self.minimal() == other.minimal()

    def _reachable(self):
        seen = {self.init}
        stack = [self.init]
        while stack:
            q = stack.pop()
            for r in self.delta[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    def words(self, max_len):
        """Yield every accepted word of length at most max_len."""
        for length in range(max_len + 1):
            for tup in _iterproduct(self.alphabet, repeat=length):
                w = "".join(tup)
                if self.accepts(w):
                    yield w

    def minimal(self):
        return _minimize(self)

    def reverse(self):
        """Minimal DFA of the reversed language."""
        initials = set(self.finals)
        # reverse transitions are nondeterministic
        trans = [[set() for _ in self.alphabet] for _ in range(self.n)]
        for q in range(self.n):
            for i, _ in enumerate(self.alphabet):
                trans[self.delta[q][i]][i].add(q)
        return _determinize(self.alphabet, self.n, trans, initials, {self.init})


def _minimize(dfa):
    # restrict to reachable states
    order = []
    seen = {dfa.init: 0}
    queue = [dfa.init]
    while queue:
        q = queue.pop(0)
        order.append(q)
        for i in range(len(dfa.alphabet)):
            r = dfa.delta[q][i]
            if r not in seen:
                seen[r] = len(seen)
                queue.append(r)
    delta = [[seen[dfa.delta[q][i]] for i in range(len(dfa.alphabet))] for q in order]
    finals = {seen[q] for q in dfa.finals if q in seen}
    n = len(order)

    # Moore partition refinement
    block = [1 if q in finals else 0 for q in range(n)]
    nblocks = 2 if finals and len(finals) < n else 1
    while True:
        sig = {}
        newblock = [0] * n
        for q in range(n):
            key = (block[q], tuple(block[delta[q][i]] for i in range(len(dfa.alphabet))))
            if key not in sig:
                sig[key] = len(sig)
            newblock[q] = sig[key]
        if len(sig) == nblocks:
            block = newblock
            break
        nblocks = len(sig)
        block = newblock

    merged_delta = [None] * nblocks
    for q in range(n):
        merged_delta[block[q]] = [block[delta[q][i]] for i in range(len(dfa.alphabet))]
    merged_finals = {block[q] for q in finals}
    return _canonical(dfa.alphabet, nblocks, merged_delta, block[0], merged_finals)


def _canonical(alphabet, n, delta, init, finals):
    # BFS renumbering by letter order makes the representation unique
    number = {init: 0}
    order = [init]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for li in range(len(alphabet)):
            r = delta[q][li]
            if r not in number:
                number[r] = len(number)
                order.append(r)
    new_delta = [[number[delta[q][li]] for li in range(len(alphabet))] for q in order]
    new_finals = {number[q] for q in finals if q in number}
    return Dfa(alphabet, len(order), new_delta, 0, new_finals)


def _determinize(alphabet, nstates, trans, initials, finals):
    """Subset construction over set-valued transitions; returns minimal DFA."""
    start = frozenset(initials)
    index = {start: 0}
    table = []
    acc = set()
    queue = [start]
    while queue:
        cur = queue.pop(0)
        row = []
        for li in range(len(alphabet)):
            nxt = frozenset(r for q in cur for r in trans[q][li])
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        table.append(row)
        if cur & finals:
            acc.add(index[cur])
    return Dfa(alphabet, len(index), table, 0, acc).minimal()


class _Nfa:
    """Thompson-style NFA with epsilon moves; internal plumbing only."""

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self.trans = []  # state -> list per letter of sets
        self.eps = []  # state -> set

    def add_state(self):
        self.trans.append([set() for _ in self.alphabet])
        self.eps.append(set())
        return len(self.trans) - 1

    def add_edge(self, src, letter, dst):
        self.trans[src][self.alphabet.index(letter)].add(dst)

    def to_dfa(self, start, accept):
        def closure(states):
            out = set(states)
            stack = list(states)
            while stack:
                q = stack.pop()
                for r in self.eps[q]:
                    if r not in out:
                        out.add(r)
                        stack.append(r)
            return frozenset(out)

        start_set = closure({start})
        index = {start_set: 0}
        table = []
        acc = set()
        queue = [start_set]
        while queue:
            cur = queue.pop(0)
            row = []
            for li in range(len(self.alphabet)):
                nxt = closure({r for q in cur for r in self.trans[q][li]})
                if nxt not in index:
                    index[nxt] = len(index)
                    queue.append(nxt)
                row.append(index[nxt])
            table.append(row)
            if accept in cur:
                acc.add(index[cur])
        return Dfa(self.alphabet, len(index), table, 0, acc).minimal()


def _thompson(nfa, node):
    """Return (start, accept) fragment for the regex node."""
    if isinstance(node, rx.Empty):
        return nfa.add_state(), nfa.add_state()
    if isinstance(node, rx.Epsilon):
        s = nfa.add_state()
        return s, s
    if isinstance(node, rx.Lit):
        s, t = nfa.add_state(), nfa.add_state()
        nfa.add_edge(s, node.letter, t)
        return s, t
    if isinstance(node, rx.Union):
        s, t = nfa.add_state(), nfa.add_state()
        for p in node.parts:
            ps, pt = _thompson(nfa, p)
            nfa.eps[s].add(ps)
            nfa.eps[pt].add(t)
        return s, t
    if isinstance(node, rx.Concat):
        first, last = None, None
        for p in node.parts:
            ps, pt = _thompson(nfa, p)
            if first is None:
                first = ps
            else:
                nfa.eps[last].add(ps)
            last = pt
        return first, last
    if isinstance(node, rx.Star):
        s = nfa.add_state()
        ps, pt = _thompson(nfa, node.inner)
        nfa.eps[s].add(ps)
        nfa.eps[pt].add(s)
        return s, s
    if isinstance(node, rx.Plus):
        ps, pt = _thompson(nfa, node.inner)
        t = nfa.add_state()
        nfa.eps[pt].add(t)
        nfa.eps[t].add(ps)
        return ps, t
    raise TypeError(f"not a regex node: {node!r}")


def compile_regex(node, alphabet=None):
    """Minimal complete DFA for the regex; alphabet may extend the literals."""
    if isinstance(node, str):
        node = rx.parse_regex(node)
    letters = node.alphabet
    if alphabet is None:
        alphabet = sorted(letters) or ["a"]
    elif not letters <= set(alphabet):
        raise AlphabetMismatch(f"literals {letters} exceed alphabet {alphabet}")
    nfa = _Nfa(sorted(alphabet))
    start, accept = _thompson(nfa, node)
    return nfa.to_dfa(start, accept)


def _check_same_alphabet(*dfas):
    base = dfas[0].alphabet
    for d in dfas[1:]:
        if d.alphabet != base:
            raise AlphabetMismatch(f"alphabets differ: {base} vs {d.alphabet}")


def _product(l, r, accept):
    _check_same_alphabet(l, r)
    index = {(l.init, r.init): 0}
    table = []
    acc = set()
    queue = [(l.init, r.init)]
    while queue:
        p, q = queue.pop(0)
        row = []
        for li in range(len(l.alphabet)):
            nxt = (l.delta[p][li], r.delta[q][li])
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        table.append(row)
        if accept(p in l.finals, q in r.finals):
            acc.add(index[(p, q)])
    return Dfa(l.alphabet, len(index), table, 0, acc).minimal()


def union(l, r):
    return _product(l, r, lambda a, b: a or b)


def intersection(l, r):
    return _product(l, r, lambda a, b: a and b)


def difference(l, r):
    return _product(l, r, lambda a, b: a and not b)


def complement(l):
    return Dfa(l.alphabet, l.n, l.delta, l.init, set(range(l.n)) - l.finals).minimal()


def combine(op, l, r=None):
    """Boolean combination dispatch; r is unused for complement."""
    if op == "complement":
        return complement(l)
    if r is None:
        raise ValueError(f"{op} needs two operands")
    return {"union": union, "intersection": intersection, "difference": difference}[op](l, r)


def quotient(l, word, side):
    """Residual u^{-1}L (side='left') or Lu^{-1} (side='right')."""
    for a in word:
        l.letter_index(a)
    if side == "left":
        return Dfa(l.alphabet, l.n, l.delta, l.run(word), l.finals).minimal()
    if side == "right":
        finals = {q for q in range(l.n) if l.run(word, start=q) in l.finals}
        return Dfa(l.alphabet, l.n, l.delta, l.init, finals).minimal()
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def concat(l, r, letter=None):
    """Concatenation LR, or the marked concatenation L·letter·R."""
    _check_same_alphabet(l, r)
    alphabet = l.alphabet
    nfa = _Nfa(alphabet)
    # embed both DFAs into one NFA
    l_states = [nfa.add_state() for _ in range(l.n)]
    r_states = [nfa.add_state() for _ in range(r.n)]
    for q in range(l.n):
        for li, a in enumerate(alphabet):
            nfa.add_edge(l_states[q], a, l_states[l.delta[q][li]])
    for q in range(r.n):
        for li, a in enumerate(alphabet):
            nfa.add_edge(r_states[q], a, r_states[r.delta[q][li]])
    accept = nfa.add_state()
    for q in l.finals:
        if letter is None:
            nfa.eps[l_states[q]].add(r_states[r.init])
        else:
            nfa.add_edge(l_states[q], letter, r_states[r.init])
    for q in r.finals:
        nfa.eps[r_states[q]].add(accept)
    return nfa.to_dfa(l_states[l.init], accept)


def universal(alphabet):
    return Dfa(sorted(alphabet), 1, [[0] * len(alphabet)], 0, {0})


def empty(alphabet):
    return Dfa(sorted(alphabet), 1, [[0] * len(alphabet)], 0, set())


def from_words(words, alphabet):
    """Finite language as a minimal DFA."""
    d = empty(alphabet)
    for w in words:
        node = rx.Concat(tuple(rx.Lit(a) for a in w)) if w else rx.EPSILON
        d = union(d, compile_regex(node, alphabet))
    return d


def _runion(x, y):
    if x is None:
        return y
    if y is None:
        return x
    if x == y:
        return x
    return f"{x}|{y}"


def _rconcat(x, y):
    if x is None or y is None:
        return None
    if x == "%":
        return y
    if y == "%":
        return x
    xs = x if ("|" not in x or _balanced(x)) else f"({x})"
    ys = y if ("|" not in y or _balanced(y)) else f"({y})"
    return xs + ys


def _balanced(s):
    # true when every '|' sits inside parentheses
    depth = 0
    for c in s:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "|" and depth == 0:
            return False
    return True


def _rstar(x):
    if x is None or x == "%":
        return "%"
    if len(x) == 1:
        return x + "*"
    if len(x) == 2 and x[1] == "*":
        return x
    return f"({x})*"


def to_regex(d):
    """Regex source for the language, by state elimination."""
    n = d.n
    start, accept = n, n + 1
    edge = {}

    def get(i, j):
        return edge.get((i, j))

    def put(i, j, r):
        edge[(i, j)] = _runion(edge.get((i, j)), r)

    for q in range(n):
        for li, a in enumerate(d.alphabet):
            put(q, d.delta[q][li], a)
    put(start, d.init, "%")
    for q in d.finals:
        put(q, accept, "%")
    for q in range(n):
        loop = _rstar(get(q, q))
        ins = [(i, r) for (i, j), r in edge.items() if j == q and i != q and r is not None]
        outs = [(j, r) for (i, j), r in edge.items() if i == q and j != q and r is not None]
        for i, rin in ins:
            for j, rout in outs:
                put(i, j, _rconcat(_rconcat(rin, loop), rout))
        edge = {(i, j): r for (i, j), r in edge.items() if i != q and j != q}
    out = edge.get((start, accept))
    return "@" if out is None else out


def format_dfa(d):
    """Serialize in the text format: header, transitions, init, finals."""
    lines = [f"dfa {d.n} {''.join(d.alphabet)}"]
    for q in range(d.n):
        for li, a in enumerate(d.alphabet):
            lines.append(f"{q} {a} {d.delta[q][li]}")
    lines.append(f"init {d.init}")
    lines.append("final " + " ".join(str(q) for q in sorted(d.finals)))
    return "\n".join(lines) + "\n"


def parse_dfa(text):
    header = None
    trans = {}
    init = None
    finals = set()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "dfa":
            header = (int(parts[1]), tuple(sorted(parts[2])))
        elif parts[0] == "init":
            init = int(parts[1])
        elif parts[0] == "final":
            finals = {int(x) for x in parts[1:]}
        else:
            trans[(int(parts[0]), parts[1])] = int(parts[2])
    if header is None or init is None:
        raise ValueError("missing dfa header or init line")
    n, alphabet = header
    delta = [[trans[(q, a)] for a in alphabet] for q in range(n)]
    return Dfa(alphabet, n, delta, init, finals)
