"""Rank/alternation preorders on pointed words, used as a test oracle for the
two-variable alternation levels.

A query compares (w, i) against (w', i') at quantifier rank k and alternation
depth n >= 1, relative to a morphism eta whose recognized languages supply the
infix predicates.
"""

from dataclasses import dataclass, field

from .wordstruct import infix_images


@dataclass
class EfQuery:
    eta: object
    memo: dict = field(default_factory=dict)
    imgs: dict = field(default_factory=dict)

    def _img(self, w):
        if w not in self.imgs:
            self.imgs[w] = infix_images(self.eta, w)
        return self.imgs[w]

    def _eta_equivalent(self, w, i, wp, ip):
        lw, lwp = len(w), len(wp)
        if i == 0 or ip == 0:
            return i == ip == 0 and self.eta(w) == self.eta(wp)
        if i == lw + 1 or ip == lwp + 1:
            return i == lw + 1 and ip == lwp + 1 and self.eta(w) == self.eta(wp)
        return (
            w[i - 1] == wp[ip - 1]
            and self._img(w)[(0, i)] == self._img(wp)[(0, ip)]
            and self._img(w)[(i, lw + 1)] == self._img(wp)[(ip, lwp + 1)]
        )

    def leq(self, k, n, w, i, wp, ip):
        """Pointed preorder: every positive depth-n formula of rank <= k true
        at (w, i) is true at (w', i')."""
        if n < 1:
            raise ValueError("alternation depth must be >= 1")
        key = (k, n, w, i, wp, ip)
        out = self.memo.get(key)
        if out is not None:
            return out
        out = self._eta_equivalent(w, i, wp, ip)
        if out and n >= 2:
            out = self.leq(k, n - 1, wp, ip, w, i)
        if out and k >= 1:
            img_w, img_wp = self._img(w), self._img(wp)
            for j in range(i + 1, len(w) + 2):
                if not any(
                    img_w[(i, j)] == img_wp[(ip, jp)]
                    and self.leq(k - 1, n, w, j, wp, jp)
                    for jp in range(ip + 1, len(wp) + 2)
                ):
                    out = False
                    break
        if out and k >= 1:
            img_w, img_wp = self._img(w), self._img(wp)
            for j in range(0, i):
                if not any(
                    img_w[(j, i)] == img_wp[(jp, ip)]
                    and self.leq(k - 1, n, w, j, wp, jp)
                    for jp in range(0, ip)
                ):
                    out = False
                    break
        self.memo[key] = out
        return out


def ef_leq(eta, k, n, w, wp, i=0, ip=0, query=None):
    """Word-level preorder (at the leftmost positions by default)."""
    q = query or EfQuery(eta)
    return q.leq(k, n, w, i, wp, ip)


def ef_equiv(eta, k, n, w, wp, query=None):
    q = query or EfQuery(eta)
    return q.leq(k, n, w, 0, wp, 0) and q.leq(k, n, wp, 0, w, 0)


@dataclass
class SaturationReport:
    k: int
    n: int
    length_bound: int
    refutations: list  # pairs (w, w') equivalent but split by the language

    @property
    def saturated(self):
        return not self.refutations


def ef_class_saturation(eta, k, n, language, length_bound=8, max_refutations=5):
    """Scan all word pairs up to the bound for equivalent pairs on which the
    language disagrees; any hit refutes saturation at (k, n)."""
    words = list(language.words(length_bound))
    inside = set(words)
    alphabet = language.alphabet
    all_words = [""]
    frontier = [""]
    for _ in range(length_bound):
        frontier = [w + a for w in frontier for a in alphabet]
        all_words.extend(frontier)
    outside = [w for w in all_words if w not in inside]
    query = EfQuery(eta)
    refutations = []
    for w in words:
        for wp in outside:
            if ef_equiv(eta, k, n, w, wp, query=query):
                refutations.append((w, wp))
                if len(refutations) >= max_refutations:
                    return SaturationReport(k, n, length_bound, refutations)
    return SaturationReport(k, n, length_bound, refutations)
