"""KLR algebras by generators and relations.

Elements are finite integer combinations of normal-form monomials
``tau_w * kappa^p * e(m)`` where ``w`` is written with its lexicographically
least reduced word.  A monomial is the triple ``(word, p, m)``:

* ``word`` -- tuple of ``tau`` indices (1-based), lex-least reduced;
* ``p`` -- exponent tuple of ``kappa_1 .. kappa_n``;
* ``m`` -- the idempotent word on the right.

Left multiplication by generators is implemented by rewriting with the
defining relations; products of generators are normalised by folding from the
right.  The signs ``h`` use one fixed orientation of the Dynkin graph.

The module also provides the closed formula for graded block dimensions, a
brute-force count of normal-form monomials, and the polynomial representation
used as an independent oracle.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .exact import LaurentPoly, RatFun, TruncSeries, series_expand
from .roots import CartanData, Orientation, reference_orientation
from .words import WeightMismatch, form_normalizer, word_weight, words_of_weight

__all__ = [
    "KLRAlgebra",
    "KLRExpr",
    "NonTermination",
    "RangeExceeded",
    "IndexOutOfRange",
    "klr_degree",
    "gdim_block",
    "gdim_enumerate",
    "lex_least_word",
    "PolyRep",
]

Word = tuple[int, ...]
Mono = tuple[Word, tuple[int, ...], Word]
KLRExpr = dict


class NonTermination(RuntimeError):
    """The rewriting step cap was hit."""


class RangeExceeded(ValueError):
    """Requested size is outside the supported range."""


class IndexOutOfRange(IndexError):
    """Generator index outside ``1..n`` (or ``1..n-1`` for tau)."""


STEP_CAP = 10**6


def pair_degree(c: CartanData, a: int, b: int) -> int:
    """Degree of ``tau`` crossing the letters ``a`` and ``b``."""
    if a == b:
        return -2
    if c.adjacent(a, b):
        return 1
    return 0


def klr_degree(c: CartanData, generator: tuple, m: Sequence[int]) -> int:
    """Degree of ``kappa_j e(m)`` or ``tau_i e(m)``; generator is ``('k', j)`` or ``('t', i)``."""
    kind, idx = generator
    n = len(m)
    if kind == "k":
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"kappa_{idx} with n = {n}")
        return 2
    if kind == "t":
        if not 1 <= idx < n:
            raise IndexOutOfRange(f"tau_{idx} with n = {n}")
        return pair_degree(c, m[idx - 1], m[idx])
    raise ValueError(f"unknown generator {generator!r}")


# -- permutations and reduced words ----------------------------------------

def _sigma(i: int, m: Sequence) -> tuple:
    m = list(m)
    m[i - 1], m[i] = m[i], m[i - 1]
    return tuple(m)


def apply_word(word: Sequence[int], m: Sequence) -> tuple:
    """Left idempotent of ``tau_word e(m)``: apply ``sigma`` right to left."""
    m = tuple(m)
    for i in reversed(word):
        m = _sigma(i, m)
    return m


def _perm(word: Sequence[int], n: int) -> tuple[int, ...]:
    return apply_word(word, range(n))


def _inversions(t: Sequence[int]) -> int:
    return sum(1 for a in range(len(t)) for b in range(a + 1, len(t)) if t[a] > t[b])


@lru_cache(maxsize=None)
def lex_least_word(perm: tuple[int, ...]) -> Word:
    """Lexicographically least reduced word of a permutation (as ``pi . (0..n-1)``)."""
    out = []
    t = list(perm)
    while True:
        for i in range(1, len(t)):
            if t[i - 1] > t[i]:
                out.append(i)
                t[i - 1], t[i] = t[i], t[i - 1]
                break
        else:
            return tuple(out)


def _tau_moves(word: Word) -> list[tuple[int, str]]:
    out = []
    for q in range(len(word) - 1):
        a, b = word[q], word[q + 1]
        if abs(a - b) > 1:
            out.append((q, "c"))
        if q + 2 < len(word) and word[q + 2] == a and abs(a - b) == 1:
            out.append((q, "b"))
    return out


def _apply_tau_move(word: Word, q: int, kind: str) -> Word:
    if kind == "c":
        return word[:q] + (word[q + 1], word[q]) + word[q + 2:]
    a, b = word[q], word[q + 1]
    return word[:q] + (b, a, b) + word[q + 3:]


@lru_cache(maxsize=None)
def _tau_path(start: Word, goal: Word) -> tuple[tuple[int, str], ...]:
    if start == goal:
        return ()
    prev: dict[Word, tuple] = {start: None}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for q, kind in _tau_moves(w):
            v = _apply_tau_move(w, q, kind)
            if v in prev:
                continue
            prev[v] = (w, (q, kind))
            if v == goal:
                path = []
                while prev[v] is not None:
                    w0, mv = prev[v]
                    path.append(mv)
                    v = w0
                return tuple(path[::-1])
            queue.append(v)
    raise ValueError(f"{goal} is not reachable from {start}")


# -- expression helpers -----------------------------------------------------

def _add_into(acc: dict, expr: Iterable[tuple[Mono, int]], scale: int = 1) -> None:
    for k, v in expr:
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _freeze(acc: dict) -> tuple[tuple[Mono, int], ...]:
    return tuple(sorted(acc.items()))


class KLRAlgebra:
    """Rewriting engine for ``R_beta`` of a fixed Cartan type and orientation."""

    def __init__(self, c: CartanData, orientation: Orientation | None = None, step_cap: int = STEP_CAP):
        self.cartan = c
        self.orientation = frozenset(orientation) if orientation is not None else reference_orientation(c)
        self.step_cap = step_cap
        self._steps = 0
        self._lmul_tau = lru_cache(maxsize=None)(self._lmul_tau_impl)
        self._lmul_kappa = lru_cache(maxsize=None)(self._lmul_kappa_impl)

    # signs and structure functions
    def h(self, m: Sequence[int], i: int) -> int:
        return 1 if (m[i - 1], m[i]) in self.orientation else 0

    def Q(self, m: Sequence[int], i: int) -> tuple[int, dict[int, int]]:
        """``Q_{m,i}(kappa_i, kappa_{i+1})`` as ``(constant, {index: coeff})``."""
        a, b = m[i - 1], m[i]
        if a == b:
            return 0, {}
        if not self.cartan.adjacent(a, b):
            return 1, {}
        s = -1 if self.h(m, i) else 1
        return 0, {i: s, i + 1: -s}

    def braid_defect(self, m: Sequence[int], i: int) -> int:
        """Scalar ``d`` with ``(t_{i+1} t_i t_{i+1} - t_i t_{i+1} t_i) e(m) = d e(m)``."""
        a, b, a2 = m[i - 1], m[i], m[i + 1]
        if a == a2 and self.cartan.adjacent(a, b):
            return -1 if self.h(m, i) else 1
        return 0

    def kappa_defect(self, m: Sequence[int], i: int, k: int) -> int:
        """Scalar ``d`` with ``(t_i k_k - k_{s_i k} t_i) e(m) = d e(m)``."""
        if m[i - 1] != m[i]:
            return 0
        if k == i:
            return -1
        if k == i + 1:
            return 1
        return 0

    def _tick(self) -> None:
        self._steps += 1
        if self._steps > self.step_cap:
            raise NonTermination(f"rewriting exceeded {self.step_cap} steps")

    # -- basic monomials
    @staticmethod
    def idempotent(m: Sequence[int]) -> dict:
        m = tuple(m)
        return {((), (0,) * len(m), m): 1}

    @staticmethod
    def left_idempotent(mono: Mono) -> Word:
        return apply_word(mono[0], mono[2])

    def degree(self, mono: Mono) -> int:
        word, p, m = mono
        d = 2 * sum(p)
        cur = m
        for i in reversed(word):
            d += pair_degree(self.cartan, cur[i - 1], cur[i])
            cur = _sigma(i, cur)
        return d

    # -- left multiplication on monomials (memoized)
    def _lmul_kappa_impl(self, j: int, mono: Mono) -> tuple:
        self._tick()
        word, p, m = mono
        if not word:
            q = list(p)
            q[j - 1] += 1
            return (((), tuple(q), m), 1),
        a, rest = word[0], word[1:]
        inner = (rest, p, m)
        m1 = apply_word(rest, m)
        k = j + 1 if j == a else (j - 1 if j == a + 1 else j)
        acc: dict = {}
        # k_j t_a e(m1) = t_a k_{s_a j} e(m1) - defect * e(m1)
        for mono2, v in self._lmul_kappa(k, inner):
            _add_into(acc, self._lmul_tau(a, mono2), v)
        d = self.kappa_defect(m1, a, k)
        if d:
            _add_into(acc, ((inner, 1),), -d)
        return _freeze(acc)

    def _rewrite_word(self, start: Word, goal: Word, p: tuple, m: Word) -> dict:
        """``tau_start k^p e(m)`` rewritten as ``tau_goal k^p e(m)`` plus lower terms.

        Both words must be reduced for the same permutation.  The returned
        expression is in normal form except for the leading term, which is
        returned as the raw key ``(goal, p, m)``.
        """
        acc: dict = {(goal, p, m): 1}
        cur = start
        for q, kind in _tau_path(start, goal):
            if kind == "b":
                a, b = cur[q], cur[q + 1]
                i = min(a, b)
                post = cur[q + 3:]
                mm = apply_word(post, m)
                d = self.braid_defect(mm, i)
                if d:
                    # (a+1, a, a+1) = (a, a+1, a) + d ; (a, a+1, a) = (a+1, a, a+1) - d
                    sign = d if a > b else -d
                    short = cur[:q] + post
                    _add_into(acc, self._tau_word_times(short, p, m).items(), sign)
            cur = _apply_tau_move(cur, q, kind)
        return acc

    def _tau_word_times(self, word: Word, p: tuple, m: Word) -> dict:
        """Normal form of ``tau_word * kappa^p * e(m)`` for an arbitrary word."""
        expr: dict = {((), p, m): 1}
        for i in reversed(word):
            new: dict = {}
            for mono, v in expr.items():
                _add_into(new, self._lmul_tau(i, mono), v)
            expr = new
        return expr

    def _lmul_tau_impl(self, i: int, mono: Mono) -> tuple:
        self._tick()
        word, p, m = mono
        n = len(m)
        if not 1 <= i < n:
            raise IndexOutOfRange(f"tau_{i} with n = {n}")
        perm = _perm(word, n)
        longer = _inversions(_sigma(i, perm)) > _inversions(perm)
        if longer:
            target = lex_least_word(_sigma(i, perm))
            start = (i,) + word
            if start == target:
                return (((target, p, m), 1),)
            return _freeze(self._rewrite_word(start, target, p, m))
        # w has a reduced word starting with i: rewrite, then use t_i^2 = Q
        rest = lex_least_word(_sigma(i, perm))
        target = (i,) + rest
        acc: dict = {}
        rewritten = self._rewrite_word(word, target, p, m)
        lead = rewritten.pop((target, p, m))
        assert lead == 1
        for mono2, v in rewritten.items():
            _add_into(acc, self._lmul_tau(i, mono2), v)
        # t_i t_i t_rest k^p e(m) = Q(k_i, k_{i+1}) e(m') t_rest k^p e(m)
        inner = (rest, p, m)
        mprime = apply_word(rest, m)
        const, lin = self.Q(mprime, i)
        if const:
            _add_into(acc, ((inner, const),))
        for idx, coeff in lin.items():
            _add_into(acc, self._lmul_kappa(idx, inner), coeff)
        return _freeze(acc)

    # -- public API
    def lmul(self, gen: tuple, expr: Mapping) -> dict:
        """Left-multiply a normal-form expression by one generator."""
        kind = gen[0]
        out: dict = {}
        for mono, v in expr.items():
            if kind == "t":
                _add_into(out, self._lmul_tau(gen[1], mono), v)
            elif kind == "k":
                n = len(mono[2])
                if not 1 <= gen[1] <= n:
                    raise IndexOutOfRange(f"kappa_{gen[1]} with n = {n}")
                _add_into(out, self._lmul_kappa(gen[1], mono), v)
            elif kind == "e":
                if self.left_idempotent(mono) == tuple(gen[1]):
                    _add_into(out, ((mono, v),))
            else:
                raise ValueError(f"unknown generator {gen!r}")
        return out

    def normal_form(self, gens: Sequence[tuple], beta: Sequence[int] | None = None) -> dict:
        """Normal form of a product of generators ``('e', m)``, ``('k', j)``, ``('t', i)``.

        Without a trailing idempotent the product is multiplied by the unit
        ``sum_m e(m)`` of ``R_beta``.
        """
        self._steps = 0
        gens = list(gens)
        if gens and gens[-1][0] == "e":
            expr = self.idempotent(gens.pop()[1])
        else:
            if beta is None:
                raise ValueError("beta is required without a trailing idempotent")
            expr = {}
            for m in words_of_weight(self.cartan, beta):
                _add_into(expr, self.idempotent(m).items())
        for g in reversed(gens):
            expr = self.lmul(g, expr)
        return expr

    def multiply(self, x: Mapping, y: Mapping) -> dict:
        """Product of two normal-form expressions."""
        out: dict = {}
        for (word, p, m), v in x.items():
            # y * ... : left-multiply y by e(m), kappa^p, then taus
            part: dict = {}
            for mono, u in y.items():
                if self.left_idempotent(mono) == m:
                    _add_into(part, ((mono, u),))
            for j, e in enumerate(p, start=1):
                for _ in range(e):
                    part = self.lmul(("k", j), part)
            for i in reversed(word):
                part = self.lmul(("t", i), part)
            _add_into(out, part.items(), v)
        return out

    def expr_from_monomial(self, mono: Mono) -> list[tuple]:
        """Generator sequence of a normal-form monomial."""
        word, p, m = mono
        gens: list[tuple] = [("t", i) for i in word]
        for j, e in enumerate(p, start=1):
            gens.extend([("k", j)] * e)
        gens.append(("e", m))
        return gens


# -- graded dimensions -------------------------------------------------------

def _block_perms(m: Word, m2: Word) -> list[tuple[int, ...]]:
    """Bijections ``w`` of positions with ``m2[w(k)] = m[k]``."""
    n = len(m)
    slots: dict[int, list[int]] = {}
    for pos, a in enumerate(m2):
        slots.setdefault(a, []).append(pos)
    letters = sorted(slots)
    groups = [[k for k in range(n) if m[k] == a] for a in letters]
    out = []
    for choice in product(*[permutations(slots[a]) for a in letters]):
        w = [0] * n
        for grp, img in zip(groups, choice):
            for k, target in zip(grp, img):
                w[k] = target
        out.append(tuple(w))
    return out


def gdim_numerator(c: CartanData, m: Sequence[int], m2: Sequence[int]) -> LaurentPoly:
    m, m2 = tuple(m), tuple(m2)
    if word_weight(c, m) != word_weight(c, m2):
        raise WeightMismatch(f"{m} and {m2} have different weights")
    acc: dict[int, int] = {}
    n = len(m)
    for w in _block_perms(m, m2):
        d = 0
        for k in range(n):
            for l in range(k + 1, n):
                if w[k] > w[l]:
                    d += pair_degree(c, m[k], m[l])
        acc[d] = acc.get(d, 0) + 1
    return LaurentPoly(acc)


def gdim_block(c: CartanData, m: Sequence[int], m2: Sequence[int]) -> RatFun:
    """Closed formula for the graded dimension of ``e(m2) R e(m)``."""
    return RatFun.from_laurent(gdim_numerator(c, m, m2)) * form_normalizer(len(tuple(m)))


def gdim_enumerate(alg: KLRAlgebra, m: Sequence[int], m2: Sequence[int], D: int, max_ht: int = 4) -> TruncSeries:
    """Count normal-form monomials of ``e(m2) R e(m)`` degree by degree up to ``D``."""
    m, m2 = tuple(m), tuple(m2)
    n = len(m)
    if n > max_ht:
        raise RangeExceeded(f"height {n} exceeds {max_ht}")
    if word_weight(alg.cartan, m) != word_weight(alg.cartan, m2):
        raise WeightMismatch(f"{m} and {m2} have different weights")
    counts: dict[int, int] = {}
    for perm in permutations(range(n)):
        word = lex_least_word(perm)
        if apply_word(word, m) != m2:
            continue
        base = alg.degree((word, (0,) * n, m))
        if base > D:
            continue
        budget = (D - base) // 2
        # monomials kappa^p with |p| = s: C(s + n - 1, n - 1)
        for s in range(budget + 1):
            num = 1
            for r in range(1, n):
                num = num * (s + r) // r
            counts[base + 2 * s] = counts.get(base + 2 * s, 0) + num
    lo = min(counts) if counts else D + 1
    return TruncSeries(lo, [counts.get(d, 0) for d in range(lo, D + 1)], D)


def gdim_series(c: CartanData, m: Sequence[int], m2: Sequence[int], D: int) -> TruncSeries:
    return series_expand(gdim_block(c, m, m2), D)


# -- polynomial representation ----------------------------------------------

Poly = dict  # exponent tuple -> int


def _poly_add(acc: dict, f: Mapping, s: int = 1) -> None:
    for k, v in f.items():
        x = acc.get(k, 0) + s * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


def _swap_exps(e: tuple, i: int) -> tuple:
    e = list(e)
    e[i - 1], e[i] = e[i], e[i - 1]
    return tuple(e)


def _demazure(f: Mapping, i: int) -> dict:
    """``(f - s_i f) / (x_{i+1} - x_i)``."""
    out: dict = {}
    for e, v in f.items():
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        # (x^a y^b - x^b y^a)/(y - x) = -(x^a y^b - x^b y^a)/(x - y)
        lo, hi = min(a, b), max(a, b)
        sign = -1 if a > b else 1
        for j in range(hi - lo):
            ee = list(e)
            if a > b:
                ee[i - 1], ee[i] = lo + j, lo + (hi - lo - 1 - j)
            else:
                ee[i - 1], ee[i] = lo + (hi - lo - 1 - j), lo + j
            _poly_add(out, {tuple(ee): v * sign})
    return out


class PolyRep:
    """The polynomial representation on ``sum_m Z[x_1..x_n] e(m)``.

    ``kappa_j`` multiplies by ``x_j``.  ``tau_i`` on ``e(m)`` is the divided
    difference ``(f - s_i f)/(x_{i+1} - x_i)`` for equal letters, ``s_i`` for
    distant letters and for adjacent letters with an arrow ``m_i -> m_{i+1}``,
    and ``(x_{i+1} - x_i) s_i`` for the remaining adjacent case.
    """

    def __init__(self, alg: KLRAlgebra):
        self.alg = alg
        self.cartan = alg.cartan

    def act(self, gen: tuple, vec: Mapping[Word, Mapping]) -> dict:
        out: dict = {}
        kind = gen[0]
        for m, f in vec.items():
            if kind == "e":
                if tuple(gen[1]) == m:
                    out[m] = dict(f)
                continue
            if kind == "k":
                j = gen[1]
                g = {}
                for e, v in f.items():
                    ee = list(e)
                    ee[j - 1] += 1
                    g[tuple(ee)] = v
                target = m
            elif kind == "t":
                i = gen[1]
                a, b = m[i - 1], m[i]
                target = _sigma(i, m)
                if a == b:
                    g = _demazure(f, i)
                else:
                    g = {_swap_exps(e, i): v for e, v in f.items()}
                    if self.cartan.adjacent(a, b) and not self.alg.h(m, i):
                        h: dict = {}
                        for e, v in g.items():
                            up = list(e)
                            up[i] += 1
                            dn = list(e)
                            dn[i - 1] += 1
                            _poly_add(h, {tuple(up): v, tuple(dn): -v})
                        g = h
            else:
                raise ValueError(f"unknown generator {gen!r}")
            if g:
                acc = out.setdefault(target, {})
                _poly_add(acc, g)
                if not acc:
                    out.pop(target)
        return out

    def act_word(self, gens: Sequence[tuple], vec: Mapping) -> dict:
        for g in reversed(list(gens)):
            vec = self.act(g, vec)
        return vec

    def act_expr(self, expr: Mapping[Mono, int], vec: Mapping) -> dict:
        out: dict = {}
        for mono, v in expr.items():
            res = self.act_word(self.alg.expr_from_monomial(mono), vec)
            for m, f in res.items():
                acc = out.setdefault(m, {})
                _poly_add(acc, f, v)
                if not acc:
                    out.pop(m)
        return out
