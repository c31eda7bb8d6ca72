"""Root data for simply-laced Dynkin types.

Vertices are labelled ``1..n``.  Conventions:

* ``A_n``: the path ``1 - 2 - ... - n``;
* ``D_n``: the path ``1 - ... - (n-2)`` with ``n-1`` and ``n`` both attached to
  ``n-2`` (so ``D_4`` has centre ``2``);
* ``E_n``: Bourbaki labelling, ``1-3-4-5-6(-7-8)`` with ``2`` attached to ``4``.

Weights are tuples of non-negative integers, the coordinates in the basis of
simple roots.  Words are tuples of vertex labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CartanData",
    "CapExceeded",
    "PatternMismatch",
    "NotSinkOrSource",
    "cartan",
    "positive_roots",
    "is_reduced",
    "is_w0_word",
    "enumerate_w0_words",
    "count_w0_words",
    "gamma_sequence",
    "word_move",
    "move_positions",
    "move_path",
    "sinks",
    "sources",
    "reflect",
    "is_adapted",
    "reference_orientation",
    "adapted_orientation",
    "kostant_partitions",
    "kostant_count",
    "weights_up_to",
    "height",
    "simple_root",
]

Weight = tuple[int, ...]
Word = tuple[int, ...]
Orientation = frozenset


class CapExceeded(RuntimeError):
    """Enumeration would exceed the configured cap."""


class PatternMismatch(ValueError):
    """A 2-move or 3-move was requested where the letters do not fit."""


class NotSinkOrSource(ValueError):
    """Reflection of an orientation at a vertex that is neither sink nor source."""


def _edges(typ: str, n: int) -> list[tuple[int, int]]:
    if typ == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, n)]
    if typ == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if typ == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
    raise ValueError(f"unsupported type {typ!r}")


@dataclass(frozen=True)
class CartanData:
    type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    edges: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    def pair(self, i: int, j: int) -> int:
        """``(alpha_i, alpha_j)`` for vertex labels ``i, j``."""
        return self.cartan[i - 1][j - 1]

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Symmetric bilinear form on weights."""
        C = self.cartan
        return sum(a[i] * C[i][j] * b[j] for i in range(self.rank) if a[i] for j in range(self.rank) if b[j])

    def adjacent(self, i: int, j: int) -> bool:
        return self.pair(i, j) == -1

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.vertices if self.adjacent(i, j)]

    def reflect_weight(self, i: int, beta: Sequence[int]) -> Weight:
        """``s_i(beta) = beta - (beta, alpha_i) alpha_i``."""
        c = sum(beta[j] * self.cartan[j][i - 1] for j in range(self.rank))
        out = list(beta)
        out[i - 1] -= c
        return tuple(out)

    def __hash__(self) -> int:
        return hash((self.type, self.rank))


@lru_cache(maxsize=None)
def cartan(typ: str, rank: int) -> CartanData:
    typ = typ.upper()
    edges = _edges(typ, rank)
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        C[a - 1][b - 1] = C[b - 1][a - 1] = -1
    return CartanData(typ, rank, tuple(map(tuple, C)), tuple(edges))


def simple_root(c: CartanData, i: int) -> Weight:
    return tuple(1 if j == i - 1 else 0 for j in range(c.rank))


def height(beta: Sequence[int]) -> int:
    return sum(beta)


def _is_positive(beta: Sequence[int]) -> bool:
    return all(x >= 0 for x in beta) and any(beta)


@lru_cache(maxsize=None)
def positive_roots(c: CartanData) -> tuple[Weight, ...]:
    """All positive roots, in BFS order from the simple roots."""
    seen = [simple_root(c, i) for i in c.vertices]
    found = set(seen)
    queue = deque(seen)
    while queue:
        beta = queue.popleft()
        for i in c.vertices:
            gamma = c.reflect_weight(i, beta)
            if _is_positive(gamma) and gamma not in found:
                found.add(gamma)
                seen.append(gamma)
                queue.append(gamma)
    return tuple(seen)


def _gamma_raw(c: CartanData, word: Sequence[int]) -> list[Weight]:
    out = []
    for k, i in enumerate(word):
        beta = simple_root(c, i)
        for j in reversed(word[:k]):
            beta = c.reflect_weight(j, beta)
        out.append(beta)
    return out


def is_reduced(c: CartanData, word: Sequence[int]) -> bool:
    """A word is reduced iff its root sequence stays positive."""
    if any(i not in c.vertices for i in word):
        raise ValueError(f"letters of {word} not in {c.vertices}")
    return all(_is_positive(g) for g in _gamma_raw(c, word))


def is_w0_word(c: CartanData, word: Sequence[int]) -> bool:
    return len(word) == len(positive_roots(c)) and is_reduced(c, word)


def gamma_sequence(c: CartanData, word: Sequence[int]) -> tuple[Weight, ...]:
    """``gamma^(k) = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}`` for a reduced word of w0."""
    word = tuple(word)
    return _gamma_cached(c, word)


@lru_cache(maxsize=None)
def _gamma_cached(c: CartanData, word: Word) -> tuple[Weight, ...]:
    seq = _gamma_raw(c, word)
    if not all(_is_positive(g) for g in seq):
        raise ValueError(f"{word} is not reduced")
    if sorted(seq) != sorted(positive_roots(c)):
        raise ValueError(f"{word} is not a reduced word of w0")
    return tuple(seq)


# Weyl group elements are handled through their action on simple-root
# coordinates; u stands for w^-1 while peeling letters off the left of w.

def _apply(c: CartanData, u: tuple, beta: Sequence[int]) -> list[int]:
    return [sum(u[r][j] * beta[j] for j in range(c.rank)) for r in range(c.rank)]


def _compose_reflection(c: CartanData, u: tuple, i: int) -> tuple:
    """Matrix of ``u * s_i``."""
    n = c.rank
    cols = []
    for j in range(1, n + 1):
        cols.append(_apply(c, u, c.reflect_weight(i, simple_root(c, j))))
    return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))


@lru_cache(maxsize=None)
def _w0_matrix(c: CartanData) -> tuple:
    n = c.rank
    u = tuple(tuple(1 if r == j else 0 for j in range(n)) for r in range(n))
    while True:
        for i in c.vertices:
            col = [u[r][i - 1] for r in range(n)]
            if _is_positive(col):
                u = _compose_reflection(c, u, i)
                break
        else:
            return u


def _left_descents(c: CartanData, u: tuple) -> list[int]:
    # i is a left descent of w iff w^-1(alpha_i) < 0, i.e. column i of u negative
    n = c.rank
    return [i for i in c.vertices if all(u[r][i - 1] <= 0 for r in range(n))]


def count_w0_words(c: CartanData) -> int:
    memo: dict[tuple, int] = {}

    def count(u: tuple) -> int:
        if u in memo:
            return memo[u]
        ds = _left_descents(c, u)
        total = 1 if not ds else sum(count(_compose_reflection(c, u, i)) for i in ds)
        memo[u] = total
        return total

    return count(_w0_matrix(c))


def enumerate_w0_words(c: CartanData, cap: int = 10_000) -> list[Word]:
    """All reduced words of w0 in lexicographic order.

    Raises :class:`CapExceeded` before enumerating if there are more than ``cap``.
    """
    total = count_w0_words(c)
    if total > cap:
        raise CapExceeded(f"{c.name} has {total} reduced words of w0 (cap {cap})")
    out: list[Word] = []

    def walk(u: tuple, prefix: list[int]) -> None:
        ds = _left_descents(c, u)
        if not ds:
            out.append(tuple(prefix))
            return
        for i in ds:
            prefix.append(i)
            walk(_compose_reflection(c, u, i), prefix)
            prefix.pop()

    walk(_w0_matrix(c), [])
    return out


def word_move(c: CartanData, word: Sequence[int], pos: int, kind: int) -> Word:
    """Apply a 2-move or 3-move starting at 1-based position ``pos``."""
    word = tuple(word)
    p = pos - 1
    if kind == 2:
        if p < 0 or p + 1 >= len(word):
            raise PatternMismatch(f"no 2-move at position {pos} of {word}")
        a, b = word[p], word[p + 1]
        if a == b or c.pair(a, b) != 0:
            raise PatternMismatch(f"letters {a},{b} at position {pos} do not commute")
        return word[:p] + (b, a) + word[p + 2:]
    if kind == 3:
        if p < 0 or p + 2 >= len(word):
            raise PatternMismatch(f"no 3-move at position {pos} of {word}")
        a, b, a2 = word[p:p + 3]
        if a != a2 or not c.adjacent(a, b):
            raise PatternMismatch(f"letters {a},{b},{a2} at position {pos} are not i,j,i with i-j adjacent")
        return word[:p] + (b, a, b) + word[p + 3:]
    raise ValueError(f"move kind must be 2 or 3, got {kind}")


def move_positions(c: CartanData, word: Sequence[int]) -> list[tuple[int, int]]:
    """All ``(pos, kind)`` at which a move applies."""
    out = []
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a != b and c.pair(a, b) == 0:
            out.append((p + 1, 2))
        if p + 2 < len(word) and word[p + 2] == a and c.adjacent(a, b):
            out.append((p + 1, 3))
    return out


def move_path(c: CartanData, start: Sequence[int], goal: Sequence[int], limit: int = 100_000) -> list[tuple[int, int]]:
    """Shortest sequence of moves taking ``start`` to ``goal`` (BFS)."""
    start, goal = tuple(start), tuple(goal)
    if start == goal:
        return []
    prev: dict[Word, tuple[Word, tuple[int, int]] | None] = {start: None}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for pos, kind in move_positions(c, w):
            v = word_move(c, w, pos, kind)
            if v in prev:
                continue
            prev[v] = (w, (pos, kind))
            if v == goal:
                path = []
                while prev[v] is not None:
                    w0, mv = prev[v]
                    path.append(mv)
                    v = w0
                return path[::-1]
            if len(prev) > limit:
                raise CapExceeded("move graph search exceeded limit")
            queue.append(v)
    raise ValueError(f"{goal} not reachable from {start} by moves")


# -- orientations -----------------------------------------------------------

def reference_orientation(c: CartanData) -> Orientation:
    """Every edge oriented from the smaller label to the larger."""
    return frozenset((min(e), max(e)) for e in c.edges)


def _check_orientation(c: CartanData, omega: Iterable[tuple[int, int]]) -> None:
    und = sorted(tuple(sorted(h)) for h in omega)
    if und != sorted(tuple(sorted(e)) for e in c.edges):
        raise ValueError(f"{sorted(omega)} is not an orientation of {c.name}")


def sinks(c: CartanData, omega: Orientation) -> set[int]:
    return {i for i in c.vertices if not any(h[0] == i for h in omega)}


def sources(c: CartanData, omega: Orientation) -> set[int]:
    return {i for i in c.vertices if not any(h[1] == i for h in omega)}


def reflect(c: CartanData, omega: Orientation, i: int) -> Orientation:
    """Reverse the arrows at a sink or source ``i``."""
    _check_orientation(c, omega)
    if i not in sinks(c, omega) and i not in sources(c, omega):
        raise NotSinkOrSource(f"{i} is neither a sink nor a source of {sorted(omega)}")
    return frozenset((h[1], h[0]) if i in h else h for h in omega)


def is_adapted(c: CartanData, word: Sequence[int], omega: Orientation) -> bool:
    if not is_reduced(c, word):
        raise ValueError(f"{tuple(word)} is not reduced")
    for i in word:
        if i not in sinks(c, omega):
            return False
        omega = reflect(c, omega, i)
    return True


def adapted_orientation(c: CartanData, word: Sequence[int]) -> Orientation | None:
    """An orientation to which ``word`` is adapted, or ``None``."""
    from itertools import product

    for flips in product((False, True), repeat=len(c.edges)):
        omega = frozenset((b, a) if f else (a, b) for (a, b), f in zip(c.edges, flips))
        if is_adapted(c, word, omega):
            return omega
    return None


# -- Kostant partitions -----------------------------------------------------

def kostant_partitions(c: CartanData, beta: Sequence[int]) -> list[tuple[Weight, ...]]:
    """Multisets of positive roots summing to ``beta``, as sorted tuples."""
    return list(_kostant(c, tuple(beta)))


@lru_cache(maxsize=None)
def _kostant(c: CartanData, beta: Weight) -> tuple[tuple[Weight, ...], ...]:
    roots = positive_roots(c)
    out: list[tuple[Weight, ...]] = []

    def rec(idx: int, rest: list[int], acc: list[Weight]) -> None:
        if not any(rest):
            out.append(tuple(sorted(acc)))
            return
        if idx == len(roots):
            return
        r = roots[idx]
        k = 0
        cur = list(rest)
        while all(x >= 0 for x in cur):
            rec(idx + 1, cur, acc + [r] * k)
            k += 1
            cur = [x - y for x, y in zip(cur, r)]

    if any(x < 0 for x in beta):
        return ()
    rec(0, list(beta), [])
    return tuple(sorted(out))


def kostant_count(c: CartanData, beta: Sequence[int]) -> int:
    if any(x < 0 for x in beta):
        return 0
    return len(_kostant(c, tuple(beta)))


def weights_up_to(c: CartanData, ht_max: int, ht_min: int = 1) -> list[Weight]:
    """All nonzero ``beta`` in Q+ with ``ht_min <= ht <= ht_max``, by height then lex."""
    out = []

    def rec(prefix: list[int], left: int) -> Iterator:
        if len(prefix) == c.rank:
            yield tuple(prefix)
            return
        for x in range(left + 1):
            yield from rec(prefix + [x], left - x)

    for h in range(ht_min, ht_max + 1):
        out.extend(sorted(b for b in rec([], h) if sum(b) == h))
    return out
