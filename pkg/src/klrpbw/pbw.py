"""Lusztig data, PBW root vectors and PBW bases for any reduced word of w0.

Root vectors are built recursively from minimal pairs: for ``gamma = gamma^(k)``
not simple, pick ``gamma^(a) + gamma^(b) = gamma`` with ``a < k < b`` (largest
``a``, then smallest ``b``) and set

    E_gamma = E_{gamma^(b)} E_{gamma^(a)} - t E_{gamma^(a)} E_{gamma^(b)}.

The result is then normalised by a power of ``t`` (so that the bar matrix has
unit diagonal) and by a sign (so that its graded character is non-negative).
Every element carries both its word expansion and a monomial presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exact import ONE, LaurentPoly, RatFun, T, qfactorial, series_expand
from .linalg import BasisSolver, SingularBasis
from .roots import (
    CartanData,
    PatternMismatch,
    gamma_sequence,
    is_w0_word,
    move_path,
    positive_roots,
    word_move,
)
from .words import (
    WeightMismatch,
    WordElement,
    bar_chars,
    form_normalizer,
    monomial_image,
    shuffle,
    word_weight,
    words_of_weight,
)

__all__ = [
    "LusztigDatum",
    "PBWVector",
    "PBWBasis",
    "NoMinimalPair",
    "NonzeroLastCoordinate",
    "TriangularityViolation",
    "Element",
    "datum_lt",
    "datum_sort_key",
    "data_of_weight",
    "datum_weight",
    "move2_datum",
    "move3_datum",
    "move_datum",
    "transport_datum",
    "root_vector",
    "root_vector_info",
    "pbw_vector",
    "pbw_basis",
    "expand_in_pbw",
    "bar_matrix",
    "upper_scale",
    "sharp_word",
    "saito_shift",
]

Word = tuple[int, ...]


class NoMinimalPair(RuntimeError):
    """No minimal pair exists for a non-simple root (internal failure)."""


class NonzeroLastCoordinate(ValueError):
    """The datum shift is undefined when the last coordinate is nonzero."""


class TriangularityViolation(RuntimeError):
    """The bar matrix is not unitriangular for the datum order."""


@dataclass(frozen=True, order=False)
class LusztigDatum:
    word: Word
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.word) != len(self.c):
            raise ValueError("word and c must have equal length")
        if any(x < 0 for x in self.c):
            raise ValueError("datum entries must be non-negative")

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.c))})"


def datum_weight(c: CartanData, d: LusztigDatum) -> tuple[int, ...]:
    gam = gamma_sequence(c, d.word)
    w = [0] * c.rank
    for ck, g in zip(d.c, gam):
        if ck:
            for j in range(c.rank):
                w[j] += ck * g[j]
    return tuple(w)


def datum_lt(c: CartanData, d1: LusztigDatum, d2: LusztigDatum) -> bool:
    """``d1 <_i d2``: at the first differing index ``d1`` is larger."""
    if d1.word != d2.word:
        raise ValueError("data for different words are not comparable")
    if datum_weight(c, d1) != datum_weight(c, d2):
        raise WeightMismatch("data of different weights are not comparable")
    for a, b in zip(d1.c, d2.c):
        if a != b:
            return a > b
    return False


def datum_sort_key(d: LusztigDatum) -> tuple[int, ...]:
    """Ascending sort key for the datum order within a weight."""
    return tuple(-x for x in d.c)


def data_of_weight(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> list[LusztigDatum]:
    """All data of weight ``beta``, sorted increasingly for ``<_i``."""
    return list(_data_of_weight(c, tuple(word), tuple(beta)))


@lru_cache(maxsize=None)
def _data_of_weight(c: CartanData, word: Word, beta: tuple[int, ...]) -> tuple[LusztigDatum, ...]:
    gam = gamma_sequence(c, word)
    out = []

    def rec(k: int, rest: list[int], acc: list[int]) -> None:
        if k == len(gam):
            if not any(rest):
                out.append(LusztigDatum(word, tuple(acc)))
            return
        g = gam[k]
        x = 0
        cur = list(rest)
        while all(v >= 0 for v in cur):
            rec(k + 1, cur, acc + [x])
            x += 1
            cur = [a - b for a, b in zip(cur, g)]

    rec(0, list(beta), [])
    out.sort(key=datum_sort_key)
    return tuple(out)


# -- moves on data ----------------------------------------------------------

def move2_datum(c: CartanData, d: LusztigDatum, pos: int) -> LusztigDatum:
    word = word_move(c, d.word, pos, 2)
    p = pos - 1
    cc = list(d.c)
    cc[p], cc[p + 1] = cc[p + 1], cc[p]
    return LusztigDatum(word, tuple(cc))


def move3_datum(c: CartanData, d: LusztigDatum, pos: int) -> LusztigDatum:
    """3-move at the triple starting at 1-based ``pos``."""
    word = word_move(c, d.word, pos, 3)
    p = pos - 1
    a, b, e = d.c[p:p + 3]
    c0 = min(a, e)
    cc = list(d.c)
    cc[p:p + 3] = [b + e - c0, c0, a + b - c0]
    return LusztigDatum(word, tuple(cc))


def move_datum(c: CartanData, d: LusztigDatum, pos: int, kind: int) -> LusztigDatum:
    if kind == 2:
        return move2_datum(c, d, pos)
    if kind == 3:
        return move3_datum(c, d, pos)
    raise PatternMismatch(f"unknown move kind {kind}")


def transport_datum(c: CartanData, d: LusztigDatum, target: Sequence[int]) -> LusztigDatum:
    """Carry a datum to another reduced word along a fixed shortest move path."""
    for pos, kind in move_path(c, d.word, tuple(target)):
        d = move_datum(c, d, pos, kind)
    return d


# -- elements with monomial presentations -----------------------------------

@dataclass
class Element:
    """An element of ``U+``: word expansion plus a monomial presentation."""

    chars: WordElement
    mono: dict = field(default_factory=dict)

    @property
    def weight(self) -> tuple[int, ...]:
        return self.chars.weight

    def scale(self, a) -> "Element":
        a = RatFun._coerce(a)
        return Element(self.chars.scale(a), {m: a * v for m, v in self.mono.items() if a * v})

    def __add__(self, other: "Element") -> "Element":
        mono = dict(self.mono)
        for m, v in other.mono.items():
            s = mono.get(m, RatFun()) + v
            if s:
                mono[m] = s
            else:
                mono.pop(m, None)
        return Element(self.chars + other.chars, mono)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)


def _mono_product(x: dict, y: dict) -> dict:
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            key = u + v
            s = out.get(key, RatFun()) + a * b
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _product(c: CartanData, x: Element, y: Element) -> Element:
    return Element(shuffle(c, x.chars, y.chars), _mono_product(x.mono, y.mono))


def _unit(c: CartanData) -> Element:
    return Element(WordElement._trusted({(): RatFun(1)}, (0,) * c.rank), {(): RatFun(1)})


def _divided_power(c: CartanData, x: Element, n: int) -> Element:
    if n == 0:
        return _unit(c)
    out = x
    for _ in range(n - 1):
        out = _product(c, out, x)
    f = qfactorial(n)
    chars = out.chars.map_coefficients(lambda v: RatFun.from_laurent(v.as_laurent().divexact(f)))
    inv = RatFun(1, f)
    return Element(chars, {m: v * inv for m, v in out.mono.items()})


def _simple(c: CartanData, i: int) -> Element:
    chars = monomial_image(c, (i,))
    return Element(chars, {(i,): RatFun(1)})


# -- root vectors -----------------------------------------------------------

@dataclass
class RootVectorInfo:
    word: Word
    k: int
    root: tuple[int, ...]
    pair: tuple[int, int] | None
    t_shift: int
    sign: int
    element: Element
    all_pairs: list[tuple[int, int]]


def _minimal_pairs(c: CartanData, word: Word, k: int) -> list[tuple[int, int]]:
    gam = gamma_sequence(c, word)
    g = gam[k - 1]
    pairs = []
    for a in range(1, k):
        for b in range(k + 1, len(gam) + 1):
            if tuple(x + y for x, y in zip(gam[a - 1], gam[b - 1])) == g:
                pairs.append((a, b))
    # minimal: no other splitting pair strictly nested inside
    return [(a, b) for a, b in pairs if not any(a < x and y < b for x, y in pairs)]


def commutator(c: CartanData, word: Word, a: int, b: int, exponent: int = 1) -> Element:
    """``E_{gamma^(b)} E_{gamma^(a)} - t^e E_{gamma^(a)} E_{gamma^(b)}`` from normalised root vectors."""
    ea = root_vector(c, word, a)
    eb = root_vector(c, word, b)
    ba = _product(c, eb, ea)
    ab = _product(c, ea, eb)
    return ba - ab.scale(RatFun.from_laurent(LaurentPoly.monomial(exponent)))


@lru_cache(maxsize=None)
def root_vector_info(c: CartanData, word: Word, k: int) -> RootVectorInfo:
    word = tuple(word)
    gam = gamma_sequence(c, word)
    g = gam[k - 1]
    if sum(g) == 1:
        i = g.index(1) + 1
        return RootVectorInfo(word, k, g, None, 0, 1, _simple(c, i), [])
    pairs = _minimal_pairs(c, word, k)
    if not pairs:
        raise NoMinimalPair(f"no minimal pair for gamma^({k}) = {g} in {word}")
    a, b = max(pairs, key=lambda p: (p[0], -p[1]))
    raw = commutator(c, word, a, b)
    # sign: make the graded character non-negative
    sign = 1
    lead = _leading_series_sign(raw.chars)
    if lead < 0:
        sign = -1
        raw = raw.scale(-1)
    # t-power: make the diagonal of the bar matrix equal to 1
    shift = 0
    diag = _bar_diagonal(c, word, k, raw)
    if diag != ONE:
        lp = diag.as_laurent() if diag.is_laurent() else None
        if lp is None or not lp.is_monomial() or lp.coefficient(lp.valuation) != 1 or lp.valuation % 2:
            raise TriangularityViolation(f"root vector {k} of {word} has bar diagonal {diag}")
        shift = lp.valuation // 2
        raw = raw.scale(RatFun.from_laurent(LaurentPoly.monomial(shift)))
    return RootVectorInfo(word, k, g, (a, b), shift, sign, raw, pairs)


def _leading_series_sign(x: WordElement) -> int:
    """Sign of the lowest series coefficient at the lex-first word."""
    for w in sorted(x.terms):
        v = x.terms[w]
        num = v.numerator
        lead = num.coefficient(num.valuation) * v.denominator.coefficient(0)
        return 1 if lead > 0 else -1
    return 1


def _bar_diagonal(c: CartanData, word: Word, k: int, raw: Element) -> RatFun:
    """Coefficient of the candidate root vector in the PBW expansion of its bar."""
    gam = gamma_sequence(c, word)
    beta = gam[k - 1]
    data = data_of_weight(c, word, beta)
    vectors = []
    idx = None
    for j, d in enumerate(data):
        if d.c[k - 1] == 1 and sum(d.c) == 1:
            idx = j
            vectors.append(raw.chars.terms)
        else:
            vectors.append(_lower(c, d).chars.terms)
    solver = BasisSolver(vectors, words_of_weight(c, beta))
    coords = solver.coordinates(bar_chars(c, raw.chars).terms)
    return coords[idx]


def root_vector(c: CartanData, word: Sequence[int], k: int) -> Element:
    return root_vector_info(c, tuple(word), k).element


# -- PBW vectors and bases --------------------------------------------------

def upper_scale(d: LusztigDatum) -> RatFun:
    """``prod_j prod_{s <= c_j} (1 - t^{2s})``."""
    out = LaurentPoly(1)
    for cj in d.c:
        for s in range(1, cj + 1):
            out = out * LaurentPoly({0: 1, 2 * s: -1})
    return RatFun.from_laurent(out)


@dataclass
class PBWVector:
    datum: LusztigDatum
    lower: Element
    upper_scale: RatFun

    @property
    def lower_class(self) -> WordElement:
        return self.lower.chars

    @property
    def upper(self) -> Element:
        return self.lower.scale(self.upper_scale)


@lru_cache(maxsize=None)
def _lower_cached(c: CartanData, d: LusztigDatum) -> Element:
    out = _unit(c)
    for k, ck in enumerate(d.c, start=1):
        if ck:
            out = _product(c, out, _divided_power(c, root_vector(c, d.word, k), ck))
    return out


def _lower(c: CartanData, d: LusztigDatum) -> Element:
    return _lower_cached(c, d)


def pbw_vector(c: CartanData, d: LusztigDatum) -> PBWVector:
    if not is_w0_word(c, d.word):
        raise ValueError(f"{d.word} is not a reduced word of w0")
    return PBWVector(d, _lower(c, d), upper_scale(d))


class PBWBasis:
    """Lower PBW basis of one weight space for one reduced word."""

    def __init__(self, c: CartanData, word: Sequence[int], beta: Sequence[int]):
        self.cartan = c
        self.word = tuple(word)
        self.weight = tuple(beta)
        self.data = data_of_weight(c, self.word, self.weight)
        self.index = {d: j for j, d in enumerate(self.data)}
        self.vectors = [pbw_vector(c, d) for d in self.data]
        self.keys = words_of_weight(c, self.weight)
        try:
            self.solver = BasisSolver([v.lower.chars.terms for v in self.vectors], self.keys)
        except SingularBasis as exc:
            raise SingularBasis(f"PBW family for {self.word} at {self.weight} is dependent") from exc

    def __len__(self) -> int:
        return len(self.data)

    def coordinates(self, x: WordElement) -> list[RatFun]:
        if x.weight != self.weight:
            raise WeightMismatch(f"{x.weight} vs {self.weight}")
        return self.solver.coordinates(x.terms)

    def expand(self, x: WordElement) -> dict[LusztigDatum, RatFun]:
        return {d: a for d, a in zip(self.data, self.coordinates(x)) if a}

    def bar_matrix(self) -> list[list[RatFun]]:
        """``R[j][k]`` = coefficient of the j-th vector in bar of the k-th."""
        n = len(self.data)
        R = [[RatFun() for _ in range(n)] for _ in range(n)]
        for k, v in enumerate(self.vectors):
            col = self.coordinates(bar_chars(self.cartan, v.lower.chars))
            for j in range(n):
                R[j][k] = col[j]
        for k in range(n):
            if R[k][k] != ONE:
                raise TriangularityViolation(f"diagonal entry {R[k][k]} at {self.data[k]}")
            for j in range(k + 1, n):
                if R[j][k]:
                    raise TriangularityViolation(
                        f"bar of {self.data[k]} involves larger datum {self.data[j]}"
                    )
        return R


@lru_cache(maxsize=None)
def _pbw_basis(c: CartanData, word: Word, beta: tuple[int, ...]) -> PBWBasis:
    return PBWBasis(c, word, beta)


def pbw_basis(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> PBWBasis:
    return _pbw_basis(c, tuple(word), tuple(beta))


def expand_in_pbw(c: CartanData, x: WordElement, word: Sequence[int]) -> dict[LusztigDatum, RatFun]:
    return pbw_basis(c, word, x.weight).expand(x)


def bar_matrix(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> list[list[RatFun]]:
    return pbw_basis(c, word, beta).bar_matrix()


# -- datum shift -------------------------------------------------------------

def sharp_word(c: CartanData, word: Sequence[int]) -> Word:
    """``(i_2, ..., i_l, j)``: the unique reduced word of w0 of this shape."""
    word = tuple(word)
    for j in c.vertices:
        cand = word[1:] + (j,)
        if is_w0_word(c, cand):
            return cand
    raise ValueError(f"no rotated reduced word for {word}")


def saito_shift(c: CartanData, d_sharp: LusztigDatum, word: Sequence[int]) -> LusztigDatum:
    """Datum ``(c'_1..c'_{l-1}, 0)`` for ``i#`` to ``(0, c'_1..c'_{l-1})`` for ``i``."""
    word = tuple(word)
    if d_sharp.word != sharp_word(c, word):
        raise ValueError(f"datum word {d_sharp.word} is not the rotation of {word}")
    if d_sharp.c[-1] != 0:
        raise NonzeroLastCoordinate(f"last coordinate of {d_sharp} is {d_sharp.c[-1]}")
    return LusztigDatum(word, (0,) + d_sharp.c[:-1])
