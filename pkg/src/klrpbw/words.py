"""Word-space model of the positive half and of graded characters.

An element ``x`` of ``U+`` is represented by its word expansion ``phi(x)``: the
image under the algebra map into the quantum shuffle algebra that sends
``E_i`` to the one-letter word ``[i]``.  The shuffle twist is
``t^{-(alpha_a, alpha_b)}`` whenever a letter ``a`` of the left factor ends up
after a letter ``b`` of the right factor.  With this twist
``(1 - t^2)^{-ht} * phi(x)`` is the graded character of the corresponding
module over the KLR algebra.

Monomial presentations (dicts ``word -> coefficient`` standing for
``sum coeff * E_word``) are accepted where the bilinear form needs them.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .exact import ONE, LaurentPoly, RatFun, as_ratfun
from .linalg import BasisSolver, NotInSpan, pivot_columns
from .roots import CartanData, kostant_count

__all__ = [
    "WordElement",
    "WeightMismatch",
    "NotInSpan",
    "WeightBasis",
    "word_weight",
    "words_of_weight",
    "shuffle",
    "shuffle_words",
    "monomial_image",
    "phi",
    "weight_basis",
    "lusztig_form",
    "form",
    "pair_with_monomials",
    "bar_element",
    "bar_chars",
    "skew_derivation",
    "leading_power",
    "trailing_power",
    "form_normalizer",
    "check_dimension",
]

Word = tuple[int, ...]


class WeightMismatch(ValueError):
    """Operands live in different weight spaces."""


def word_weight(c: CartanData, word: Sequence[int]) -> tuple[int, ...]:
    w = [0] * c.rank
    for i in word:
        w[i - 1] += 1
    return tuple(w)


def words_of_weight(c: CartanData, beta: Sequence[int]) -> list[Word]:
    """All words of weight ``beta`` in lexicographic order."""
    return list(_words_of_weight(tuple(beta)))


@lru_cache(maxsize=None)
def _words_of_weight(beta: tuple[int, ...]) -> tuple[Word, ...]:
    letters = [i + 1 for i, k in enumerate(beta) for _ in range(k)]
    return tuple(sorted(set(permutations(letters))))


class WordElement:
    """A homogeneous finite combination of words with rational coefficients."""

    __slots__ = ("terms", "weight")

    def __init__(self, terms: Mapping[Word, object] | None = None, weight: Sequence[int] | None = None):
        clean: dict[Word, RatFun] = {}
        for w, v in (terms or {}).items():
            v = as_ratfun(v)
            if v:
                clean[tuple(w)] = v
        self.terms = clean
        if weight is None:
            if not clean:
                raise ValueError("weight required for the zero element")
            first = next(iter(clean))
            weight = tuple(first.count(i) for i in range(1, max(max(w) for w in clean) + 1))
        self.weight = tuple(weight)
        n = len(self.weight)
        for w in clean:
            if tuple(w.count(i) for i in range(1, n + 1)) != self.weight or any(i > n for i in w):
                raise WeightMismatch(f"word {w} does not have weight {self.weight}")

    @classmethod
    def _trusted(cls, terms: dict[Word, RatFun], weight: tuple[int, ...]) -> "WordElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.weight = weight
        return obj

    @classmethod
    def word(cls, c: CartanData, w: Sequence[int], coeff=1) -> "WordElement":
        return cls({tuple(w): coeff}, word_weight(c, w))

    @classmethod
    def zero(cls, weight: Sequence[int]) -> "WordElement":
        return cls._trusted({}, tuple(weight))

    def __getitem__(self, w: Sequence[int]) -> RatFun:
        return self.terms.get(tuple(w), RatFun())

    def coefficient(self, w: Sequence[int]) -> RatFun:
        return self[w]

    def support(self) -> list[Word]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def height(self) -> int:
        return sum(self.weight)

    def _check(self, other: "WordElement") -> None:
        if self.weight != other.weight:
            raise WeightMismatch(f"{self.weight} vs {other.weight}")

    def __add__(self, other: "WordElement") -> "WordElement":
        self._check(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            s = out.get(w)
            s = v if s is None else s + v
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return WordElement._trusted(out, self.weight)

    def __neg__(self) -> "WordElement":
        return WordElement._trusted({w: -v for w, v in self.terms.items()}, self.weight)

    def __sub__(self, other: "WordElement") -> "WordElement":
        return self + (-other)

    def scale(self, a) -> "WordElement":
        a = as_ratfun(a)
        if not a:
            return WordElement.zero(self.weight)
        return WordElement._trusted({w: a * v for w, v in self.terms.items()}, self.weight)

    def __mul__(self, a) -> "WordElement":
        if isinstance(a, WordElement):
            return NotImplemented
        return self.scale(a)

    __rmul__ = __mul__

    def map_coefficients(self, f) -> "WordElement":
        out = {}
        for w, v in self.terms.items():
            v = f(v)
            if v:
                out[w] = v
        return WordElement._trusted(out, self.weight)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordElement):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.weight, frozenset(self.terms.items())))

    def as_dict(self) -> dict[Word, RatFun]:
        return dict(self.terms)

    def is_laurent(self) -> bool:
        return all(v.is_laurent() for v in self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            v = self.terms[w]
            word = "[" + "".join(map(str, w)) + "]"
            parts.append(word if v == ONE else f"({v}){word}")
        return " + ".join(parts)


# -- shuffle product --------------------------------------------------------

def _twist(c: CartanData, a: int, b: int) -> int:
    return -c.pair(a, b)


@lru_cache(maxsize=200_000)
def _shuffle_words(c: CartanData, u: Word, v: Word) -> tuple[tuple[Word, LaurentPoly], ...]:
    if not u:
        return ((v, ONE),)
    if not v:
        return ((u, ONE),)
    out: dict[Word, LaurentPoly] = {}
    # first letter from u: no crossings created
    for w, p in _shuffle_words(c, u[1:], v):
        key = (u[0],) + w
        out[key] = out.get(key, LaurentPoly()) + p
    # first letter from v: it precedes every letter of u
    b = v[0]
    exp = sum(_twist(c, a, b) for a in u)
    for w, p in _shuffle_words(c, u, v[1:]):
        key = (b,) + w
        out[key] = out.get(key, LaurentPoly()) + p.shift(exp)
    return tuple((w, p) for w, p in out.items() if p)


def shuffle_words(c: CartanData, u: Sequence[int], v: Sequence[int]) -> dict[Word, LaurentPoly]:
    return dict(_shuffle_words(c, tuple(u), tuple(v)))


def shuffle(c: CartanData, x: WordElement, y: WordElement) -> WordElement:
    weight = tuple(a + b for a, b in zip(x.weight, y.weight))
    out: dict[Word, RatFun] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            ab = a * b
            for w, p in _shuffle_words(c, u, v):
                term = ab * p
                s = out.get(w)
                out[w] = term if s is None else s + term
    return WordElement._trusted({w: v for w, v in out.items() if v}, weight)


@lru_cache(maxsize=None)
def _monomial_image(c: CartanData, m: Word) -> tuple[tuple[Word, LaurentPoly], ...]:
    if len(m) <= 1:
        return ((m, ONE),)
    a = m[0]
    out: dict[Word, LaurentPoly] = {}
    for w, p in _monomial_image(c, m[1:]):
        # insert the letter a at position k; it ends up after w[:k]
        exp = 0
        for k in range(len(w) + 1):
            key = w[:k] + (a,) + w[k:]
            out[key] = out.get(key, LaurentPoly()) + p.shift(exp)
            if k < len(w):
                exp += _twist(c, a, w[k])
    return tuple(sorted((w, p) for w, p in out.items() if p))


def monomial_image(c: CartanData, m: Sequence[int]) -> WordElement:
    """Word expansion of ``E_{m_1} ... E_{m_n}``."""
    m = tuple(m)
    return WordElement._trusted(
        {w: RatFun.from_laurent(p) for w, p in _monomial_image(c, m)}, word_weight(c, m)
    )


def phi(c: CartanData, mono: Mapping[Sequence[int], object], weight: Sequence[int] | None = None) -> WordElement:
    """Word expansion of a monomial presentation ``sum coeff * E_word``."""
    if weight is None:
        if not mono:
            raise ValueError("weight required for empty presentation")
        weight = word_weight(c, next(iter(mono)))
    weight = tuple(weight)
    out: dict[Word, RatFun] = {}
    for m, a in mono.items():
        a = as_ratfun(a)
        if not a:
            continue
        if word_weight(c, m) != weight:
            raise WeightMismatch(f"monomial {tuple(m)} has wrong weight")
        for w, p in _monomial_image(c, tuple(m)):
            term = a * p
            s = out.get(w)
            out[w] = term if s is None else s + term
    return WordElement._trusted({w: v for w, v in out.items() if v}, weight)


# -- weight spaces ----------------------------------------------------------

class WeightBasis:
    """A basis of ``U+_beta`` made of monomials, chosen greedily in lex order."""

    def __init__(self, c: CartanData, beta: Sequence[int]):
        self.cartan = c
        self.weight = tuple(beta)
        self.all_words = words_of_weight(c, beta)
        images = [monomial_image(c, m).terms for m in self.all_words]
        piv = pivot_columns(images, self.all_words)
        self.words = [self.all_words[j] for j in piv]
        self.images = [images[j] for j in piv]
        self.solver = BasisSolver(self.images, self.all_words)

    @property
    def dim(self) -> int:
        return len(self.words)

    def coordinates(self, x: WordElement) -> list[RatFun]:
        """Coefficients ``a_m`` with ``x = sum a_m E_m`` over the basis words."""
        if x.weight != self.weight:
            raise WeightMismatch(f"{x.weight} vs {self.weight}")
        return self.solver.coordinates(x.terms)

    def monomial_presentation(self, x: WordElement) -> dict[Word, RatFun]:
        return {m: a for m, a in zip(self.words, self.coordinates(x)) if a}

    def contains(self, x: WordElement) -> bool:
        try:
            self.coordinates(x)
        except NotInSpan:
            return False
        return True


@lru_cache(maxsize=None)
def _weight_basis(c: CartanData, beta: tuple[int, ...]) -> WeightBasis:
    return WeightBasis(c, beta)


def weight_basis(c: CartanData, beta: Sequence[int]) -> WeightBasis:
    return _weight_basis(c, tuple(beta))


def form_normalizer(n: int) -> RatFun:
    """``(1 - t^2)^{-n}``."""
    return RatFun(1, LaurentPoly({0: 1, 2: -1}) ** n)


def lusztig_form(c: CartanData, x: Mapping[Sequence[int], object], y: Mapping[Sequence[int], object]) -> RatFun:
    """Form of two monomial presentations.

    ``(E_m, E_m') = (1 - t^2)^{-n} * [coefficient of m' in phi(E_m)]``.
    """
    x = {tuple(k): v for k, v in x.items() if as_ratfun(v)}
    y = {tuple(k): v for k, v in y.items() if as_ratfun(v)}
    if not x or not y:
        return RatFun()
    wx = word_weight(c, next(iter(x)))
    wy = word_weight(c, next(iter(y)))
    if wx != wy:
        raise WeightMismatch(f"{wx} vs {wy}")
    X = phi(c, x, wx)
    acc = RatFun()
    for m, b in y.items():
        v = X[m]
        if v:
            acc = acc + as_ratfun(b) * v
    return acc * form_normalizer(sum(wx))


def pair_with_monomials(x: WordElement, y: Mapping[Sequence[int], object]) -> RatFun:
    """``(x, y)`` for ``x`` given by its word expansion and ``y`` by monomials."""
    acc = RatFun()
    for m, b in y.items():
        v = x[m]
        if v:
            acc = acc + as_ratfun(b) * v
    return acc * form_normalizer(x.height)


def form(c: CartanData, x: WordElement, y: WordElement) -> RatFun:
    """Form of two elements given by word expansions (uses a weight basis)."""
    if x.weight != y.weight:
        raise WeightMismatch(f"{x.weight} vs {y.weight}")
    if not x or not y:
        return RatFun()
    mono = weight_basis(c, y.weight).monomial_presentation(y)
    acc = RatFun()
    for m, b in mono.items():
        v = x[m]
        if v:
            acc = acc + b * v
    return acc * form_normalizer(x.height)


def bar_element(mono: Mapping[Sequence[int], object]) -> dict[Word, RatFun]:
    """Bar involution on a monomial presentation: conjugate the coefficients."""
    return {tuple(m): as_ratfun(a).bar() for m, a in mono.items() if as_ratfun(a)}


def bar_chars(c: CartanData, x: WordElement) -> WordElement:
    """Bar involution computed directly on word expansions.

    ``phi(bar x)[m] = t^{-N} * bar(phi(x)[reversed m])`` with
    ``N = ((beta, beta) - 2 ht(beta)) / 2``.
    """
    beta = x.weight
    N = (c.form(beta, beta) - 2 * sum(beta)) // 2
    shift = RatFun.from_laurent(LaurentPoly.monomial(-N))
    out = {w[::-1]: shift * v.bar() for w, v in x.terms.items()}
    return WordElement._trusted(out, beta)


def skew_derivation(c: CartanData, i: int, x: WordElement) -> WordElement:
    """Delete a leading letter ``i``; adjoint to left multiplication by ``E_i``."""
    if x.weight[i - 1] == 0:
        raise WeightMismatch(f"weight {x.weight} has no alpha_{i} component")
    weight = list(x.weight)
    weight[i - 1] -= 1
    out = {w[1:]: v for w, v in x.terms.items() if w[0] == i}
    return WordElement._trusted(out, tuple(weight))


def leading_power(x: WordElement, i: int) -> int:
    """Largest ``k`` such that some word of the support starts with ``i^k``."""
    best = 0
    for w in x.terms:
        k = 0
        while k < len(w) and w[k] == i:
            k += 1
        best = max(best, k)
    return best


def trailing_power(x: WordElement, i: int) -> int:
    best = 0
    for w in x.terms:
        k = 0
        while k < len(w) and w[-1 - k] == i:
            k += 1
        best = max(best, k)
    return best


def check_dimension(c: CartanData, beta: Sequence[int]) -> bool:
    return weight_basis(c, beta).dim == kostant_count(c, beta)
