"""Canonical bases, simple characters and transition matrices.

For a reduced word ``i`` and weight ``beta`` the lower PBW basis gives:

* the canonical basis ``G_b`` (bar-invariant, ``G_b in E~_b + sum t Z[t] E~_b'``);
* simple characters ``gch L_b``, the form-dual family of ``{G_b}``;
* the matrices ``[P:E~]``, ``[E~:E]``, ``[E:L]`` and ``[P:L]``.

Matrices are lists of rows indexed by the data of the weight in increasing
order; entry ``[X:Y][b][b']`` is the multiplicity of ``Y_b'`` in ``X_b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exact import ONE, LaurentPoly, RatFun
from .linalg import BasisSolver, determinant, inverse, matmul
from .pbw import Element, LusztigDatum, PBWBasis, pbw_basis, upper_scale
from .roots import CartanData, kostant_count, kostant_partitions, positive_roots
from .words import WordElement, form_normalizer, pair_with_monomials, words_of_weight

__all__ = [
    "NoSolution",
    "NonPolynomialCoefficient",
    "SingularGram",
    "CanonicalBasis",
    "Transitions",
    "canonical_basis",
    "simple_characters",
    "projective_characters",
    "transition_matrices",
    "determinant_closed_form",
    "determinant_from_data",
    "determinant_ep_product",
    "determinant_direct",
    "simple_characters_by_expansion",
    "gram_matrix",
]


class NoSolution(RuntimeError):
    """The bar-invariance equations have no solution in the required shape."""


class NonPolynomialCoefficient(NoSolution):
    """A canonical-basis coefficient failed to be a Laurent polynomial."""


class SingularGram(RuntimeError):
    """The Gram matrix of the canonical basis is singular."""


@dataclass
class CanonicalBasis:
    pbw: PBWBasis
    coefficients: list[list[RatFun]]  # [P:E~][b][b']
    members: list[Element]

    @property
    def data(self) -> list[LusztigDatum]:
        return self.pbw.data

    def member(self, d: LusztigDatum) -> Element:
        return self.members[self.pbw.index[d]]


def _positive_part(p: LaurentPoly) -> LaurentPoly:
    return p.truncate_positive()


@lru_cache(maxsize=None)
def _canonical(c: CartanData, word: tuple, beta: tuple) -> CanonicalBasis:
    B = pbw_basis(c, word, beta)
    R = B.bar_matrix()
    n = len(B.data)
    # P[j][k]: coefficient of E~_j in G_k
    P = [[RatFun() for _ in range(n)] for _ in range(n)]
    for k in range(n):
        P[k][k] = RatFun(1)
        for j in range(k - 1, -1, -1):
            rhs = RatFun()
            for l in range(j + 1, k + 1):
                if P[l][k] and R[j][l]:
                    rhs = rhs + P[l][k].bar() * R[j][l]
            if not rhs.is_laurent():
                raise NonPolynomialCoefficient(f"non-Laurent right-hand side {rhs} at {B.data[j]}, {B.data[k]}")
            r = rhs.as_laurent()
            if r.coefficient(0):
                raise NoSolution(f"right-hand side {r} has a constant term at {B.data[j]}, {B.data[k]}")
            p = _positive_part(r)
            if p - p.bar() != r:
                raise NoSolution(f"right-hand side {r} is not of the form p - bar(p)")
            P[j][k] = RatFun.from_laurent(p)
    members = []
    for k in range(n):
        acc = None
        for j in range(n):
            if P[j][k]:
                term = B.vectors[j].lower.scale(P[j][k])
                acc = term if acc is None else acc + term
        members.append(acc)
    coeffs = [[P[bp][b] for bp in range(n)] for b in range(n)]
    return CanonicalBasis(B, coeffs, members)


def canonical_basis(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> CanonicalBasis:
    return _canonical(c, tuple(word), tuple(beta))


def gram_matrix(c: CartanData, elements: Sequence[Element]) -> list[list[RatFun]]:
    """Form matrix of elements carrying word expansions and monomial presentations."""
    return [[pair_with_monomials(x.chars, y.mono) for y in elements] for x in elements]


@dataclass
class Transitions:
    data: list[LusztigDatum]
    P_Et: list[list[RatFun]]
    Et_E: list[list[RatFun]]
    E_L: list[list[RatFun]]
    P_L: list[list[RatFun]]
    simple: list[WordElement]  # gch L_b
    projective: list[WordElement]  # gch P_b
    duals: list[WordElement]  # word expansions of the dual vectors


@lru_cache(maxsize=None)
def _transitions(c: CartanData, word: tuple, beta: tuple) -> Transitions:
    cb = canonical_basis(c, word, beta)
    n = len(cb.data)
    ht = sum(beta)
    norm = form_normalizer(ht)
    gram = gram_matrix(c, cb.members)
    try:
        ginv = inverse(gram)
    except Exception as exc:  # SingularBasis from the solver
        raise SingularGram(f"Gram matrix at {beta} is singular") from exc
    duals = []
    for b in range(n):
        acc = WordElement.zero(beta)
        for bb in range(n):
            if ginv[bb][b]:
                acc = acc + cb.members[bb].chars.scale(ginv[bb][b])
        duals.append(acc)
    simple = [x.scale(norm) for x in duals]
    projective = [g.chars.scale(norm) for g in cb.members]
    # [E:L]: expand gch of the upper PBW modules in simple characters
    keys = words_of_weight(c, beta)
    solver = BasisSolver([s.terms for s in simple], keys)
    E_L = []
    for v in cb.pbw.vectors:
        gch_upper = v.lower.chars.scale(v.upper_scale * norm)
        E_L.append(solver.coordinates(gch_upper.terms))
    Et_E = [[RatFun(1) / upper_scale(cb.data[b]) if b == bb else RatFun() for bb in range(n)] for b in range(n)]
    return Transitions(list(cb.data), cb.coefficients, Et_E, E_L, gram, simple, projective, duals)


def transition_matrices(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> Transitions:
    return _transitions(c, tuple(word), tuple(beta))


def simple_characters(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> dict[LusztigDatum, WordElement]:
    tr = transition_matrices(c, word, beta)
    return dict(zip(tr.data, tr.simple))


def projective_characters(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> dict[LusztigDatum, WordElement]:
    tr = transition_matrices(c, word, beta)
    return dict(zip(tr.data, tr.projective))


def simple_characters_by_expansion(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> list[WordElement]:
    """``gch L_b [m]`` = coefficient of ``G_b`` in ``E_m``; independent of the Gram inverse."""
    from .words import monomial_image

    cb = canonical_basis(c, word, beta)
    keys = words_of_weight(c, beta)
    solver = BasisSolver([g.chars.terms for g in cb.members], keys)
    n = len(cb.data)
    cols: list[dict] = [dict() for _ in range(n)]
    for m in keys:
        coords = solver.coordinates(monomial_image(c, m).terms)
        for b, a in enumerate(coords):
            if a:
                cols[b][m] = a
    return [WordElement(col, beta) for col in cols]


# -- determinants ------------------------------------------------------------

def _one_minus_t2s(s: int) -> LaurentPoly:
    return LaurentPoly({0: 1, 2 * s: -1})


def determinant_closed_form(c: CartanData, beta: Sequence[int]) -> RatFun:
    """``prod_{alpha > 0} prod_{s >= 1} (1 - t^{2s})^{-P(beta - s alpha)}``."""
    beta = tuple(beta)
    den = LaurentPoly(1)
    for alpha in positive_roots(c):
        s = 1
        while True:
            rest = tuple(b - s * a for b, a in zip(beta, alpha))
            if any(x < 0 for x in rest):
                break
            e = kostant_count(c, rest)
            if e:
                den = den * _one_minus_t2s(s) ** e
            s += 1
    return RatFun(1, den)


def determinant_from_data(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> RatFun:
    """``prod_b [E~_b : E_b]`` over the data of ``beta`` for ``word``."""
    out = RatFun(1)
    for d in pbw_basis(c, word, beta).data:
        out = out / upper_scale(d)
    return out


def determinant_direct(c: CartanData, word: Sequence[int], beta: Sequence[int]) -> RatFun:
    return determinant(transition_matrices(c, word, beta).P_L)


def determinant_ep_product(c: CartanData, beta: Sequence[int]) -> RatFun:
    """Coefficient of ``q^beta`` in ``prod_alpha ep_t(q^alpha)`` under the ordinary product.

    ``ep_t(x) = sum_n x^n / ((1 - t^2) ... (1 - t^{2n}))``.
    """
    acc = RatFun()
    for part in kostant_partitions(c, beta):
        term = LaurentPoly(1)
        for alpha in set(part):
            for s in range(1, part.count(alpha) + 1):
                term = term * _one_minus_t2s(s)
        acc = acc + RatFun(1, term)
    return acc
