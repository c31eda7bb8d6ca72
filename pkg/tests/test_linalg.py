from __future__ import annotations

import random
from fractions import Fraction

import pytest
from flint import fmpq, fmpq_mat

from klrpbw.exact import LaurentPoly, RatFun
from klrpbw.linalg import (
    BasisSolver,
    NotInSpan,
    SingularBasis,
    determinant,
    identity,
    inverse,
    is_unitriangular,
    matmul,
    pivot_columns,
    solve,
)


def _rand_entry(rng):
    num = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3), rng.randint(-2, 2): rng.randint(-3, 3)})
    den = LaurentPoly({0: 1, rng.randint(1, 2): rng.choice([-1, 0, 1])})
    return RatFun(num, den)


def _rand_matrix(rng, n):
    return [[_rand_entry(rng) for _ in range(n)] for _ in range(n)]


def _at(M, x):
    return [[fmpq(v(x).numerator, v(x).denominator) for v in row] for row in M]


@pytest.mark.parametrize("seed", range(12))
def test_determinant_matches_flint_at_points(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    M = _rand_matrix(rng, n)
    d = determinant(M)
    for x in (Fraction(1, 3), Fraction(5, 7), Fraction(-2, 9)):
        dens = [v.denominator for row in M for v in row]
        if any(p(x) == 0 for p in (RatFun.from_laurent(q) for q in dens)):
            continue
        ref = fmpq_mat(_at(M, x)).det()
        val = d(x)
        assert fmpq(val.numerator, val.denominator) == ref


@pytest.mark.parametrize("seed", range(8))
def test_inverse_roundtrip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    M = _rand_matrix(rng, n)
    if determinant(M).is_zero():
        pytest.skip("singular sample")
    assert matmul(M, inverse(M)) == identity(n)


def test_singular_and_not_in_span():
    A = [[RatFun(1), RatFun(2)], [RatFun(2), RatFun(4)]]
    with pytest.raises(SingularBasis):
        solve(A, [[RatFun(1)], [RatFun(0)]])
    tall = [[RatFun(1)], [RatFun(0)]]
    with pytest.raises(NotInSpan):
        solve(tall, [[RatFun(0)], [RatFun(1)]])


def test_basis_solver_and_pivots():
    cols = [{"a": 1, "b": 1}, {"a": 2, "b": 2}, {"b": 1}]
    assert pivot_columns(cols, ["a", "b"]) == [0, 2]
    s = BasisSolver([cols[0], cols[2]], ["a", "b"])
    assert s.coordinates({"a": 3, "b": 5}) == [RatFun(3), RatFun(2)]
    with pytest.raises(NotInSpan):
        BasisSolver([cols[0]], ["a", "b"]).coordinates({"a": 1})


def test_unitriangular():
    assert is_unitriangular([[1, LaurentPoly({1: 1})], [0, 1]])
    assert not is_unitriangular([[1, 0], [1, 1]])
    assert is_unitriangular([[1, 0], [1, 1]], upper=False)
