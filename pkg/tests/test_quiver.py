from __future__ import annotations

import itertools

import pytest

from klrpbw.quiver import (
    NotSink,
    NotSource,
    WeightMismatch,
    degeneration_leq,
    epsilon,
    epsilon_star,
    euler_form,
    ext1_cocycle,
    ext1_dim,
    hom_dim,
    indecomposable,
    indecomposables,
    realize,
    saito_orbit,
    star_report,
)
from klrpbw.roots import cartan, kostant_partitions, weights_up_to

A2, A3, D4 = cartan("A", 2), cartan("A", 3), cartan("D", 4)
O12 = frozenset({(1, 2)})


def S(c, i, om):
    return indecomposable(c, tuple(int(j == i) for j in c.vertices), om)


def test_simple_and_a2_indecomposables():
    M = indecomposable(A2, (1, 0), O12)
    assert M.dims == (1, 0) and M.maps[(1, 2)].nrows() == 0
    N = indecomposable(A2, (1, 1), O12)
    assert N.dims == (1, 1) and N.maps[(1, 2)].rank() == 1


def test_a3_longest_root():
    M = indecomposable(A3, (1, 1, 1))
    assert M.dims == (1, 1, 1)
    assert all(m.rank() == 1 for m in M.maps.values())


def test_realize():
    M = realize(A2, [(1, 0), (0, 1)], O12)
    assert M.maps[(1, 2)].rank() == 0
    M = realize(A2, [(1, 1), (0, 1)], O12)
    assert M.dims == (1, 2) and M.maps[(1, 2)].rank() == 1


def test_hom_ext_examples():
    S1, S2 = S(A2, 1, O12), S(A2, 2, O12)
    assert hom_dim(S1, S1) == 1
    assert ext1_dim(S1, S2) == 1 and ext1_dim(S2, S1) == 0
    assert ext1_cocycle(S1, S2) == 1 and ext1_cocycle(S2, S1) == 0


@pytest.mark.parametrize("c,n", [(A2, 3), (A3, 6), (D4, 12)])
def test_gabriel_and_euler(c, n):
    ind = indecomposables(c)
    assert len(ind) == n
    om = next(iter(ind.values())).orientation
    for X, Y in itertools.product(ind.values(), repeat=2):
        e = ext1_dim(X, Y)
        assert hom_dim(X, Y) - e == euler_form(c, X.dims, Y.dims, om)
        if c.rank <= 3:
            assert ext1_cocycle(X, Y) == e
    for X in ind.values():
        assert hom_dim(X, X) == 1 and ext1_dim(X, X) == 0


def test_epsilon_examples():
    assert epsilon(A2, [(0, 1)], 2, O12) == 1
    assert epsilon(A2, [(1, 1)], 2, O12) == 0
    assert epsilon(A2, [(1, 0)], 2, O12) == 0
    with pytest.raises(NotSink):
        epsilon(A2, [(1, 0)], 1, O12)
    assert epsilon_star(A2, [(1, 0), (1, 1)], 1, O12) == 1
    with pytest.raises(NotSource):
        epsilon_star(A2, [(1, 0)], 2, O12)


@pytest.mark.parametrize("c", [A3, D4])
def test_epsilon_counts_simple_summands(c):
    for beta in weights_up_to(c, 4):
        for b in kostant_partitions(c, beta):
            for i in c.vertices:
                epsilon_star(c, b, i)  # asserts the multiplicity reading internally


def test_saito_orbit_examples():
    assert saito_orbit(A2, [(0, 1)], 1) == ((1, 1),)
    assert saito_orbit(A2, [(1, 0)], 1) is None
    assert saito_orbit(A2, [], 1) == ()


def test_saito_orbit_bijection_a3():
    for beta in weights_up_to(A3, 4):
        for i in A3.vertices:
            images = set()
            for b in kostant_partitions(A3, beta):
                r = saito_orbit(A3, b, i)
                if r is None:
                    continue
                images.add(r)
                # the image has no alpha_i summand
                assert tuple(int(j == i) for j in A3.vertices) not in r
            assert len(images) == sum(saito_orbit(A3, b, i) is not None for b in kostant_partitions(A3, beta))


def test_degeneration_examples():
    assert degeneration_leq(A2, [(1, 1)], [(1, 1)], O12)
    assert degeneration_leq(A2, [(1, 0), (0, 1)], [(1, 1)], O12)
    assert not degeneration_leq(A2, [(1, 1)], [(1, 0), (0, 1)], O12)
    with pytest.raises(WeightMismatch):
        degeneration_leq(A2, [(1, 1)], [(1, 0)], O12)


def test_star_examples():
    r = star_report(A2, [(1, 0)], [(0, 1)], O12)
    assert not r.star1 and r.ext1 == 1
    assert star_report(A2, [(0, 1)], [(1, 0)], O12).star1
    assert star_report(A2, [(1, 1)], [], O12).holds
