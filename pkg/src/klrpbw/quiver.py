"""Representations of Dynkin quivers over Q.

An orientation is a frozenset of arrows ``(tail, head)``.  A representation
stores one integer matrix per arrow, of shape ``dim V_head x dim V_tail``.
Orbit labels are Kostant partitions: sorted tuples of positive roots.

Indecomposables are produced by BGP reflection functors from simples along a
reduced word adapted to the orientation (Gabriel).  Homs are computed as the
kernel of the intertwiner map

    delta(f)_h = N_h f_tail - f_head M_h

and all ranks come from FLINT's exact integer matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from flint import fmpz_mat

from .roots import (
    CartanData,
    Orientation,
    gamma_sequence,
    is_reduced,
    kostant_partitions,
    positive_roots,
    reference_orientation,
    reflect,
    simple_root,
    sinks,
    sources,
)

__all__ = [
    "OrientationMismatch",
    "NotSink",
    "NotSource",
    "WeightMismatch",
    "QuiverRep",
    "StarReport",
    "orientation_with_source",
    "orientation_with_sink",
    "datum_label",
    "adapted_word",
    "indecomposable",
    "indecomposables",
    "realize",
    "direct_sum",
    "hom_basis",
    "hom_dim",
    "ext1_dim",
    "ext1_cocycle",
    "euler_form",
    "epsilon",
    "epsilon_star",
    "saito_orbit",
    "degeneration_leq",
    "is_quotient",
    "is_submodule",
    "star_condition",
    "star_report",
    "label_of",
]


class OrientationMismatch(ValueError):
    pass


class NotSink(ValueError):
    pass


class NotSource(ValueError):
    pass


class WeightMismatch(ValueError):
    pass


Label = tuple  # sorted tuple of roots


@dataclass(frozen=True, eq=False)
class QuiverRep:
    dims: tuple[int, ...]
    maps: dict  # arrow -> fmpz_mat
    orientation: Orientation

    def __post_init__(self):
        for (a, b), m in self.maps.items():
            if (m.nrows(), m.ncols()) != (self.dims[b - 1], self.dims[a - 1]):
                raise ValueError(f"arrow {a}->{b}: matrix shape does not match dims {self.dims}")
        if set(self.maps) != set(self.orientation):
            raise ValueError("maps must be given for exactly the arrows of the orientation")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def map(self, h: tuple[int, int]) -> fmpz_mat:
        return self.maps[h]

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}: rank {m.rank()}" for (a, b), m in sorted(self.maps.items()))
        return f"QuiverRep(dims={self.dims}, {body})"


def _zero(r: int, c: int) -> fmpz_mat:
    return fmpz_mat(r, c)


def _block(rows: list[list[fmpz_mat]], heights: list[int], widths: list[int]) -> fmpz_mat:
    out = fmpz_mat(sum(heights), sum(widths))
    r0 = 0
    for i, h in enumerate(heights):
        c0 = 0
        for j, w in enumerate(widths):
            blk = rows[i][j]
            for a in range(h):
                for b in range(w):
                    v = blk[a, b]
                    if v:
                        out[r0 + a, c0 + b] = v
            c0 += w
        r0 += h
    return out


def _simple(c: CartanData, i: int, omega: Orientation) -> QuiverRep:
    dims = simple_root(c, i)
    return QuiverRep(dims, {h: _zero(dims[h[1] - 1], dims[h[0] - 1]) for h in omega}, omega)


def _reflect_minus(c: CartanData, M: QuiverRep, i: int) -> QuiverRep:
    """BGP functor at a source ``i``: replace ``V_i`` by the cokernel of ``V_i -> (+)_j V_j``."""
    omega = M.orientation
    if i not in sources(c, omega):
        raise NotSource(f"{i} is not a source of {sorted(omega)}")
    out_arrows = sorted(h for h in omega if h[0] == i)
    heights = [M.dims[h[1] - 1] for h in out_arrows]
    di = M.dims[i - 1]
    D = sum(heights)
    A = _block([[M.maps[h]] for h in out_arrows], heights, [di]) if out_arrows else _zero(0, di)
    # rows of C span the left kernel of A, so C: (+)_j V_j -> coker A
    if D == 0:
        C = _zero(0, 0)
    elif di == 0:
        C = _identity(D)
    else:
        X, k = A.transpose().nullspace()
        C = fmpz_mat(k, D)
        for r in range(k):
            for s in range(D):
                C[r, s] = X[s, r]
    new_omega = reflect(c, omega, i)
    dims = list(M.dims)
    dims[i - 1] = C.nrows()
    maps = {h: M.maps[h] for h in omega if i not in h}
    off = 0
    for h, ht in zip(out_arrows, heights):
        blk = fmpz_mat(C.nrows(), ht)
        for r in range(C.nrows()):
            for s in range(ht):
                blk[r, s] = C[r, off + s]
        maps[(h[1], i)] = blk
        off += ht
    return QuiverRep(tuple(dims), maps, new_omega)


def _identity(n: int) -> fmpz_mat:
    m = fmpz_mat(n, n)
    for k in range(n):
        m[k, k] = 1
    return m


def orientation_with_sink(c: CartanData, i: int, omega: Orientation | None = None) -> Orientation:
    """``omega`` (default: reference) with every edge at ``i`` pointing into ``i``."""
    omega = reference_orientation(c) if omega is None else omega
    return frozenset((h[1], i) if h[0] == i else h for h in omega)


def orientation_with_source(c: CartanData, i: int, omega: Orientation | None = None) -> Orientation:
    """``omega`` (default: reference) with every edge at ``i`` pointing away from ``i``."""
    omega = reference_orientation(c) if omega is None else omega
    return frozenset((i, h[0]) if h[1] == i else h for h in omega)


@lru_cache(maxsize=None)
def adapted_word(c: CartanData, omega: Orientation, first: int | None = None) -> tuple[int, ...]:
    """A reduced word for ``w0`` adapted to ``omega`` (depth-first over sinks).

    With ``first`` given, the word starts with that letter, which must be a sink.
    """
    N = len(positive_roots(c))
    if first is not None and first not in sinks(c, omega):
        raise NotSink(f"{first} is not a sink of {sorted(omega)}")

    def dfs(word: list[int], om: Orientation):
        if len(word) == N:
            return tuple(word)
        for i in sorted(sinks(c, om)):
            if not word and first is not None and i != first:
                continue
            word.append(i)
            if is_reduced(c, word):
                found = dfs(word, reflect(c, om, i))
                if found:
                    return found
            word.pop()
        return None

    found = dfs([], omega)
    if found is None:  # pragma: no cover - adapted words always exist
        raise RuntimeError(f"no adapted word for {sorted(omega)}")
    return found


@lru_cache(maxsize=None)
def _indecomposables(c: CartanData, omega: Orientation) -> dict:
    word = adapted_word(c, omega)
    gammas = gamma_sequence(c, word)
    orients = [omega]
    for i in word[:-1]:
        orients.append(reflect(c, orients[-1], i))
    out = {}
    for k, g in enumerate(gammas):
        M = _simple(c, word[k], orients[k])
        for j in range(k - 1, -1, -1):
            M = _reflect_minus(c, M, word[j])
        assert M.dims == g and M.orientation == omega
        assert hom_dim(M, M) == 1, f"representation of dimension {g} is not a brick"
        out[g] = M
    return out


def indecomposable(c: CartanData, alpha: Sequence[int], omega: Orientation | None = None) -> QuiverRep:
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    table = _indecomposables(c, omega)
    alpha = tuple(alpha)
    if alpha not in table:
        raise ValueError(f"{alpha} is not a positive root of {c.name}")
    return table[alpha]


def indecomposables(c: CartanData, omega: Orientation | None = None) -> dict:
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    return dict(_indecomposables(c, omega))


def direct_sum(c: CartanData, reps: Iterable[QuiverRep], omega: Orientation) -> QuiverRep:
    reps = list(reps)
    n = c.rank
    dims = tuple(sum(M.dims[v] for M in reps) for v in range(n))
    maps = {}
    for h in omega:
        if any(M.orientation != omega for M in reps):
            raise OrientationMismatch("summands over different orientations")
        hs = [M.dims[h[1] - 1] for M in reps]
        ws = [M.dims[h[0] - 1] for M in reps]
        grid = [[reps[a].maps[h] if a == b else _zero(hs[a], ws[b]) for b in range(len(reps))] for a in range(len(reps))]
        maps[h] = _block(grid, hs, ws) if reps else _zero(0, 0)
    return QuiverRep(dims, maps, omega)


def label_of(b) -> Label:
    return tuple(sorted(tuple(a) for a in b))


def datum_label(c: CartanData, word: Sequence[int], exponents: Sequence[int]) -> Label:
    """The Kostant partition ``{c_k * gamma_k}`` attached to a Lusztig datum."""
    out = []
    for g, ck in zip(gamma_sequence(c, tuple(word)), exponents):
        out.extend([g] * ck)
    return label_of(out)


def realize(c: CartanData, b: Iterable[Sequence[int]], omega: Orientation | None = None) -> QuiverRep:
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    return direct_sum(c, [indecomposable(c, a, omega) for a in label_of(b)], omega)


# -- Hom and Ext ------------------------------------------------------------

def _delta(M: QuiverRep, N: QuiverRep) -> tuple[fmpz_mat, list[tuple[int, int, int]]]:
    """Matrix of the intertwiner map together with the variable layout."""
    if M.orientation != N.orientation:
        raise OrientationMismatch("representations over different orientations")
    n = len(M.dims)
    layout = []  # (vertex, offset, size) of the blocks f_v (N_v x M_v, row-major)
    off = 0
    for v in range(n):
        layout.append((v, off, N.dims[v] * M.dims[v]))
        off += N.dims[v] * M.dims[v]
    nvars = off
    arrows = sorted(M.orientation)
    neq = sum(N.dims[b - 1] * M.dims[a - 1] for a, b in arrows)
    D = fmpz_mat(neq, nvars)
    row = 0
    for a, b in arrows:
        Mh, Nh = M.maps[(a, b)], N.maps[(a, b)]
        ma, mb, na, nb = M.dims[a - 1], M.dims[b - 1], N.dims[a - 1], N.dims[b - 1]
        fa_off, fb_off = layout[a - 1][1], layout[b - 1][1]
        # entry (r, s) of N_h f_a - f_b M_h, r < nb, s < ma
        for r in range(nb):
            for s in range(ma):
                for k in range(na):
                    v = Nh[r, k]
                    if v:
                        D[row, fa_off + k * ma + s] += v
                for k in range(mb):
                    v = Mh[k, s]
                    if v:
                        D[row, fb_off + r * mb + k] -= v
                row += 1
    return D, layout


def hom_basis(M: QuiverRep, N: QuiverRep) -> list[list[fmpz_mat]]:
    """A basis of ``Hom(M, N)``; each element is the list of vertex maps."""
    D, layout = _delta(M, N)
    nvars = D.ncols()
    if nvars == 0:
        return []
    if D.nrows() == 0:
        X, k = _identity(nvars), nvars
    else:
        X, k = D.nullspace()
    out = []
    for col in range(k):
        f = []
        for v, off, size in layout:
            m = fmpz_mat(N.dims[v], M.dims[v])
            for r in range(N.dims[v]):
                for s in range(M.dims[v]):
                    m[r, s] = X[off + r * M.dims[v] + s, col]
            f.append(m)
        out.append(f)
    return out


def hom_dim(M: QuiverRep, N: QuiverRep) -> int:
    D, _ = _delta(M, N)
    if D.nrows() == 0:
        return D.ncols()
    return D.ncols() - D.rank()


def euler_form(c: CartanData, a: Sequence[int], b: Sequence[int], omega: Orientation) -> int:
    return sum(x * y for x, y in zip(a, b)) - sum(a[h[0] - 1] * b[h[1] - 1] for h in omega)


def ext1_dim(M: QuiverRep, N: QuiverRep) -> int:
    if M.orientation != N.orientation:
        raise OrientationMismatch("representations over different orientations")
    chi = sum(x * y for x, y in zip(M.dims, N.dims)) - sum(M.dims[a - 1] * N.dims[b - 1] for a, b in M.orientation)
    out = hom_dim(M, N) - chi
    assert out >= 0
    return out


def ext1_cocycle(M: QuiverRep, N: QuiverRep) -> int:
    """``Ext^1`` as the cokernel of the intertwiner map (independent of the Euler form)."""
    D, _ = _delta(M, N)
    if D.nrows() == 0 or D.ncols() == 0:
        return D.nrows()
    return D.nrows() - D.rank()


# -- crystal statistics -----------------------------------------------------

def _as_rep(c: CartanData, b, omega: Orientation) -> QuiverRep:
    return b if isinstance(b, QuiverRep) else realize(c, b, omega)


def _stack_rank(mats: list[fmpz_mat], horizontal: bool) -> int:
    mats = [m for m in mats if m.nrows() and m.ncols()]
    if not mats:
        return 0
    if horizontal:
        h = mats[0].nrows()
        return _block([mats], [h], [m.ncols() for m in mats]).rank()
    w = mats[0].ncols()
    return _block([[m] for m in mats], [m.nrows() for m in mats], [w]).rank()


def epsilon(c: CartanData, b, i: int, omega: Orientation | None = None) -> int:
    """``dim coker`` of the sum of the arrow maps into a sink ``i``."""
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    if i not in sinks(c, omega):
        raise NotSink(f"{i} is not a sink of {sorted(omega)}")
    M = _as_rep(c, b, omega)
    val = M.dims[i - 1] - _stack_rank([M.maps[h] for h in sorted(omega) if h[1] == i], horizontal=True)
    if not isinstance(b, QuiverRep):
        assert val == label_of(b).count(simple_root(c, i))
    return val


def epsilon_star(c: CartanData, b, i: int, omega: Orientation | None = None) -> int:
    """``dim ker`` of the sum of the arrow maps out of a source ``i``."""
    omega = orientation_with_source(c, i) if omega is None else frozenset(omega)
    if i not in sources(c, omega):
        raise NotSource(f"{i} is not a source of {sorted(omega)}")
    M = _as_rep(c, b, omega)
    val = M.dims[i - 1] - _stack_rank([M.maps[h] for h in sorted(omega) if h[0] == i], horizontal=False)
    if not isinstance(b, QuiverRep):
        assert val == label_of(b).count(simple_root(c, i))
    return val


def saito_orbit(c: CartanData, b, i: int, omega: Orientation | None = None) -> Label | None:
    """Reflect every summand by ``s_i``; ``None`` when ``eps*_i(b) > 0``."""
    omega = orientation_with_source(c, i, omega)
    if epsilon_star(c, b, i, omega):
        return None
    return label_of(c.reflect_weight(i, a) for a in label_of(b))


def degeneration_leq(c: CartanData, b, bp, omega: Orientation | None = None) -> bool:
    """``O_b`` lies in the closure of ``O_b'``, via Hom from every indecomposable."""
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    M, Mp = _as_rep(c, b, omega), _as_rep(c, bp, omega)
    if M.dims != Mp.dims:
        raise WeightMismatch(f"{M.dims} != {Mp.dims}")
    for X in _indecomposables(c, omega).values():
        if hom_dim(X, M) < hom_dim(X, Mp):
            return False
    return True


# -- the (*) condition --------------------------------------------------------

def _generic_rank(basis: list[list[fmpz_mat]], rng: random.Random, trials: int = 3) -> int:
    """Largest total rank of random integer combinations of ``basis``."""
    if not basis:
        return 0
    best = 0
    for _ in range(trials):
        coeffs = [rng.randint(-10**6, 10**6) for _ in basis]
        total = 0
        for v in range(len(basis[0])):
            m = basis[0][v] * 0
            for a, f in zip(coeffs, basis):
                m += a * f[v]
            total += m.rank() if m.nrows() and m.ncols() else 0
        best = max(best, total)
    return best


def is_quotient(M: QuiverRep, N: QuiverRep, rng: random.Random | None = None) -> bool:
    """Is ``N`` a quotient of ``M`` (some surjection ``M -> N``)?

    Surjective homs form a Zariski-open subset of ``Hom(M, N)``, so a random
    integer combination of a basis finds one whenever one exists (with
    overwhelming probability; a positive answer is always certain).
    """
    if any(n > m for n, m in zip(N.dims, M.dims)):
        return False
    rng = rng or random.Random(0)
    return _generic_rank(hom_basis(M, N), rng) == N.total_dim


def is_submodule(N: QuiverRep, M: QuiverRep, rng: random.Random | None = None) -> bool:
    """Is ``N`` isomorphic to a submodule of ``M`` (some injection ``N -> M``)?"""
    if any(n > m for n, m in zip(N.dims, M.dims)):
        return False
    rng = rng or random.Random(0)
    return _generic_rank(hom_basis(N, M), rng) == N.total_dim


@dataclass
class StarReport:
    star0: bool
    star1: bool
    quotients: list  # competing b1' that are quotients of M_b
    submodules: list  # competing b2' that are submodules of M_b
    ext1: int

    @property
    def holds(self) -> bool:
        return self.star0 and self.star1


def star_report(c: CartanData, b1, b2, omega: Orientation | None = None, seed: int = 0) -> StarReport:
    omega = reference_orientation(c) if omega is None else frozenset(omega)
    rng = random.Random(seed)
    b1, b2 = label_of(b1), label_of(b2)
    M1, M2 = realize(c, b1, omega), realize(c, b2, omega)
    Mb = realize(c, b1 + b2, omega)
    quots = [bp for bp in kostant_partitions(c, M1.dims) if label_of(bp) != b1 and is_quotient(Mb, realize(c, bp, omega), rng)]
    subs = [bp for bp in kostant_partitions(c, M2.dims) if label_of(bp) != b2 and is_submodule(realize(c, bp, omega), Mb, rng)]
    e = ext1_dim(M1, M2)
    return StarReport(not quots and not subs, e == 0, quots, subs, e)


def star_condition(c: CartanData, b1, b2, omega: Orientation | None = None, seed: int = 0) -> bool:
    return star_report(c, b1, b2, omega, seed).holds
