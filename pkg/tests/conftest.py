"""Shared fixtures: the standing suite of small algebras and modules."""

from __future__ import annotations

import numpy as np
import pytest

from supervariety.algebra import BasisElement, LieSuperAlgebra, make_gl
from supervariety.modules import SuperModule, natural_module, trivial_module


def abelian_odd(n: int, p: int = 3) -> LieSuperAlgebra:
    """Purely odd abelian algebra of dimension n."""
    return LieSuperAlgebra(p, [BasisElement(f"y{u}", 1) for u in range(n)], {})


def clifford_pair(p: int = 3) -> LieSuperAlgebra:
    """One odd generator squaring onto a central even generator."""
    return LieSuperAlgebra(
        p,
        [BasisElement("z", 0), BasisElement("y", 1)],
        {(1, 1): {0: 1}},
    )


def odd_trivial_module(g: LieSuperAlgebra) -> SuperModule:
    """The parity-shifted trivial module, dims (0|1)."""
    return SuperModule(g, 0, 1, [np.zeros((1, 1), dtype=np.int64) for _ in range(g.dim)])


def inverse_matrix_mod(mat: np.ndarray, p: int) -> np.ndarray:
    from supervariety.linalg import rref

    n = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = rref(aug, p)
    assert pivots == list(range(n)), "matrix not invertible"
    return red[:, n:] % p


def random_small_module(g: LieSuperAlgebra, rng, pool=None, max_dim: int = 4) -> SuperModule:
    """A random 2..max_dim dimensional module: a direct sum of small
    indecomposables in a random even basis."""
    from supervariety.linalg import rref
    from supervariety.modules import dual, natural_module, trivial_module

    p = g.p
    if pool is None:
        nat = natural_module(g)
        pool = [nat, trivial_module(g), dual(nat), odd_trivial_module(g)]
    parts = [rng.choice(pool)]
    while sum(m.dim for m in parts) < rng.randint(2, max_dim):
        parts.append(rng.choice(pool))
    d0 = sum(m.dim_even for m in parts)
    d1 = sum(m.dim_odd for m in parts)
    dim = d0 + d1
    offsets_even = np.cumsum([0] + [m.dim_even for m in parts])
    offsets_odd = np.cumsum([0] + [m.dim_odd for m in parts])
    index_maps = []
    for t, m in enumerate(parts):
        rows = list(range(offsets_even[t], offsets_even[t] + m.dim_even))
        rows += [d0 + j for j in range(offsets_odd[t], offsets_odd[t] + m.dim_odd)]
        index_maps.append(rows)
    actions = []
    for k in range(g.dim):
        mat = np.zeros((dim, dim), dtype=np.int64)
        for t, m in enumerate(parts):
            rows = index_maps[t]
            for a in range(m.dim):
                for b in range(m.dim):
                    mat[rows[a], rows[b]] = m.actions[k][a, b]
        actions.append(mat)
    while True:
        blk0 = np.array([rng.randrange(p) for _ in range(d0 * d0)], dtype=np.int64).reshape(d0, d0)
        blk1 = np.array([rng.randrange(p) for _ in range(d1 * d1)], dtype=np.int64).reshape(d1, d1)
        ok0 = d0 == 0 or len(rref(blk0, p)[1]) == d0
        ok1 = d1 == 0 or len(rref(blk1, p)[1]) == d1
        if ok0 and ok1:
            break
    change = np.zeros((dim, dim), dtype=np.int64)
    change[:d0, :d0] = blk0
    change[d0:, d0:] = blk1
    inv = inverse_matrix_mod(change, p)
    return SuperModule(g, d0, d1, [(change @ a @ inv) % p for a in actions])


@pytest.fixture(scope="session")
def gl11():
    return make_gl(1, 1, 3)


@pytest.fixture(scope="session")
def gl22():
    return make_gl(2, 2, 3)


@pytest.fixture(scope="session")
def nat11(gl11):
    return natural_module(gl11)


@pytest.fixture(scope="session")
def nat22(gl22):
    return natural_module(gl22)


@pytest.fixture(scope="session")
def k11(gl11):
    return trivial_module(gl11)


@pytest.fixture(scope="session")
def abelian02():
    return abelian_odd(2)


@pytest.fixture(scope="session")
def clifford():
    return clifford_pair()
