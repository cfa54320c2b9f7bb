"""Riesz (Fitting) splitting of a linear map into invertible and nilpotent parts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch
from .linalg import Subspace


@dataclass(frozen=True, eq=False)
class RieszDecomposition:
    n_map: np.ndarray
    e1: Subspace
    e2: Subspace
    q: int
    proj1: np.ndarray
    proj2: np.ndarray
    n_inv_on_e1: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_map.shape[0]

    def part1(self, v) -> np.ndarray:
        return self.proj1 @ np.asarray(v, dtype=object)

    def part2(self, v) -> np.ndarray:
        return self.proj2 @ np.asarray(v, dtype=object)


def _square(n: np.ndarray) -> int:
    if n.ndim != 2 or n.shape[0] != n.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {n.shape}")
    return n.shape[0]


def riesz_decompose(n: np.ndarray) -> RieszDecomposition:
    """E1 = image(N^m), E2 = ker(N^m) with projections and N^-1 on E1.

    ``q`` is the nilpotency order of N on E2 (0 when E2 is trivial).
    """
    m = _square(n)
    stable = linalg.matrix_power(n, m)
    e1 = linalg.image_basis(stable)
    e2 = linalg.kernel_basis(stable)

    q = 0
    power = linalg.identity(m)
    while e2.dim and not linalg.is_zero(power @ e2.matrix):
        power = power @ n
        q += 1

    basis = np.concatenate([e1.matrix, e2.matrix], axis=1)
    to_coords = linalg.inverse(basis) if m else basis
    select1 = linalg.zeros(m, m)
    for i in range(e1.dim):
        select1[i, i] = 1
    proj1 = basis @ select1 @ to_coords
    proj2 = linalg.identity(m) - proj1

    # N restricted to E1 in E1 coordinates: N B1 = B1 R.
    if e1.dim:
        image_cols = n @ e1.matrix
        restricted = np.stack([linalg.coordinates(e1, image_cols[:, j]) for j in range(e1.dim)], axis=1)
        block = linalg.zeros(m, m)
        block[: e1.dim, : e1.dim] = linalg.inverse(restricted)
        n_inv = basis @ block @ to_coords
    else:
        n_inv = linalg.zeros(m, m)

    return RieszDecomposition(n, e1, e2, q, proj1, proj2, n_inv)


def u_lambda(n: np.ndarray, lam) -> np.ndarray:
    """The deformation lam I + N."""
    m = _square(n)
    return n + linalg.identity(m) * linalg.to_rational(lam)


def projection(e1: Subspace, e2: Subspace) -> np.ndarray:
    """Projection onto ``e1`` along ``e2`` (caller guarantees complementarity)."""
    m = e1.ambient_dim
    basis = np.concatenate([e1.matrix, e2.matrix], axis=1)
    select = linalg.zeros(m, m)
    for i in range(e1.dim):
        select[i, i] = 1
    return basis @ select @ linalg.inverse(basis)
