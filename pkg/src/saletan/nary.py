"""Contractions of n-ary products and n-ary coproducts.

N^k_n is the part of (lam I + N)^(x)n of degree k in N: the sum over all
ways of putting N into k of the n tensor slots and the identity elsewhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import linalg
from .algebra import COPRODUCT, PRODUCT, StructureTensor
from .engine import Classification, ContractionReport, classify_torsion
from .errors import ArityMismatch, DimensionMismatch
from .riesz import riesz_decompose


@dataclass(frozen=True, eq=False)
class NknTensor:
    n: int
    k: int
    n_map: np.ndarray

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")

    def slot_sets(self):
        return itertools.combinations(range(self.n), self.k)

    def matrix(self) -> np.ndarray:
        """Exact (m^n x m^n) matrix on the n-fold tensor power."""
        m = self.n_map.shape[0]
        eye = linalg.identity(m)
        total = linalg.zeros(m**self.n, m**self.n)
        for slots in self.slot_sets():
            factors = [self.n_map if s in slots else eye for s in range(self.n)]
            total = total + reduce(np.kron, factors)
        return total

    def after(self, t: StructureTensor) -> StructureTensor:
        """N^k_n o t, acting on the output slots of a coproduct."""
        return self._sum(t, on_inputs=False)

    def before(self, t: StructureTensor) -> StructureTensor:
        """t o N^k_n, acting on the input slots of a product."""
        return self._sum(t, on_inputs=True)

    def _sum(self, t: StructureTensor, on_inputs: bool) -> StructureTensor:
        total = StructureTensor.zero(t.dim, t.arity, t.kind)
        for slots in self.slot_sets():
            term = t
            for s in slots:
                term = term.compose_input(self.n_map, s) if on_inputs else term.compose_output(self.n_map, s)
            total = total + term
        return total


def expansion_holds(n_map: np.ndarray, n: int, lam) -> bool:
    """sum_k lam^(n-k) N^k_n == (lam I + N)^(x)n at one exact lam."""
    lam = linalg.to_rational(lam)
    m = n_map.shape[0]
    u = n_map + linalg.identity(m) * lam
    lhs = reduce(lambda acc, k: acc + NknTensor(n, k, n_map).matrix() * lam ** (n - k), range(n + 1),
                 linalg.zeros(m**n, m**n))
    rhs = reduce(np.kron, [u] * n)
    return bool(np.array_equal(lhs, rhs))


def _check(mu: StructureTensor, n_map: np.ndarray):
    if n_map.shape != (mu.dim, mu.dim):
        raise DimensionMismatch(f"tensor map of shape {n_map.shape} for dim {mu.dim}")


def nary_delta(mu: StructureTensor, n_map) -> StructureTensor:
    """Alternating sum  sum_j (-1)^j N^j o mu o N^(n-1-j)_n  (dually for coproducts)."""
    n_map = linalg.exact(n_map)
    _check(mu, n_map)
    n = mu.arity
    total = StructureTensor.zero(mu.dim, n, mu.kind)
    for j in range(n):
        outer = linalg.matrix_power(n_map, j)
        inner = NknTensor(n, n - 1 - j, n_map)
        if mu.kind == PRODUCT:
            term = inner.before(mu).compose_output(outer)
        else:
            term = inner.after(mu.compose_input(outer))
        total = total + (term if j % 2 == 0 else -term)
    return total


def nary_torsion(mu: StructureTensor, n_map) -> StructureTensor:
    """mu o N^(x)n - N o delta (products) or N^(x)n o Delta - delta o N (coproducts)."""
    n_map = linalg.exact(n_map)
    delta = nary_delta(mu, n_map)
    if mu.kind == PRODUCT:
        return mu.compose_all_inputs(n_map) - delta.compose_output(n_map)
    return mu.compose_all_outputs(n_map) - delta.compose_input(n_map)


def nary_contract(mu: StructureTensor, n_map) -> ContractionReport:
    if mu.kind != PRODUCT:
        raise ArityMismatch("nary_contract takes products; use coproduct_contract for coproducts")
    n_map = linalg.exact(n_map)
    return classify_torsion(nary_delta(mu, n_map), nary_torsion(mu, n_map), n_map)


def coproduct_contract(delta_map: StructureTensor, n_map) -> ContractionReport:
    """Contract a coproduct: exists iff its torsion vanishes on E2.

    The correction term is T o N^-1 on E1 and zero on E2.
    """
    if delta_map.kind != COPRODUCT:
        raise ArityMismatch("coproduct_contract takes coproducts")
    n_map = linalg.exact(n_map)
    _check(delta_map, n_map)
    rz = riesz_decompose(n_map)
    delta = nary_delta(delta_map, n_map)
    torsion = nary_torsion(delta_map, n_map)
    if torsion.is_zero():
        zero = StructureTensor.zero(delta_map.dim, delta_map.arity, COPRODUCT)
        return ContractionReport(delta, torsion, Classification.NIJENHUIS, zero, delta, None, n_map, rz)
    for idx, v in enumerate(rz.e2.basis):
        if not linalg.is_zero(torsion.evaluate(v)):
            return ContractionReport(delta, torsion, Classification.NOT_CONTRACTIBLE, None, None, (idx,), n_map, rz)
    tau = torsion.compose_input(rz.n_inv_on_e1)
    return ContractionReport(delta, torsion, Classification.SALETAN, tau, delta + tau, None, n_map, rz)
