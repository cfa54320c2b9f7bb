"""Operator calculus on binary products and the hierarchy of contractions.

Three commuting operators act on products through a fixed map N:

    A_N mu = N o mu,   B_N mu = mu(N ., .),   C_N mu = mu(., N .)

In this language the derived product is B + C - A and the torsion is
(A - B)(A - C), which is what the identity checks below compare against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import StructureTensor
from .engine import (
    Classification,
    classify_and_contract,
    derived_product,
    is_homomorphism,
    nijenhuis_torsion,
    strong_saletan,
)
from .errors import StrongSaletanFails
from .linalg import Subspace


@dataclass(frozen=True, eq=False)
class ProductOperator:
    kind: str  # "A", "B" or "C"
    n_map: np.ndarray
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("A", "B", "C"):
            raise ValueError(f"operator kind must be A, B or C, not {self.kind!r}")
        if self.power < 0:
            raise ValueError("negative operator power")

    def __call__(self, mu: StructureTensor) -> StructureTensor:
        return apply_operator(self, mu)


def apply_operator(op: ProductOperator, mu: StructureTensor) -> StructureTensor:
    m = linalg.matrix_power(linalg.exact(op.n_map), op.power)
    if op.kind == "A":
        return mu.compose_output(m)
    if op.kind == "B":
        return mu.compose_input(m, 0)
    return mu.compose_input(m, 1)


def operators(n: np.ndarray, power: int = 1) -> tuple[ProductOperator, ProductOperator, ProductOperator]:
    return ProductOperator("A", n, power), ProductOperator("B", n, power), ProductOperator("C", n, power)


def contraction(mu: StructureTensor, n: np.ndarray) -> StructureTensor:
    """D_N mu, raising StrongSaletanFails when it does not exist."""
    report = classify_and_contract(mu, n)
    if not report.contractible:
        raise StrongSaletanFails(f"no contraction: torsion leaves N(E1) at {report.witness}")
    return report.contracted


@dataclass
class CheckReport:
    """Named pass/fail results; ``failures`` lists what did not hold."""

    results: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool):
        self.results[name] = bool(ok)

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]

    @property
    def ok(self) -> bool:
        return not self.failures


def operator_identities_check(mu: StructureTensor, n: np.ndarray) -> CheckReport:
    n = linalg.exact(n)
    a, b, c = operators(n)
    report = CheckReport()
    report.record("delta = B + C - A", b(mu) + c(mu) - a(mu) == derived_product(mu, n))
    torsion = nijenhuis_torsion(mu, n)
    report.record("T = (A - B)(A - C)", a(a(mu) - c(mu)) - b(a(mu) - c(mu)) == torsion)
    report.record("T = BC - A delta", b(c(mu)) - a(derived_product(mu, n)) == torsion)
    contracted = classify_and_contract(mu, n)
    if contracted.contractible:
        report.record("A D = B C", a(contracted.contracted) == b(c(mu)))
    return report


def hierarchy(mu: StructureTensor, n: np.ndarray, kmax: int | None = None) -> list[StructureTensor]:
    """[mu, D_N mu, D_{N^2} mu, ..., D_{N^kmax} mu], each from N^k directly.

    In finite dimension every Saletan tensor is strong Saletan, so a failure
    at some k > 1 after success at k = 1 is reported as StrongSaletanFails.
    """
    n = linalg.exact(n)
    kmax = mu.dim if kmax is None else kmax
    out = [mu]
    for k in range(1, kmax + 1):
        report = classify_and_contract(mu, linalg.matrix_power(n, k))
        if not report.contractible:
            raise StrongSaletanFails(f"N^{k} is not a Saletan tensor (witness {report.witness})", k=k)
        out.append(report.contracted)
    return out


def delta_power_matches(mu: StructureTensor, n: np.ndarray, k: int) -> bool:
    """delta_{N^k} mu == (delta_N)^k mu."""
    n = linalg.exact(n)
    iterated = mu
    for _ in range(k):
        iterated = derived_product(iterated, n)
    return derived_product(mu, linalg.matrix_power(n, k)) == iterated


def hierarchy_laws_check(mu: StructureTensor, n: np.ndarray, imax: int = 3, kmax: int = 3) -> CheckReport:
    """Composition law, the torsion/hierarchy relation and the power homomorphisms."""
    n = linalg.exact(n)
    levels = hierarchy(mu, n, imax + kmax)
    report = CheckReport()
    for i, k in itertools.product(range(1, imax + 1), range(1, kmax + 1)):
        n_i = linalg.matrix_power(n, i)
        n_k = linalg.matrix_power(n, k)
        d_k, d_ik = levels[k], levels[i + k]
        report.record(f"D_N^{i} D_N^{k} = D_N^{i + k}", contraction(d_k, n_i) == d_ik)
        lhs = nijenhuis_torsion(d_k, n_i)
        rhs = (d_ik - derived_product(d_k, n_i)).compose_output(n_i)
        report.record(f"T_N^{i} D_N^{k} = A^{i}(D_N^{i + k} - delta_N^{i} D_N^{k})", lhs == rhs)
        report.record(f"N^{k}: D_N^{i + k} -> D_N^{i} homomorphism", is_homomorphism(n_k, d_ik, levels[i]))
    return report


def subideal_check(mu: StructureTensor, n: np.ndarray, kmax: int = 3, imax: int = 3) -> CheckReport:
    """Images of N^k are subalgebras and kernels of N^k ideals of the hierarchy."""
    n = linalg.exact(n)
    top = max(kmax, imax)
    levels = hierarchy(mu, n, top)
    report = CheckReport()
    for k in range(0, kmax + 1):
        n_k = linalg.matrix_power(n, k)
        image = linalg.image_basis(n_k)
        kernel = linalg.kernel_basis(n_k)
        for i in range(0, imax + 1):
            report.record(f"im N^{k} subalgebra of D_N^{i}", _closed(levels[i], image, image, image))
            if i > k:
                whole = Subspace.whole(mu.dim)
                report.record(f"ker N^{k} ideal of D_N^{i}", _closed(levels[i], kernel, whole, kernel))
    return report


def _closed(mu: StructureTensor, left: Subspace, right: Subspace, target: Subspace) -> bool:
    """mu(left, right) and mu(right, left) both land in target."""
    for x, y in itertools.product(left.basis, right.basis):
        if not linalg.member(target, mu.evaluate(x, y)) or not linalg.member(target, mu.evaluate(y, x)):
            return False
    return True


def saletan_implies_strong(mu: StructureTensor, n: np.ndarray, kmax: int | None = None) -> bool:
    """Saletan N implies every power N^k (k <= kmax) is Saletan."""
    n = linalg.exact(n)
    if not classify_and_contract(mu, n).contractible:
        return True
    return all(c is not Classification.NOT_CONTRACTIBLE for c in strong_saletan(mu, n, kmax))
