"""Exact contraction of binary products along U(lam) = lam I + N.

The contracted product exists iff the torsion of N takes values in N(E1);
it then equals the derived product plus the unique E1-valued preimage of
the torsion under N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import ASSOCIATIVE, PRODUCT, StructureTensor, check_axioms, satisfies
from .errors import (
    ArityMismatch,
    ConditionFails,
    Degenerate,
    DimensionMismatch,
    NotAssociative,
    NotComplementary,
    NotInvolutive,
)
from .linalg import Subspace
from .riesz import RieszDecomposition, projection, riesz_decompose


class Classification(str, Enum):
    NIJENHUIS = "Nijenhuis"
    SALETAN = "Saletan"
    NOT_CONTRACTIBLE = "NotContractible"


@dataclass(frozen=True, eq=False)
class ContractionReport:
    delta: StructureTensor
    torsion: StructureTensor
    classification: Classification
    tau: StructureTensor | None
    contracted: StructureTensor | None
    witness: tuple[int, ...] | None
    n_map: np.ndarray
    riesz: RieszDecomposition
    # set by family_contract: which product/map pair the family was reduced to
    reduction: str | None = None
    base_product: StructureTensor | None = None

    @property
    def contractible(self) -> bool:
        return self.classification is not Classification.NOT_CONTRACTIBLE

    @property
    def is_saletan(self) -> bool:
        """Saletan in the inclusive sense: every Nijenhuis tensor is Saletan."""
        return self.contractible


def _require_binary(mu: StructureTensor, n: np.ndarray):
    if mu.kind != PRODUCT or mu.arity != 2:
        raise ArityMismatch("expected a binary product")
    if n.shape != (mu.dim, mu.dim):
        raise DimensionMismatch(f"tensor map of shape {n.shape} for a {mu.dim}-dim algebra")


def derived_product(mu: StructureTensor, n: np.ndarray) -> StructureTensor:
    """mu(NX, Y) + mu(X, NY) - N mu(X, Y)."""
    _require_binary(mu, n)
    return mu.compose_input(n, 0) + mu.compose_input(n, 1) - mu.compose_output(n)


def nijenhuis_torsion(mu: StructureTensor, n: np.ndarray) -> StructureTensor:
    """mu(NX, NY) - N(mu(NX, Y) + mu(X, NY)) + N^2 mu(X, Y)."""
    _require_binary(mu, n)
    both = mu.compose_input(n, 0).compose_input(n, 1)
    mixed = (mu.compose_input(n, 0) + mu.compose_input(n, 1)).compose_output(n)
    return both - mixed + mu.compose_output(n @ n)


def _tau_from_torsion(torsion: StructureTensor, n: np.ndarray, rz: RieszDecomposition):
    """Solve N tau = T on every basis tuple; returns (tau, witness)."""
    target = linalg.image_basis(n @ rz.e1.matrix) if rz.e1.dim else Subspace(rz.dim, ())
    tau = linalg.zeros(*torsion.constants.shape)
    for idx in np.ndindex(torsion.constants.shape[:-1]):
        value = torsion.constants[idx]
        if linalg.is_zero(value):
            continue
        if not linalg.member(target, value):
            return None, tuple(int(i) for i in idx)
        tau[idx] = linalg.solve_in_subspace(n, value, rz.e1)
    return StructureTensor(torsion.dim, torsion.arity, torsion.kind, tau), None


def classify_torsion(delta, torsion, n, rz=None) -> ContractionReport:
    """Shared classification step for binary and n-ary products."""
    rz = rz if rz is not None else riesz_decompose(n)
    if torsion.is_zero():
        zero = StructureTensor.zero(torsion.dim, torsion.arity, torsion.kind)
        return ContractionReport(delta, torsion, Classification.NIJENHUIS, zero, delta, None, n, rz)
    tau, witness = _tau_from_torsion(torsion, n, rz)
    if tau is None:
        return ContractionReport(delta, torsion, Classification.NOT_CONTRACTIBLE, None, None, witness, n, rz)
    return ContractionReport(delta, torsion, Classification.SALETAN, tau, delta + tau, None, n, rz)


def classify_and_contract(mu: StructureTensor, n: np.ndarray) -> ContractionReport:
    n = linalg.exact(n)
    return classify_torsion(derived_product(mu, n), nijenhuis_torsion(mu, n), n)


def classify(mu: StructureTensor, n: np.ndarray) -> Classification:
    return classify_and_contract(mu, n).classification


def is_homomorphism(n: np.ndarray, source: StructureTensor, target: StructureTensor) -> bool:
    """Whether N maps (A, source) homomorphically into (A, target).

    Products: N o source == target o N^(x)n.  Coproducts: source o N ==
    N^(x)n o target, the orientation in which a contracted coproduct relates
    to the original one.
    """
    if source.kind == PRODUCT:
        return source.compose_output(n) == target.compose_all_inputs(n)
    return source.compose_input(n) == target.compose_all_outputs(n)


def strong_saletan(mu: StructureTensor, n: np.ndarray, kmax: int | None = None) -> list[Classification]:
    """Classifications of N, N^2, ..., N^kmax (kmax defaults to the dimension)."""
    kmax = mu.dim if kmax is None else kmax
    return [classify(mu, linalg.matrix_power(n, k)) for k in range(1, kmax + 1)]


# -- special families ---------------------------------------------------------


def iw_closed_form(mu: StructureTensor, p: np.ndarray) -> StructureTensor:
    """X1*Y1 + (X1*Y2 + X2*Y1)_2 for the projection P onto E1."""
    q = linalg.identity(mu.dim) - p
    first = mu.compose_input(p, 0).compose_input(p, 1)
    cross = mu.compose_input(p, 0).compose_input(q, 1) + mu.compose_input(q, 0).compose_input(p, 1)
    return first + cross.compose_output(q)


def iw_contract(mu: StructureTensor, e1: Subspace, e2: Subspace) -> StructureTensor:
    """Contract by the projection onto a subalgebra ``e1`` along ``e2``."""
    m = mu.dim
    if e1.ambient_dim != m or e2.ambient_dim != m:
        raise DimensionMismatch("subspaces live in the wrong ambient space")
    if e1.dim + e2.dim != m or linalg.rank(np.concatenate([e1.matrix, e2.matrix], axis=1)) != m:
        raise NotComplementary(f"dims {e1.dim} + {e2.dim} do not give a direct sum of dimension {m}")
    for a, b in itertools.product(range(e1.dim), repeat=2):
        value = mu.evaluate(e1.basis[a], e1.basis[b])
        if not linalg.member(e1, value):
            raise NotInvolutive(f"product of E1 basis vectors {a}, {b} leaves E1")
    p = projection(e1, e2)
    report = classify_and_contract(mu, p)
    if not report.contractible:
        raise AssertionError("projection onto a subalgebra must be Saletan")
    closed = iw_closed_form(mu, p)
    if closed != report.contracted:
        raise AssertionError("contracted product disagrees with the projection formula")
    return report.contracted


def left_multiplication(mu: StructureTensor, k) -> np.ndarray:
    """Matrix of X -> K*X."""
    k = np.asarray([linalg.to_rational(x) for x in k], dtype=object)
    if k.shape != (mu.dim,):
        raise DimensionMismatch("K has the wrong length")
    # column j is mu(K, e_j)
    return np.tensordot(k, mu.constants, axes=([0], [0])).T.copy()


def insertion_product(mu: StructureTensor, k) -> StructureTensor:
    """(X, Y) -> X*K*Y."""
    k = np.asarray([linalg.to_rational(x) for x in k], dtype=object)
    right_k = np.tensordot(k, mu.constants, axes=([0], [1]))  # [x, l] = (X*K)_l
    c = np.tensordot(right_k, mu.constants, axes=([1], [0]))
    return StructureTensor(mu.dim, 2, PRODUCT, c)


def nk_contract(mu: StructureTensor, k) -> StructureTensor:
    """Contraction by left multiplication by K in an associative algebra."""
    if check_axioms(mu, [ASSOCIATIVE])[ASSOCIATIVE] is not None:
        raise NotAssociative("left multiplication is only Nijenhuis for associative products")
    n = left_multiplication(mu, k)
    report = classify_and_contract(mu, n)
    if report.classification is not Classification.NIJENHUIS:
        raise AssertionError("left multiplication should be a Nijenhuis tensor")
    if report.contracted != insertion_product(mu, k):
        raise AssertionError("contraction differs from X*K*Y")
    return report.contracted


def transported_product(mu: StructureTensor, a: np.ndarray) -> StructureTensor:
    """A^-1(A X * A Y) for invertible A."""
    return mu.compose_all_inputs(a).compose_output(linalg.inverse(a))


def family_contract(mu: StructureTensor, a: np.ndarray, n: np.ndarray) -> ContractionReport:
    """Contract along lam A + N by reduction to a lam I + N' family.

    Invertible A: contract A^-1(A X * A Y) by A^-1 N.  Singular A: pick the
    first t in 1, 1/2, ..., 1/(m+1) with B = A + t N invertible, factor
    lam A + N = B (lam I + (1 - lam t) B^-1 N), and contract B^-1(B X * B Y)
    by B^-1 N.
    """
    a, n = linalg.exact(a), linalg.exact(n)
    _require_binary(mu, n)
    if a.shape != n.shape:
        raise DimensionMismatch("A and N differ in shape")
    m = mu.dim
    if linalg.det(a) != 0:
        base, reduction = a, "invertible A"
    else:
        for j in range(1, m + 2):
            t = Fraction(1, j)
            base = a + n * t
            if linalg.det(base) != 0:
                reduction = f"factorized with lambda0={t}"
                break
        else:
            # m+1 roots of a degree <= m polynomial: det(A + t N) is identically 0
            raise Degenerate("det(A + t N) vanishes identically; no lam A + N is invertible")
    mu_base = transported_product(mu, base)
    report = classify_and_contract(mu_base, linalg.inverse(base) @ n)
    return ContractionReport(
        report.delta, report.torsion, report.classification, report.tau, report.contracted,
        report.witness, report.n_map, report.riesz, reduction, mu_base,
    )


def levy_nahas_contract(mu: StructureTensor, n: np.ndarray, p: int) -> StructureTensor:
    """Contraction along lam^p (N + lam I): (-N)^(p-1) applied to the E2 part of the torsion."""
    if p < 1:
        raise ValueError("p must be at least 1")
    n = linalg.exact(n)
    torsion = nijenhuis_torsion(mu, n)
    rz = riesz_decompose(n)
    t2 = torsion.compose_output(rz.proj2)
    n_p = linalg.matrix_power(n, p)
    for i, j in itertools.product(range(mu.dim), repeat=2):
        if not linalg.is_zero(n_p @ t2.value(i, j)):
            raise ConditionFails(f"N^{p} does not kill the E2 torsion at ({i}, {j})", witness=(i, j))
    return t2.compose_output(linalg.matrix_power(-n, p - 1))


@dataclass(frozen=True)
class GilmoreReport:
    holds: bool
    torsion2_zero: bool
    failure: tuple[int, int, int, int] | None  # (p, s, i, j)

    @property
    def agree(self) -> bool:
        return self.holds == self.torsion2_zero


def gilmore_check(mu: StructureTensor, n: np.ndarray, pmax: int = 4, smax: int = 4) -> GilmoreReport:
    """Check N^{p+s}[X,Y]_2 - N^p[X,N^sY]_2 == N^s[N^pX,Y]_2 - [N^pX,N^sY]_2.

    Exhaustive over basis pairs and 1 <= p <= pmax, 1 <= s <= smax.  The
    identity family holds exactly when the E2 part of the torsion vanishes.
    """
    if pmax < 1 or smax < 1:
        raise ValueError("pmax and smax must be positive")
    n = linalg.exact(n)
    _require_binary(mu, n)
    rz = riesz_decompose(n)
    mu2 = mu.compose_output(rz.proj2)
    power = [linalg.matrix_power(n, k) for k in range(pmax + smax + 1)]
    failure = None
    for p, s in itertools.product(range(1, pmax + 1), range(1, smax + 1)):
        lhs = mu2.compose_output(power[p + s]) - mu2.compose_input(power[s], 1).compose_output(power[p])
        left_p = mu2.compose_input(power[p], 0)
        rhs = left_p.compose_output(power[s]) - left_p.compose_input(power[s], 1)
        diff = lhs - rhs
        if not diff.is_zero():
            i, j, _ = diff.nonzero()[0][0]
            failure = (p, s, i, j)
            break
    torsion2 = nijenhuis_torsion(mu, n).compose_output(rz.proj2)
    return GilmoreReport(failure is None, torsion2.is_zero(), failure)


def compatible(mu: StructureTensor, other: StructureTensor, axioms, alphas=(1, -1, 2, -2, Fraction(1, 2))) -> bool:
    """Whether mu + alpha*other satisfies ``axioms`` for every alpha given."""
    return all(satisfies(mu + other.scale(alpha), axioms) for alpha in alphas)
