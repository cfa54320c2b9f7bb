"""Structure-constant tensors for n-ary products and coproducts.

A product of arity n on an m-dimensional space is stored as a dense object
array ``c`` of shape ``(m,)*(n+1)`` with

    mu(e_{i1}, ..., e_{in}) = sum_k c[i1, ..., in, k] e_k

so the inputs occupy axes ``0..n-1`` and the output is the last axis.  A
coproduct stores ``Delta(e_i) = sum c[i, k1, ..., kn] e_{k1} (x) ... (x) e_{kn}``:
input on axis 0, outputs on the remaining axes.  Every composition with a
linear map reduces to one ``tensordot`` on the relevant axis, which is how
both kinds share a single code path.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import ArityMismatch, AxiomViolation, DimensionMismatch, IndexOutOfRange, UnknownName

PRODUCT = "product"
COPRODUCT = "coproduct"

ANTISYMMETRIC = "antisymmetric"
JACOBI = "jacobi"
ASSOCIATIVE = "associative"
KNOWN_AXIOMS = (ANTISYMMETRIC, JACOBI, ASSOCIATIVE)


@dataclass(frozen=True, eq=False)
class StructureTensor:
    dim: int
    arity: int
    kind: str
    constants: np.ndarray

    def __post_init__(self):
        if self.kind not in (PRODUCT, COPRODUCT):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.arity < 1:
            raise ArityMismatch("arity must be at least 1")
        expected = (self.dim,) * (self.arity + 1)
        if self.constants.shape != expected:
            raise DimensionMismatch(f"constants shape {self.constants.shape}, expected {expected}")

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int, arity: int = 2, kind: str = PRODUCT) -> "StructureTensor":
        return cls(dim, arity, kind, linalg.zeros(*((dim,) * (arity + 1))))

    @classmethod
    def from_entries(cls, dim: int, arity: int, kind: str, entries: Mapping) -> "StructureTensor":
        """Build from a sparse map ``{(inputs..., out) or (in, outs...): value}``."""
        c = linalg.zeros(*((dim,) * (arity + 1)))
        for idx, value in entries.items():
            if len(idx) != arity + 1:
                raise ArityMismatch(f"index {idx} has wrong length for arity {arity}")
            if any(not 0 <= i < dim for i in idx):
                raise IndexOutOfRange(f"index {idx} out of range for dim {dim}")
            c[tuple(idx)] += linalg.to_rational(value)
        return cls(dim, arity, kind, c)

    @classmethod
    def from_array(cls, arr, kind: str = PRODUCT) -> "StructureTensor":
        c = linalg.exact(arr)
        return cls(c.shape[0], c.ndim - 1, kind, c)

    # -- axes -------------------------------------------------------------

    @property
    def input_axes(self) -> tuple[int, ...]:
        if self.kind == PRODUCT:
            return tuple(range(self.arity))
        return (0,)

    @property
    def output_axes(self) -> tuple[int, ...]:
        if self.kind == PRODUCT:
            return (self.arity,)
        return tuple(range(1, self.arity + 1))

    def _with(self, constants: np.ndarray) -> "StructureTensor":
        return StructureTensor(self.dim, self.arity, self.kind, constants)

    def _check_map(self, m: np.ndarray):
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"map of shape {m.shape} on a {self.dim}-dim tensor")

    def compose_input(self, m: np.ndarray, slot: int = 0) -> "StructureTensor":
        """Precompose with ``m`` in input ``slot``: mu(..., m x, ...)."""
        self._check_map(m)
        axis = self.input_axes[slot]
        moved = linalg.tensordot(m, self.constants, axes=([0], [axis]))
        return self._with(np.moveaxis(moved, 0, axis))

    def compose_output(self, m: np.ndarray, slot: int = 0) -> "StructureTensor":
        """Postcompose with ``m`` acting on output ``slot``."""
        self._check_map(m)
        axis = self.output_axes[slot]
        moved = linalg.tensordot(m, self.constants, axes=([1], [axis]))
        return self._with(np.moveaxis(moved, 0, axis))

    def compose_all_inputs(self, m: np.ndarray) -> "StructureTensor":
        t = self
        for slot in range(len(self.input_axes)):
            t = t.compose_input(m, slot)
        return t

    def compose_all_outputs(self, m: np.ndarray) -> "StructureTensor":
        t = self
        for slot in range(len(self.output_axes)):
            t = t.compose_output(m, slot)
        return t

    def transpose(self) -> "StructureTensor":
        """The dual structure: a product becomes a coproduct and vice versa."""
        if self.kind == PRODUCT:
            return StructureTensor(self.dim, self.arity, COPRODUCT, np.moveaxis(self.constants, -1, 0))
        return StructureTensor(self.dim, self.arity, PRODUCT, np.moveaxis(self.constants, 0, -1))

    # -- evaluation -------------------------------------------------------

    def evaluate(self, *args) -> np.ndarray:
        """Multilinear evaluation.

        For a product pass ``arity`` vectors and get a vector back; for a
        coproduct pass one vector and get an ``arity``-index array back.
        """
        n_in = len(self.input_axes)
        if len(args) != n_in:
            raise ArityMismatch(f"expected {n_in} arguments, got {len(args)}")
        out = self.constants
        for v in args:
            v = np.asarray(v, dtype=object if out.dtype == object else float)
            if v.shape != (self.dim,):
                raise DimensionMismatch(f"argument of shape {v.shape} for dim {self.dim}")
            dot = linalg.tensordot if out.dtype == object else np.tensordot
            out = dot(v, out, axes=([0], [0]))
        return out

    def value(self, *indices) -> np.ndarray:
        """Output for basis inputs (a row of constants)."""
        return self.constants[tuple(indices)]

    # -- arithmetic -------------------------------------------------------

    def _same_shape(self, other: "StructureTensor"):
        if (self.dim, self.arity, self.kind) != (other.dim, other.arity, other.kind):
            raise DimensionMismatch("structure tensors of different shape or kind")

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        self._same_shape(other)
        return self._with(self.constants + other.constants)

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        self._same_shape(other)
        return self._with(self.constants - other.constants)

    def __neg__(self) -> "StructureTensor":
        return self._with(-self.constants)

    def scale(self, alpha) -> "StructureTensor":
        return self._with(self.constants * linalg.to_rational(alpha))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return (self.dim, self.arity, self.kind) == (other.dim, other.arity, other.kind) and bool(
            np.array_equal(self.constants, other.constants)
        )

    def __hash__(self):
        return hash((self.dim, self.arity, self.kind, tuple(self.constants.flat)))

    def is_zero(self) -> bool:
        return linalg.is_zero(self.constants)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Sorted ``(index, value)`` pairs of the nonzero constants."""
        return [(tuple(int(i) for i in idx), self.constants[idx]) for idx in np.ndindex(self.constants.shape)
                if self.constants[idx] != 0]

    def to_float(self) -> np.ndarray:
        return linalg.to_float(self.constants)

    def __repr__(self) -> str:
        body = ", ".join(f"{idx}: {val}" for idx, val in self.nonzero())
        return f"StructureTensor(dim={self.dim}, arity={self.arity}, kind={self.kind}, {{{body}}})"


# -- axioms -----------------------------------------------------------------


def _first_nonzero(arr: np.ndarray):
    for idx in np.ndindex(arr.shape[:-1]):
        if any(x != 0 for x in arr[idx]):
            return tuple(int(i) for i in idx)
    return None


def antisymmetry_defect(c: np.ndarray) -> np.ndarray:
    """Array ``[x, y, k]`` of mu(x, y) + mu(y, x)."""
    return c + np.swapaxes(c, 0, 1)


def jacobi_defect(c: np.ndarray) -> np.ndarray:
    """Array ``[x, y, z, k]`` of the cyclic sum mu(x, mu(y, z)) + ..."""
    # mu(x, mu(y, z)) = sum_l c[y, z, l] c[x, l, k]
    inner = np.einsum("yzl,xlk->xyzk", c, c)
    return inner + np.transpose(inner, (1, 2, 0, 3)) + np.transpose(inner, (2, 0, 1, 3))


def associativity_defect(c: np.ndarray) -> np.ndarray:
    """Array ``[x, y, z, k]`` of mu(x, mu(y, z)) - mu(mu(x, y), z)."""
    left = np.einsum("yzl,xlk->xyzk", c, c)
    right = np.einsum("xyl,lzk->xyzk", c, c)
    return left - right


_DEFECTS = {
    ANTISYMMETRIC: antisymmetry_defect,
    JACOBI: jacobi_defect,
    ASSOCIATIVE: associativity_defect,
}


def check_axioms(t: StructureTensor, axioms) -> dict[str, tuple[int, ...] | None]:
    """Exhaustive basis check of each axiom.

    Returns ``{axiom: None}`` on success or ``{axiom: witness}`` with the
    lexicographically first violating basis tuple.  Multilinearity makes
    the basis check equivalent to the universally quantified identity.
    """
    report: dict[str, tuple[int, ...] | None] = {}
    for name in axioms:
        if name not in _DEFECTS:
            raise UnknownName(f"unknown axiom {name!r}")
        if t.kind != PRODUCT or t.arity != 2:
            raise ArityMismatch(f"axiom {name!r} needs a binary product")
        report[name] = _first_nonzero(_DEFECTS[name](t.constants))
    return report


def satisfies(t: StructureTensor, axioms) -> bool:
    return all(w is None for w in check_axioms(t, axioms).values())


def is_coassociative(t: StructureTensor) -> bool:
    """(Delta (x) id) Delta == (id (x) Delta) Delta for a binary coproduct."""
    if t.kind != COPRODUCT or t.arity != 2:
        raise ArityMismatch("coassociativity needs a binary coproduct")
    c = t.constants
    left = np.einsum("iab,axy->ixyb", c, c)
    right = np.einsum("iab,byz->iayz", c, c)
    return bool(np.array_equal(left, right))


@dataclass(frozen=True, eq=False)
class Algebra:
    tensor: StructureTensor
    axioms: frozenset = field(default_factory=frozenset)
    labels: tuple | None = None
    name: str | None = None

    def __post_init__(self):
        report = check_axioms(self.tensor, sorted(self.axioms)) if self.axioms else {}
        for axiom, witness in report.items():
            if witness is not None:
                raise AxiomViolation(
                    f"declared axiom {axiom!r} fails at basis tuple {witness}", axiom=axiom, witness=witness
                )
        if self.labels is not None and len(self.labels) != self.tensor.dim:
            raise DimensionMismatch("label count differs from dimension")

    @property
    def dim(self) -> int:
        return self.tensor.dim

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"


# -- constructors -----------------------------------------------------------


def lie_tensor(dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]]) -> StructureTensor:
    """Antisymmetric tensor from the brackets ``[e_i, e_j] = sum c_k e_k`` for i < j."""
    c = linalg.zeros(dim, dim, dim)
    for (i, j), out in brackets.items():
        for k, value in out.items():
            value = linalg.to_rational(value)
            c[i, j, k] += value
            c[j, i, k] -= value
    return StructureTensor(dim, 2, PRODUCT, c)


def matrix_unit_index(n: int, i: int, j: int) -> int:
    return i * n + j


def product_from_matrix_algebra(n: int) -> Algebra:
    """n x n matrices in the basis e_ij (row-major), e_ij e_kl = delta_jk e_il."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = n * n
    c = linalg.zeros(m, m, m)
    for i, j, l in itertools.product(range(n), repeat=3):
        c[matrix_unit_index(n, i, j), matrix_unit_index(n, j, l), matrix_unit_index(n, i, l)] = Fraction(1)
    labels = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return Algebra(StructureTensor(m, 2, PRODUCT, c), frozenset({ASSOCIATIVE}), labels, f"mat{n}")


def general_linear(n: int) -> Algebra:
    """gl(n): matrices under the commutator."""
    assoc = product_from_matrix_algebra(n).tensor.constants
    c = assoc - np.swapaxes(assoc, 0, 1)
    labels = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return Algebra(StructureTensor(n * n, 2, PRODUCT, c), frozenset({ANTISYMMETRIC, JACOBI}), labels, f"gl{n}")


def matrix_coalgebra(n: int) -> StructureTensor:
    """Delta(e_ij) = sum_k e_ik (x) e_kj, the dual of matrix multiplication."""
    return product_from_matrix_algebra(n).tensor.transpose()


def su2() -> Algebra:
    t = lie_tensor(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
    return Algebra(t, frozenset({ANTISYMMETRIC, JACOBI}), ("X1", "X2", "X3"), "su2")


def e2() -> Algebra:
    t = lie_tensor(3, {(0, 1): {2: 1}, (2, 0): {1: 1}})
    return Algebra(t, frozenset({ANTISYMMETRIC, JACOBI}), ("X1", "X2", "X3"), "e2")


def heisenberg3() -> Algebra:
    t = lie_tensor(3, {(0, 1): {2: 1}})
    return Algebra(t, frozenset({ANTISYMMETRIC, JACOBI}), ("X1", "X2", "X3"), "heisenberg3")


def abelian(m: int) -> Algebra:
    labels = tuple(f"X{i + 1}" for i in range(m))
    return Algebra(StructureTensor.zero(m), frozenset({ANTISYMMETRIC, JACOBI}), labels, f"abelian({m})")


_PARAM_RE = re.compile(r"^(abelian|mat|gl)\(?(\d+)\)?$")


def builtin(name: str) -> Algebra:
    """Named algebras: su2, e2, heisenberg3, gl2, abelian(m), mat(n), gl(n)."""
    fixed = {"su2": su2, "e2": e2, "heisenberg3": heisenberg3}
    key = name.strip().lower()
    if key in fixed:
        return fixed[key]()
    match = _PARAM_RE.match(key)
    if match:
        family, size = match.group(1), int(match.group(2))
        if size < 1:
            raise UnknownName(f"bad size in {name!r}")
        return {"abelian": abelian, "mat": product_from_matrix_algebra, "gl": general_linear}[family](size)
    raise UnknownName(f"no builtin algebra called {name!r}")


BUILTIN_NAMES: Sequence[str] = ("su2", "e2", "heisenberg3", "gl2", "abelian(m)", "mat(n)")
