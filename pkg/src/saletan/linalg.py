"""Exact rational linear algebra on numpy object arrays of ``Fraction``.

Matrices and vectors are plain ``numpy.ndarray`` objects with ``dtype=object``
whose entries are ``fractions.Fraction``.  Everything here is exact: there is
no pivot tolerance, a value is either zero or it is not.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NoSolution, NotUnique, ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or a decimal integer string; ints and Fractions pass through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"not a rational: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def render_rational(value) -> str:
    return str(Fraction(value))


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"refusing to convert {type(value).__name__} to an exact rational")


def matrix(rows: Iterable[Iterable]) -> np.ndarray:
    """Build an exact matrix from nested rows of ints, Fractions or "p/q" strings."""
    data = [[to_rational(x) for x in row] for row in rows]
    if not data:
        return np.empty((0, 0), dtype=object)
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise DimensionMismatch("ragged matrix rows")
    out = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def vector(entries: Iterable) -> np.ndarray:
    values = [to_rational(x) for x in entries]
    out = np.empty(len(values), dtype=object)
    out[:] = values
    return out


def exact(arr) -> np.ndarray:
    """Convert an integer/Fraction array of any shape into an exact object array."""
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_rational(arr[idx])
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(m: int) -> np.ndarray:
    out = zeros(m, m)
    for i in range(m):
        out[i, i] = Fraction(1)
    return out


def unit_vector(m: int, i: int) -> np.ndarray:
    v = zeros(m)
    v[i] = Fraction(1)
    return v


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def to_float(arr) -> np.ndarray:
    return np.vectorize(float, otypes=[float])(arr) if np.size(arr) else np.zeros(np.shape(arr))


def _integer_part(arr: np.ndarray) -> tuple[np.ndarray, int]:
    """(numerators over a common denominator, that denominator)."""
    den = math.lcm(*(x.denominator for x in arr.flat)) if arr.size else 1
    return np.frompyfunc(lambda x: x.numerator * (den // x.denominator), 1, 1)(arr), den


def tensordot(a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
    """Exact ``numpy.tensordot`` of Fraction arrays, contracted in integers.

    Fraction products are slow; clearing denominators first turns the inner
    loop into plain integer arithmetic.
    """
    ia, da = _integer_part(a)
    ib, db = _integer_part(b)
    out = np.tensordot(ia, ib, axes=axes)
    den = da * db
    return np.frompyfunc(lambda x: Fraction(x, den), 1, 1)(out).astype(object)


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    """Exact ``m**k`` by repeated squaring (``k >= 0``)."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix_power needs a square matrix, got {m.shape}")
    if k < 0:
        raise ValueError("negative power")
    result = identity(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    r = np.array(m, dtype=object, copy=True)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = next((i for i in range(row, rows) if r[i, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        r[row] = r[row] / r[row, col]
        for i in range(rows):
            if i != row and r[i, col] != 0:
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def det(m: np.ndarray) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"det needs a square matrix, got {m.shape}")
    a = np.array(m, dtype=object, copy=True)
    n = a.shape[0]
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i, col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            result = -result
        result *= a[col, col]
        for i in range(col + 1, n):
            if a[i, col] != 0:
                a[i] = a[i] - (a[i, col] / a[col, col]) * a[col]
    return result


def inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise DimensionMismatch(f"inverse needs a square matrix, got {m.shape}")
    aug = np.concatenate([m, identity(n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise NotUnique("matrix is singular")
    return r[:, n:]


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One exact solution of ``m x = b`` (free variables set to zero)."""
    rows, cols = m.shape
    if b.shape != (rows,):
        raise DimensionMismatch(f"rhs has shape {b.shape}, expected ({rows},)")
    aug = np.concatenate([m, b.reshape(rows, 1)], axis=1)
    r, pivots = rref(aug)
    if cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = zeros(cols)
    for i, p in enumerate(pivots):
        x[p] = r[i, cols]
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of Q^ambient_dim given by independent basis vectors."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        for v in self.basis:
            if np.shape(v) != (self.ambient_dim,):
                raise DimensionMismatch("basis vector has wrong length")
        if self.basis and rank(self.matrix) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Sequence) -> "Subspace":
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        vecs = [vector(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, ())
        cols = np.stack(vecs, axis=1)
        _, pivots = rref(cols)
        return cls(ambient_dim, tuple(vecs[p] for p in pivots))

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as columns (``ambient_dim x dim``)."""
        if not self.basis:
            return zeros(self.ambient_dim, 0)
        return np.stack(self.basis, axis=1)

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and all(member(self, v) for v in other.basis)
        )

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(map(str, v)) + ")" for v in self.basis)
        return f"Subspace({self.ambient_dim}, [{vecs}])"


def image_basis(m: np.ndarray) -> Subspace:
    """Column space, using the pivot columns of ``m`` itself as basis."""
    if m.size == 0:
        return Subspace(m.shape[0], ())
    _, pivots = rref(m)
    return Subspace(m.shape[0], tuple(np.array(m[:, p], dtype=object) for p in pivots))


def kernel_basis(m: np.ndarray) -> Subspace:
    """Null space basis, one vector per free column of the rref."""
    rows, cols = m.shape
    if rows == 0:
        return Subspace.whole(cols)
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return Subspace(cols, tuple(basis))


def member(s: Subspace, v) -> bool:
    v = np.asarray(v, dtype=object)
    if v.shape != (s.ambient_dim,):
        raise DimensionMismatch(f"vector of length {v.shape} vs ambient {s.ambient_dim}")
    if is_zero(v):
        return True
    if s.dim == 0:
        return False
    return rank(np.concatenate([s.matrix, v.reshape(-1, 1)], axis=1)) == s.dim


def coordinates(s: Subspace, v) -> np.ndarray:
    """Coefficients ``c`` with ``s.matrix @ c == v``."""
    if s.dim == 0:
        if not is_zero(v):
            raise NoSolution("vector is not in the zero subspace")
        return zeros(0)
    return solve(s.matrix, np.asarray(v, dtype=object))


def solve_in_subspace(m: np.ndarray, b, s: Subspace) -> np.ndarray:
    """The unique ``x`` in ``s`` with ``m @ x == b``.

    Raises NotUnique when ``m`` restricted to ``s`` is not injective and
    NoSolution when ``b`` is not in ``m(s)``.
    """
    b = np.asarray(b, dtype=object)
    if m.shape[1] != s.ambient_dim:
        raise DimensionMismatch(f"matrix has {m.shape[1]} columns, subspace lives in {s.ambient_dim}")
    if s.dim == 0:
        if not is_zero(b):
            raise NoSolution("only the zero vector lies in m({0})")
        return zeros(s.ambient_dim)
    restricted = m @ s.matrix
    if rank(restricted) < s.dim:
        raise NotUnique("matrix is singular on the subspace")
    coeffs = solve(restricted, b)
    return s.matrix @ coeffs
