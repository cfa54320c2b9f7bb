"""A fixed library of (algebra, N) instances used by tests and scripts.

Each instance carries the class of N it exercises (projection, nilpotent,
invertible, general) and the classification it is expected to produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Algebra, builtin, general_linear, product_from_matrix_algebra
from .engine import Classification, left_multiplication
from .linalg import identity, matrix

NIJ, SAL, NOT = Classification.NIJENHUIS, Classification.SALETAN, Classification.NOT_CONTRACTIBLE


@dataclass(frozen=True, eq=False)
class Instance:
    name: str
    algebra: Algebra
    n_map: np.ndarray
    shape: str  # projection | nilpotent | invertible | general
    expected: Classification

    @property
    def mu(self):
        return self.algebra.tensor


def diag(*values) -> np.ndarray:
    m = len(values)
    return matrix([[values[i] if i == j else 0 for j in range(m)] for i in range(m)])


def upper_triangular_projection() -> np.ndarray:
    """Projection of 2x2 matrices onto upper-triangular ones along e21."""
    return diag(1, 1, 0, 1)


def n_alpha(alpha) -> np.ndarray:
    """(1 - alpha) * (upper-triangular part) + alpha * identity on 2x2 matrices."""
    alpha = Fraction(alpha)
    return upper_triangular_projection() * (1 - alpha) + identity(4) * alpha


def instances() -> list[Instance]:
    su2, heis = builtin("su2"), builtin("heisenberg3")
    gl2, ab4, mat2 = general_linear(2), builtin("abelian(4)"), product_from_matrix_algebra(2)
    half = Fraction(1, 2)
    return [
        Instance("su2/proj_x1", su2, diag(1, 0, 0), "projection", SAL),
        Instance("su2/proj_x2", su2, diag(0, 1, 0), "projection", SAL),
        Instance("su2/proj_x3", su2, diag(0, 0, 1), "projection", SAL),
        Instance("su2/scaled_proj_x1", su2, diag(3, 0, 0), "general", SAL),
        Instance("su2/identity", su2, identity(3), "invertible", NIJ),
        Instance("su2/diag123", su2, diag(1, 2, 3), "invertible", SAL),
        Instance("su2/proj_x1x2", su2, diag(1, 1, 0), "projection", NOT),
        Instance("heisenberg3/nil_x2_to_x3", heis, matrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]]), "nilpotent", NIJ),
        Instance("heisenberg3/nil_mixed", heis, matrix([[0, 0, 0], [2, 0, 0], [1, 2, 0]]), "nilpotent", NIJ),
        Instance("heisenberg3/proj_x1x3", heis, diag(1, 0, 1), "projection", NIJ),
        Instance("heisenberg3/singular_mixed", heis, matrix([[0, 0, 0], [1, -1, 0], [1, 0, 1]]), "general", SAL),
        Instance("heisenberg3/invertible", heis, matrix([[1, 1, 0], [0, 2, 0], [0, 0, 3]]), "invertible", SAL),
        Instance("gl2/cartan_proj", gl2, diag(1, 0, 0, 1), "projection", SAL),
        Instance("gl2/borel_proj", gl2, upper_triangular_projection(), "projection", NIJ),
        Instance("gl2/nil_e12", gl2, matrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
                 "nilpotent", NIJ),
        Instance("gl2/invertible_diag", gl2, diag(1, 2, 3, 4), "invertible", SAL),
        Instance("gl2/nil_e21", gl2, matrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
                 "nilpotent", NOT),
        Instance("abelian4/jordan4", ab4, matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]),
                 "nilpotent", NIJ),
        Instance("abelian4/proj_12", ab4, diag(1, 1, 0, 0), "projection", NIJ),
        Instance("abelian4/invertible", ab4, matrix([[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, -1, 3], [0, 0, 0, 5]]),
                 "invertible", NIJ),
        Instance("mat2/upper_triangular", mat2, n_alpha(0), "projection", NIJ),
        Instance("mat2/n_alpha_half", mat2, n_alpha(half), "invertible", NIJ),
        Instance("mat2/left_mult_e11", mat2, left_multiplication(mat2.tensor, [1, 0, 0, 0]), "projection", NIJ),
        Instance("mat2/left_mult_nilpotent", mat2, left_multiplication(mat2.tensor, [0, 1, 0, 0]), "nilpotent", NIJ),
        Instance("mat2/conjugation_diag", mat2, diag(1, 2, half, 1), "invertible", SAL),
    ]


def contractible_instances() -> list[Instance]:
    return [inst for inst in instances() if inst.expected is not NOT]
