import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from saletan import StructureTensor, builtin, check_axioms, product_from_matrix_algebra
from saletan.algebra import (
    Algebra,
    general_linear,
    is_coassociative,
    matrix_coalgebra,
    satisfies,
)
from saletan.errors import ArityMismatch, AxiomViolation, DimensionMismatch, UnknownName
from saletan.linalg import matrix, to_float, vector

from conftest import rationals, random_rational_vector

vec3 = st.lists(rationals, min_size=3, max_size=3).map(vector)


def _as_matrix(v, n):
    return to_float(v).reshape(n, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_product_agrees_with_numpy_matmul(n):
    mu = product_from_matrix_algebra(n).tensor
    rng = np.random.default_rng(n)
    for _ in range(10):
        x, y = (vector(random_rational_vector(rng, n * n)) for _ in range(2))
        got = _as_matrix(mu.evaluate(x, y), n)
        assert np.allclose(got, _as_matrix(x, n) @ _as_matrix(y, n), atol=1e-12)


def test_gl2_is_the_commutator():
    mu, lie = product_from_matrix_algebra(2).tensor, general_linear(2).tensor
    for i, j in itertools.product(range(4), repeat=2):
        assert np.array_equal(lie.value(i, j), mu.value(i, j) - mu.value(j, i))


THREE_DIM = {name: builtin(name).tensor for name in ("su2", "e2", "heisenberg3")}


@pytest.mark.parametrize("name", sorted(THREE_DIM))
@given(x=vec3, y=vec3, z=vec3)
def test_jacobi_on_random_triples(name, x, y, z):
    b = THREE_DIM[name].evaluate
    total = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
    assert all(v == 0 for v in total)
    assert all(v == 0 for v in b(x, y) + b(y, x))


@pytest.mark.parametrize("name", ["gl2", "abelian(4)", "gl(3)"])
def test_jacobi_random_sampling_higher_dim(name):
    mu = builtin(name).tensor
    rng = np.random.default_rng(11)
    b = mu.evaluate
    for _ in range(10):
        x, y, z = (vector(random_rational_vector(rng, mu.dim)) for _ in range(3))
        assert all(v == 0 for v in b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y)))


def test_builtin_axioms_hold():
    for name in ["su2", "e2", "heisenberg3", "gl2", "abelian(4)"]:
        assert satisfies(builtin(name).tensor, ["antisymmetric", "jacobi"])
    assert satisfies(builtin("mat(2)").tensor, ["associative"])


def test_lie_algebra_is_not_associative():
    assert check_axioms(builtin("su2").tensor, ["associative"])["associative"] is not None


def test_witness_is_lexicographically_first():
    c = StructureTensor.from_entries(3, 2, "product", {(1, 2, 0): 1})
    assert check_axioms(c, ["antisymmetric"]) == {"antisymmetric": (1, 2)}


def test_algebra_rejects_false_axiom():
    c = StructureTensor.from_entries(3, 2, "product", {(0, 1, 2): 1})
    with pytest.raises(AxiomViolation) as info:
        Algebra(c, frozenset({"antisymmetric"}))
    assert info.value.witness == (0, 1)


def test_unknown_builtin():
    with pytest.raises(UnknownName):
        builtin("so(3)")


def test_compose_input_and_output():
    mu = builtin("su2").tensor
    rng = np.random.default_rng(3)
    m = matrix(rng.integers(-2, 3, (3, 3)).tolist())
    x, y = (vector(random_rational_vector(rng, 3)) for _ in range(2))
    assert np.array_equal(mu.compose_input(m, 0).evaluate(x, y), mu.evaluate(m @ x, y))
    assert np.array_equal(mu.compose_input(m, 1).evaluate(x, y), mu.evaluate(x, m @ y))
    assert np.array_equal(mu.compose_output(m).evaluate(x, y), m @ mu.evaluate(x, y))
    with pytest.raises(DimensionMismatch):
        mu.compose_input(matrix([[1]]))


def test_matrix_coalgebra_is_dual_and_coassociative():
    delta = matrix_coalgebra(2)
    assert delta.kind == "coproduct" and is_coassociative(delta)
    assert delta.transpose() == product_from_matrix_algebra(2).tensor
    # Delta(e12) = e11 (x) e12 + e12 (x) e22
    assert {idx for idx, _ in delta.nonzero() if idx[0] == 1} == {(1, 0, 1), (1, 1, 3)}


def test_coassociativity_needs_a_coproduct():
    with pytest.raises(ArityMismatch):
        is_coassociative(builtin("su2").tensor)


def test_arithmetic_and_equality():
    a, b = builtin("su2").tensor, builtin("e2").tensor
    assert (a - b) + b == a
    assert a.scale(2) == a + a
    assert -a + a == StructureTensor.zero(3)
    assert a != b
