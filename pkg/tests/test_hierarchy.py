import itertools

import pytest
from hypothesis import given

from saletan import Classification, builtin, classify_and_contract
from saletan.engine import derived_product
from saletan.errors import StrongSaletanFails
from saletan.hierarchy import (
    ProductOperator,
    delta_power_matches,
    hierarchy,
    hierarchy_laws_check,
    operator_identities_check,
    operators,
    saletan_implies_strong,
    subideal_check,
)
from saletan.linalg import identity, zeros
from saletan.suite import diag

from conftest import int_matrices

SU2 = builtin("su2").tensor
PROJ_X1 = diag(1, 0, 0)


def test_operator_examples():
    a, _, _ = operators(identity(3))
    assert a(SU2) == SU2
    _, b, _ = operators(zeros(3, 3))
    assert b(SU2).is_zero()
    _, b, c = operators(PROJ_X1)
    bc = b(c(SU2))
    assert bc.value(0, 0).tolist() == [0, 0, 0] and bc.value(0, 1).tolist() == [0, 0, 0]


def test_bad_operator_kind():
    with pytest.raises(ValueError):
        ProductOperator("D", PROJ_X1)


@given(int_matrices(3))
def test_operators_commute(n):
    ops = operators(n)
    for x, y in itertools.combinations(ops, 2):
        assert x(y(SU2)) == y(x(SU2))


@given(int_matrices(3))
def test_operator_powers(n):
    for kind in "ABC":
        once = ProductOperator(kind, n)
        assert ProductOperator(kind, n, 2)(SU2) == once(once(SU2))


@given(int_matrices(3))
def test_operator_identities_for_any_n(n):
    assert operator_identities_check(SU2, n).ok


def test_operator_identities_on_suite(suite):
    for inst in suite:
        report = operator_identities_check(inst.mu, inst.n_map)
        assert report.ok, (inst.name, report.failures)


def test_hierarchy_su2_projection():
    levels = hierarchy(SU2, PROJ_X1, 3)
    e2 = builtin("e2").tensor
    assert levels == [SU2, e2, e2, e2]


def test_hierarchy_identity_constant():
    assert all(t == SU2 for t in hierarchy(SU2, identity(3)))


def test_hierarchy_rejects_non_saletan():
    with pytest.raises(StrongSaletanFails) as info:
        hierarchy(SU2, diag(1, 1, 0))
    assert info.value.k == 1


@pytest.mark.parametrize("name", ["su2/proj_x1", "heisenberg3/nil_mixed", "heisenberg3/singular_mixed",
                                  "gl2/invertible_diag"])
def test_laws_and_subideals(suite, name):
    inst = next(i for i in suite if i.name == name)
    laws = hierarchy_laws_check(inst.mu, inst.n_map, 3, 3)
    assert laws.ok, laws.failures
    subs = subideal_check(inst.mu, inst.n_map, 3, 3)
    assert subs.ok, subs.failures


def test_subideal_example_su2():
    # ker N = span{X2, X3} is an ideal of e(2)
    report = subideal_check(SU2, PROJ_X1, 1, 2)
    assert report.results["ker N^1 ideal of D_N^2"]


def test_lemma_sides_vanish_for_nijenhuis(suite):
    for inst in suite:
        if inst.expected is Classification.NIJENHUIS:
            report = classify_and_contract(inst.mu, inst.n_map)
            d2 = classify_and_contract(inst.mu, inst.n_map @ inst.n_map).contracted
            assert derived_product(report.contracted, inst.n_map) == d2


def test_zero_map_subideals():
    assert subideal_check(SU2, zeros(3, 3), 1, 3).ok


@pytest.mark.parametrize("k", [1, 2, 3])
def test_delta_powers_for_nijenhuis(suite, k):
    for inst in suite:
        if inst.expected is Classification.NIJENHUIS:
            assert delta_power_matches(inst.mu, inst.n_map, k), inst.name


def test_delta_powers_can_differ_without_nijenhuis():
    assert not delta_power_matches(SU2, diag(1, 2, 3), 2)


@given(int_matrices(3))
def test_saletan_implies_strong_su2(n):
    assert saletan_implies_strong(SU2, n)


@given(int_matrices(3))
def test_saletan_implies_strong_heisenberg(n):
    assert saletan_implies_strong(builtin("heisenberg3").tensor, n)
