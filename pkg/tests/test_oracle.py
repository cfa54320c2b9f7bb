import json

import numpy as np
import pytest

from saletan import LimitProbeConfig, builtin, classify_and_contract, limit_probe
from saletan.errors import Diverging, SingularAtLambda
from saletan.linalg import identity, matrix
from saletan.oracle import PROBE_COUNT_ENV, conjugate, default_lambdas
from saletan.suite import diag

CRITERION_LAMBDAS = (1e-2, 1e-3, 1e-4, 1e-5)


def test_identity_closed_form(su2):
    # U = (1 + lam) I, so the transported bracket is (1 + lam) mu
    mu = su2.tensor
    probe = limit_probe(mu, identity(3), LimitProbeConfig(lambdas=CRITERION_LAMBDAS), expected=mu)
    assert probe.errors == pytest.approx(CRITERION_LAMBDAS, rel=1e-9)
    assert probe.order == pytest.approx(1.0, abs=1e-6)


def test_su2_to_e2_bound(su2):
    e2 = builtin("e2").tensor
    probe = limit_probe(su2.tensor, diag(1, 0, 0), LimitProbeConfig(lambdas=CRITERION_LAMBDAS), expected=e2)
    for lam, err in zip(CRITERION_LAMBDAS, probe.errors):
        assert err <= 10 * lam
    assert probe.converged and not probe.diverging


def test_not_contractible_diverges(su2):
    n = diag(1, 1, 0)
    report = classify_and_contract(su2.tensor, n)
    probe = limit_probe(su2.tensor, n, LimitProbeConfig(lambdas=CRITERION_LAMBDAS), expected=report.delta)
    assert probe.diverging and probe.order == pytest.approx(-1.0, abs=0.05)
    with pytest.raises(Diverging):
        limit_probe(su2.tensor, n, LimitProbeConfig(lambdas=CRITERION_LAMBDAS), expected=report.delta, strict=True)


def test_singular_probe(su2):
    n = matrix([["-1/100", 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(SingularAtLambda) as info:
        limit_probe(su2.tensor, n, LimitProbeConfig(lambdas=(1e-1, 1e-2, 1e-3)))
    assert info.value.lam == 1e-2


def test_f_scale_family_converges(su2):
    cfg = LimitProbeConfig(lambdas=CRITERION_LAMBDAS, f_scale=lambda lam: 1 + 3 * lam)
    probe = limit_probe(su2.tensor, diag(1, 0, 0), cfg, expected=builtin("e2").tensor)
    assert probe.converged


def test_condition_guard_drops_probes():
    # q = 3 nilpotent: cond(U) grows like lam^-3 and trips the 1e12 guard below 1e-3
    heis = builtin("heisenberg3").tensor
    n = matrix([[0, 0, 0], [2, 0, 0], [1, 2, 0]])
    probe = limit_probe(heis, n, LimitProbeConfig(lambdas=CRITERION_LAMBDAS), expected=heis.scale(0))
    assert probe.used == (True, True, False, False)
    assert probe.order is None


@pytest.mark.parametrize("lambdas", [(), (1e-2, 1e-1), (1e-1, -1e-2), (1e-1, 1e-1)])
def test_config_validation(lambdas):
    with pytest.raises(ValueError):
        LimitProbeConfig(lambdas=lambdas)


def test_negative_p_rejected():
    with pytest.raises(ValueError):
        LimitProbeConfig(p=-1)


def test_probe_count_from_environment(monkeypatch):
    monkeypatch.delenv(PROBE_COUNT_ENV, raising=False)
    assert len(default_lambdas()) == 6
    monkeypatch.setenv(PROBE_COUNT_ENV, "4")
    assert default_lambdas() == (1e-1, 1e-2, 1e-3, 1e-4)
    assert len(LimitProbeConfig().lambdas) == 4


def test_conjugate_product_matches_direct_formula():
    rng = np.random.default_rng(2)
    c = rng.normal(size=(3, 3, 3))
    u = rng.normal(size=(3, 3)) + 3 * np.eye(3)
    got = conjugate(c, "product", 2, u)
    u_inv = np.linalg.inv(u)
    expected = np.einsum("ai,bj,abk,lk->ijl", u, u, c, u_inv)
    assert np.allclose(got, expected)


def test_report_dict_is_json_ready(su2):
    probe = limit_probe(su2.tensor, diag(1, 0, 0), expected=builtin("e2").tensor)
    assert json.loads(json.dumps(probe.as_dict()))["converged"] is True
