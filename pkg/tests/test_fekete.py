"""Ascent to weighted Fekete configurations and uniqueness probes."""

import numpy as np
import pytest

import xfekete as xf

from conftest import spec_of, zeros_of


def v_of(family, m, alpha, n, beta=None):
    return xf.v_weight(spec_of(family, m, alpha, n, beta),
                       zeros_of(family, m, alpha, n, beta))


def test_hand_example_single_node():
    # maximize 2 log u - u: maximizer at u = 2
    v = v_of("laguerre1", 0, 1.0, 1)
    nodes, trace = xf.maximize_log_T(v, xf.default_domain(v, 1), 1,
                                     init=np.array([5.0]))
    assert nodes[0] == pytest.approx(2.0, abs=1e-9)
    assert trace[-1]["max_gradient"] < 1e-9


def test_default_domains():
    v = v_of("laguerre1", 0, 1.0, 1)
    assert xf.default_domain(v, 1) == (0.0, 6.0)
    wj = xf.WeightSpec(spec_of("jacobi", 1, 2.0, 3, 1.0), "hat")
    assert xf.default_domain(wj, 3) == (-0.999, 0.999)


def test_stationary_start_does_not_move():
    zs = zeros_of("laguerre1", 1, 2.0, 5)
    v = v_of("laguerre1", 1, 2.0, 5)
    nodes, trace = xf.maximize_log_T(v, xf.default_domain(v, 5), 5,
                                     init=zs.regular)
    assert len(trace) <= 2
    assert np.max(np.abs(nodes - zs.regular)) < 1e-9


def test_perturbed_start_recovers_regular_zeros():
    zs = zeros_of("laguerre1", 1, 2.0, 5)
    v = v_of("laguerre1", 1, 2.0, 5)
    bump = 1 + 0.1 * np.array([1, -1, 1, -1, 1])
    nodes, _ = xf.maximize_log_T(v, xf.default_domain(v, 5), 5,
                                 init=zs.regular * bump)
    assert np.max(np.abs(nodes - zs.regular)) < 1e-6


def test_ascent_along_accepted_steps():
    v = v_of("laguerre1", 1, 2.0, 5)
    zs = zeros_of("laguerre1", 1, 2.0, 5)
    _, trace = xf.maximize_log_T(v, xf.default_domain(v, 5), 5,
                                 init=zs.regular * 1.3)
    f = [r["logT"] for r in trace]
    assert all(b >= a - 1e-10 for a, b in zip(f, f[1:]))


def test_maximizer_interior():
    v = v_of("laguerre1", 1, 2.0, 4)
    lo, hi = xf.default_domain(v, 4)
    nodes, _ = xf.maximize_log_T(v, (lo, hi), 4)
    assert np.all(nodes > lo) and np.all(nodes < hi)


def test_invalid_starts():
    v = v_of("laguerre1", 0, 1.0, 1)
    with pytest.raises(xf.DomainEscape):
        xf.maximize_log_T(v, (0.0, 10.0), 1, init=np.array([20.0]))
    with pytest.raises(xf.DomainEscape):
        xf.maximize_log_T(v, (0.0, 10.0), 2, init=np.array([3.0, 3.0]))
    with pytest.raises(xf.ValidationError):
        xf.maximize_log_T(v, (0.0, 10.0), 2, init=np.array([3.0]))


def test_nonconvergence_carries_trace():
    v = v_of("laguerre1", 0, 1.0, 1)
    with pytest.raises(xf.NonConvergence) as exc:
        xf.maximize_log_T(v, (0.0, 10.0), 1, init=np.array([5.0]), itmax=1)
    assert len(exc.value.trace) == 1
    assert "max_gradient" in exc.value.trace[0]


# ---------------------------------------------------------------- probes

def test_probe_single_node():
    v = v_of("laguerre1", 0, 1.0, 1)
    rep = xf.uniqueness_probe(v, xf.default_domain(v, 1), 1, trials=10)
    assert len(rep["clusters"]) == 1
    assert rep["clusters"][0]["nodes"][0] == pytest.approx(2.0, abs=1e-6)


def test_probe_regular_zeros_unique():
    zs = zeros_of("laguerre1", 1, 1.5, 4)
    v = v_of("laguerre1", 1, 1.5, 4)
    rep = xf.uniqueness_probe(v, xf.default_domain(v, 4), 4, trials=20, seed=0)
    assert rep["converged"] == 20 and rep["failed"] == 0
    assert len(rep["clusters"]) == 1
    assert np.max(np.abs(rep["clusters"][0]["nodes"] - zs.regular)) < 1e-6


def test_probe_jacobi_large_n():
    # alpha > m-1 and beta > 0, n well past the onset of concavity
    zs = zeros_of("jacobi", 2, 2.5, 30, 1.0)
    v = v_of("jacobi", 2, 2.5, 30, 1.0)
    rep = xf.uniqueness_probe(v, xf.default_domain(v, 30), 30, trials=20, seed=0)
    assert len(rep["clusters"]) == 1
    assert np.max(np.abs(rep["clusters"][0]["nodes"] - zs.regular)) < 1e-6


def test_probe_deterministic_under_seed():
    v = v_of("laguerre1", 1, 1.5, 3)
    a = xf.uniqueness_probe(v, xf.default_domain(v, 3), 3, trials=5, seed=42)
    b = xf.uniqueness_probe(v, xf.default_domain(v, 3), 3, trials=5, seed=42)
    np.testing.assert_array_equal(a["clusters"][0]["nodes"],
                                  b["clusters"][0]["nodes"])


def test_small_alpha_positive_curvature_witness():
    """For 0 < alpha < 1 some configuration has a positive Hessian
    diagonal entry; the randomized search must exhibit one."""
    hit = xf.search_positive_h11(trials=200, seed=0)
    assert hit is not None
    assert 0 < hit["alpha"] < 1
    assert hit["h11"] > 0
    v = xf.v_weight(hit["spec"])
    _, H = xf.gradient_and_hessian(np.asarray(hit["nodes"]), v)
    assert H[0, 0] == pytest.approx(hit["h11"], rel=1e-10)
