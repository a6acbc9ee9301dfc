import math

import numpy as np
import pytest

import renyi_sharp as rs


def entangled_pair(eps):
    phi = np.zeros(4, dtype=complex)
    phi[0] = math.sqrt(eps)
    phi[3] = math.sqrt(1 - eps)
    rho = np.outer(phi, phi.conj())
    sigma = np.diag([eps, 1 - eps, eps, 1 - eps]).astype(complex)
    return rho, sigma


def test_identical_states_have_zero_divergence():
    rho = np.diag([0.3, 0.7]).astype(complex)
    r = rs.d_sharp_state(rho, rho, 1.5)
    assert abs(r["value"]) < 1e-6
    assert r["witness_ok"]
    assert r["solver"]["status"] == "Optimal"


def test_commuting_states_match_classical():
    p = np.array([0.2, 0.5, 0.3])
    q = np.array([0.4, 0.4, 0.2])
    r = rs.d_sharp_state(np.diag(p).astype(complex), np.diag(q).astype(complex), 2.0)
    assert r["value"] == pytest.approx(rs.d_classical(p, q, 2.0), abs=1e-6)


def test_entangled_family_value_and_ordering():
    rho, sigma = entangled_pair(1e-3)
    r = rs.d_sharp_state(rho, sigma, 2.0)
    assert r["value"] == pytest.approx(0.362156516791363, abs=5e-3)
    assert rs.d_sandwiched(rho, sigma, 2.0) <= r["value"] <= rs.d_geometric(rho, sigma, 2.0)


def test_support_violation_is_infinite():
    rho = np.diag([0.5, 0.5]).astype(complex)
    sigma = np.diag([1.0, 0.0]).astype(complex)
    assert math.isinf(rs.d_sharp_state(rho, sigma, 2.0)["value"])


def test_mean_of_commuting_operators():
    a = np.diag([1.0, 4.0]).astype(complex)
    b = np.diag([9.0, 1.0]).astype(complex)
    np.testing.assert_allclose(rs.mean(a, b, 0.5), np.diag([3.0, 2.0]), atol=1e-12)


def test_channels():
    jn = rs.amplitude_damping_choi(0.3)
    assert rs.diamond_norm(jn, 2, 2) == pytest.approx(1.0, abs=1e-6)
    r = rs.d_sharp_channel(jn, jn, 2, 2, 2.0)
    assert abs(r["value"]) < 1e-6
    h = rs.hierarchy_bound(jn, rs.depolarizing_choi(0.5), 2, 2, 2.0, 1)
    assert h["lower"] < h["upper"]


def test_capacity_curve_midpoint():
    rows = rs.capacity_curve([0.5], [1.9, 2.0])
    assert rows[0]["ok"]
    assert rows[0]["value"] == pytest.approx(0.548461571846658, abs=1e-2)


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        rs.d_sharp_state(np.eye(2, dtype=complex), np.eye(3, dtype=complex), 2.0)
    with pytest.raises(ValueError):
        rs.d_sharp_state(np.eye(2, dtype=complex), np.eye(2, dtype=complex), 0.5)
