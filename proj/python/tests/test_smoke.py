import numpy as np
import pytest

import nonclass as nc


def test_bell_is_maximal():
    rho = nc.bell_state()
    assert nc.d_closed_2xN(rho, 2) == pytest.approx(1.0, abs=1e-12)
    assert nc.horodecki_m(rho) == pytest.approx(2.0)


def test_werner_closed_form_and_optimizer():
    rho = nc.werner_state(2, 2.0 / 3.0)
    assert nc.werner_d(2, 2.0 / 3.0) == pytest.approx(1.0 / 9.0, rel=1e-12)
    r = nc.minimize_d(rho, 2, 2, restarts=8, closed_form_dispatch=False)
    assert r["method"] == "optimizer"
    assert r["value"] == pytest.approx(1.0 / 9.0, abs=1e-7)
    assert nc.d_given_u(rho, 2, 2, r["unitary"]) == pytest.approx(r["value"], abs=1e-9)


def test_d_given_u_matches_numpy():
    rho = nc.random_density(2, 3, 4, 7)
    u = nc.random_unitary(2, 8)
    full = np.kron(u, np.eye(3))
    expected = np.linalg.norm(rho - full @ rho @ full.conj().T) / np.sqrt(2.0)
    assert nc.d_given_u(rho, 2, 3, u) == pytest.approx(expected, rel=1e-12)


def test_bounds_bracket_the_closed_form():
    rho = nc.random_density(2, 2, 3, 4)
    lo, hi = nc.bounds_2xN(rho, 2)
    d = nc.d_closed_2xN(rho, 2)
    assert lo <= d + 1e-12 <= hi + 2e-12


def test_fano_labels():
    f = nc.fano_decompose(nc.bell_state(), 2, 2)
    assert f["labels_a"] == ["U_1_2", "V_1_2", "W_1"]
    assert np.allclose(f["t"], np.diag([1.0, -1.0, 1.0]))


def test_partial_trace():
    rho = nc.random_density(2, 3, 6, 1)
    a = nc.partial_trace(rho, 2, 3, "A")
    assert a.shape == (2, 2)
    assert np.trace(a).real == pytest.approx(1.0)


def test_invalid_state_raises():
    bad = np.diag([0.6, 0.5, 0.0, -0.1]).astype(complex)
    with pytest.raises(nc.InvalidState):
        nc.validate(bad, 2, 2)
    with pytest.raises(ValueError):
        nc.d_closed_2xN(np.eye(4, dtype=complex) / 4, 3)


def test_classify_and_discord():
    report = nc.classify(nc.werner_state(2, 0.75), 2, 2)
    assert report["D"] == pytest.approx(0.0, abs=1e-9)
    assert report["classical_basis_found"]
    assert nc.discord(nc.bell_state(), 2) == pytest.approx(1.0, abs=1e-9)
