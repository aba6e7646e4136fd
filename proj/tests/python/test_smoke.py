import numpy as np
import pytest

import measurelab as ml

SZ = np.diag([0.5, -0.5]).astype(complex)
SX = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
SY = np.array([[0, -0.5j], [0.5j, 0]])


def test_tensor_matches_numpy_kron():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    assert np.allclose(ml.tensor(a, b), np.kron(a, b), atol=1e-15)


def test_commutator_and_trace():
    assert np.allclose(ml.commutator(SZ, SX), 1j * SY, atol=1e-15)
    assert abs(ml.trace(ml.tensor(SZ, SZ))) < 1e-15
    assert np.allclose(ml.adjoint(SY), SY)
    with pytest.raises(ml.DimensionError):
        ml.trace(np.zeros((2, 3), dtype=complex))


def test_eig_hermitian_reconstructs():
    pointer = np.diag([5.0, 1.0, -1.0]).astype(complex)
    family = ml.eig_hermitian(pointer)
    assert [v for v, _ in family] == [-1.0, 1.0, 5.0]
    assert np.allclose(sum(v * p for v, p in family), pointer)


def test_complete_to_unitary():
    e = np.eye(3, dtype=complex)
    u = ml.complete_to_unitary([(e[0], e[1])])
    assert np.allclose(u.conj().T @ u, np.eye(3), atol=1e-14)
    assert np.allclose(u @ e[0], e[1])


def test_born():
    r = 1 / np.sqrt(2)
    psi = np.array([r, r], dtype=complex)
    assert ml.born_pure(psi, SZ, 0.5, 0.5) == pytest.approx(0.5, abs=1e-12)
    w = np.diag([0.9, 0.1]).astype(complex)
    assert ml.born_mixed(w, SZ, 0.5, 0.5) == pytest.approx(0.9, abs=1e-12)


def test_run_scenario_reality():
    report = ml.run_scenario(
        {"scenario": "reality", "parameters": {"alpha": [0.6, 0], "beta": [0.8, 0]}}
    )
    assert report["schema_version"] == ml.SCHEMA_VERSION == "1"
    assert report["contradiction_flag"] is True


def test_run_batch_and_rejection():
    batch = ml.run_scenario(
        [{"scenario": "nosignal"}, {"scenario": "control", "parameters": {"trials": 3}}]
    )
    assert [s["problem"] for s in batch["summary"]] == ["III", "III"]
    with pytest.raises(ml.ConfigError, match=r"\[1\]\.parameters\.weights"):
        ml.run_scenario([{"scenario": "nosignal"}, {"scenario": "expectation", "parameters": {}}])
