import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcqft.errors import DimensionMismatch, NotStandard
from lcqft.modular import (
    AntiUnitary,
    StandardPair,
    check_commutant,
    check_flow_invariance,
    check_kms,
    check_standard,
    delta_power,
    left_factor,
    left_mult,
    left_subspace_distance,
    modular_flow,
    random_density_matrix,
    tomita_operators,
)


def test_check_standard_examples():
    n = 3
    rho = np.eye(n) / n
    pair = StandardPair.from_rho(rho)
    assert check_standard(n, pair.omega) == {"cyclic": True, "separating": True}
    e11 = np.zeros(n * n)
    e11[0] = 1.0
    assert check_standard(n, e11) == {"cyclic": False, "separating": False}
    degenerate = np.diag([0.9, 0.1, 0.0])
    sq = np.sqrt(degenerate)
    assert check_standard(n, sq.reshape(-1)) == {"cyclic": False, "separating": False}
    with pytest.raises(NotStandard):
        StandardPair.from_rho(degenerate)
    with pytest.raises(DimensionMismatch):
        check_standard(2, np.zeros(5))


def test_tracial_state_gives_trivial_modular_operator():
    pair = StandardPair.from_rho(np.eye(2) / 2)
    data = tomita_operators(pair)
    assert np.abs(data.delta - np.eye(4)).max() <= 1e-12
    # J is conjugate-swap: J(xi (x) eta) = conj(eta) (x) conj(xi)
    swap = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            swap[i * 2 + j, j * 2 + i] = 1.0
    assert np.abs(data.J.matrix - swap).max() <= 1e-12
    # sigma_t is then the identity flow
    a = np.array([[0.3, 1.2], [-0.7, 0.1]], dtype=complex)
    flowed = modular_flow(pair, data, a, 0.8)
    assert np.abs(flowed - left_mult(a)).max() <= 1e-12


def test_modular_spectrum_p_ratio():
    # brute-force eigensolve of the generically assembled Delta
    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    spec = np.sort(np.linalg.eigvalsh(data.delta))
    expected = np.sort([1.0, 1.0, 0.3 / 0.7, 0.7 / 0.3])
    assert np.abs(spec - expected).max() <= 1e-12


def test_polar_identity_on_basis():
    # Delta^{1/2} = J S on every basis vector a Omega, with S the defining
    # conjugation S(a Omega) = a* Omega
    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    sq = pair.omega.reshape(2, 2)
    half = delta_power(data, 0.5)
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[i, j] = 1.0
            v = (E @ sq).reshape(-1)
            s_v = (E.conj().T @ sq).reshape(-1)
            assert np.abs(half @ v - data.J.apply(s_v)).max() <= 1e-12


def test_modular_identities_random(rng):
    for n in (2, 3, 4):
        for _ in range(10):
            pair = StandardPair.from_rho(random_density_matrix(n, rng))
            data = tomita_operators(pair)
            U = data.J.matrix
            assert np.abs(U @ np.conj(U) - np.eye(n * n)).max() <= 1e-13
            assert np.abs(data.J.apply(pair.omega) - pair.omega).max() <= 1e-13
            assert np.abs(data.delta @ pair.omega - pair.omega).max() <= 1e-13
            assert np.abs(data.J.sandwich(data.delta)
                          - np.linalg.inv(data.delta)).max() <= 1e-10


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_spectrum_closed_under_inversion(n, seed):
    rng = np.random.default_rng(seed)
    pair = StandardPair.from_rho(random_density_matrix(n, rng))
    data = tomita_operators(pair)
    spec = np.sort(np.linalg.eigvalsh(data.delta))
    inverted = np.sort(1.0 / spec)
    assert np.abs(spec - inverted).max() <= 1e-9 * spec.max()


def test_commutant_examples(rng):
    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    # a = identity commutes exactly
    JI = data.J.sandwich(left_mult(np.eye(2, dtype=complex)))
    B = left_mult(np.array([[0.2, 1.0], [0.5, -0.3]], dtype=complex))
    assert np.abs(JI @ B - B @ JI).max() == 0.0
    out = check_commutant(pair, data, 10, rng, tolerance=1e-13)
    assert out["pass"]
    pair4 = StandardPair.from_rho(random_density_matrix(4, rng))
    data4 = tomita_operators(pair4)
    out4 = check_commutant(pair4, data4, 10, rng, tolerance=1e-12)
    assert out4["pass"]


def test_flow_invariance_and_closed_form(rng):
    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    a = np.zeros((2, 2), dtype=complex)
    a[0, 1] = 1.0
    assert np.abs(modular_flow(pair, data, a, 0.0) - left_mult(a)).max() <= 1e-13
    for t in (0.5, 1.0, 2.3):
        flowed = modular_flow(pair, data, a, t)
        assert left_subspace_distance(flowed, 2) <= 1e-12
        b = left_factor(flowed, 2)
        assert abs(b[0, 1] - (0.3 / 0.7) ** (1j * t)) <= 1e-12
    out = check_flow_invariance(pair, data, 5, rng)
    assert out["pass"]


def test_kms_boundary_condition(rng):
    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    out = check_kms(pair, data, 5, rng, ts=(0.0, 0.5, 1.0), tolerance=1e-12)
    assert out["pass"]


def test_kms_eigenbasis_derivation(rng):
    # pin the continuation side: omega(a sigma_{t-i}(b)) = omega(sigma_t(b) a)
    # via the explicit eigenbasis formula  sum a_kl b_lk p_l (p_l/p_k)^{it}
    p = np.array([0.2, 0.35, 0.45])
    pair = StandardPair.from_rho(np.diag(p))
    data = tomita_operators(pair)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    t = 0.6
    expected = sum(a[k, l] * b[l, k] * p[l] * (p[l] / p[k]) ** (1j * t)
                   for k in range(3) for l in range(3))
    Dz = delta_power(data, 1j * t + 1.0)
    Dzi = delta_power(data, -1j * t - 1.0)
    lhs = np.vdot(pair.omega,
                  left_mult(a) @ Dz @ left_mult(b) @ Dzi @ pair.omega)
    Dt = delta_power(data, 1j * t)
    Dti = delta_power(data, -1j * t)
    rhs = np.vdot(pair.omega,
                  Dt @ left_mult(b) @ Dti @ left_mult(a) @ pair.omega)
    assert lhs == pytest.approx(expected, abs=1e-12)
    assert rhs == pytest.approx(expected, abs=1e-12)


def test_antiunitary_composition():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4))
                        + 1j * rng.standard_normal((4, 4)))
    J = AntiUnitary(q)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    # antilinearity and isometry
    assert np.abs(J.apply(2j * v) - np.conj(2j) * J.apply(v)).max() <= 1e-13
    assert np.linalg.norm(J.apply(v)) == pytest.approx(np.linalg.norm(v), abs=1e-12)
