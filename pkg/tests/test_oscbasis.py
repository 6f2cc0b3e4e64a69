import math

import numpy as np
import pytest

from anharm2d.cases import case_preset
from anharm2d.eig import eig_complex, eig_selfadjoint
from anharm2d.exactnum import HALF_SQRT2
from anharm2d.maps import OrthogonalMap2
from anharm2d.oscbasis import (
    BasisSpec,
    DegreeTooHigh,
    OperatorMatrix,
    build_hamiltonian,
    build_hamiltonian_1d,
    kinetic_matrix_1d,
    optimal_omega,
    position_matrix_1d,
    read_matrix,
    write_matrix,
)
from anharm2d.poly2d import PolynomialPotential, apply_linear_map, make_quartic
from anharm2d.exactnum import SqrtTwoRational


def hermite_quad_element(m, n, k, omega, points=120):
    """Oracle: <m|x^k|n> by Gauss-Hermite quadrature of the wavefunctions."""
    nodes, weights = np.polynomial.hermite.hermgauss(points)
    x = nodes / math.sqrt(omega)

    def psi(q, xs):
        coeff = np.zeros(q + 1)
        coeff[q] = 1.0
        h = np.polynomial.hermite.hermval(math.sqrt(omega) * xs, coeff)
        norm = (omega / math.pi) ** 0.25 / math.sqrt(2.0**q * math.factorial(q))
        return norm * h

    # weights absorb exp(-omega x^2); psi_m psi_n contains that Gaussian
    vals = psi(m, x) * psi(n, x) * x**k
    return float(np.sum(weights * vals) / math.sqrt(omega))


def test_position_matrix_first_element():
    x = position_matrix_1d(2, 1.0)
    assert x[0, 1] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)
    x4 = position_matrix_1d(2, 4.0)
    assert x4[0, 1] == pytest.approx(math.sqrt(1.0 / 8.0), abs=1e-15)


def test_ground_state_x2_pin():
    x = position_matrix_1d(1, 1.0, pad=2)
    x2 = np.linalg.matrix_power(x, 2)[:1, :1]
    assert x2[0, 0] == pytest.approx(0.5, abs=1e-15)


def test_x4_ground_matches_quadrature_oracle():
    x = position_matrix_1d(6, 1.0, pad=4)
    x4 = np.linalg.matrix_power(x, 4)[:6, :6]
    assert x4[0, 0] == pytest.approx(0.75, abs=1e-13)
    assert x4[0, 0] == pytest.approx(hermite_quad_element(0, 0, 4, 1.0), abs=1e-12)
    assert x4[1, 3] == pytest.approx(hermite_quad_element(1, 3, 4, 1.0), abs=1e-12)
    assert x4[0, 4] == pytest.approx(hermite_quad_element(0, 4, 4, 1.0), abs=1e-12)


def test_padding_gives_exact_quartic_elements():
    """X^4 truncated from the padded product equals the closed forms."""
    n_max, omega = 10, 1.7
    x = position_matrix_1d(n_max, omega, pad=4)
    x4 = np.linalg.matrix_power(x, 4)[:n_max, :n_max]
    for n in range(n_max):
        diag = 3.0 * (2 * n * n + 2 * n + 1) / (4 * omega * omega)
        assert x4[n, n] == pytest.approx(diag, rel=1e-13)
        if n + 2 < n_max:
            upper2 = (2 * n + 3) * math.sqrt((n + 1) * (n + 2)) / (2 * omega * omega)
            assert x4[n, n + 2] == pytest.approx(upper2, rel=1e-13)
        if n + 4 < n_max:
            upper4 = math.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)) / (4 * omega * omega)
            assert x4[n, n + 4] == pytest.approx(upper4, rel=1e-13)
    # everything else vanishes
    for n in range(n_max):
        for m in range(n_max):
            if abs(m - n) not in (0, 2, 4):
                assert x4[n, m] == 0.0


def test_kinetic_matrix_elements():
    p2 = kinetic_matrix_1d(4, 1.0)
    assert p2[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert p2[0, 2] == pytest.approx(-1.0 / math.sqrt(2.0), abs=1e-15)
    assert kinetic_matrix_1d(4, 2.0)[0, 0] == pytest.approx(1.0, abs=1e-15)


def test_kinetic_against_operator_identity():
    """p^2 must equal diag(omega(2n+1)) - omega^2 x^2 elementwise."""
    n_max, omega = 12, 2.3
    p2 = kinetic_matrix_1d(n_max, omega)
    x2 = np.linalg.matrix_power(position_matrix_1d(n_max, omega, pad=2), 2)[:n_max, :n_max]
    h0 = np.diag(omega * (2 * np.arange(n_max) + 1.0))
    assert np.abs(p2 - (h0 - omega**2 * x2)).max() < 1e-13 * omega * n_max


def test_unperturbed_hamiltonian_is_diagonal():
    ham = build_hamiltonian(make_quartic(0, 0, 0, 0, 0, 1), BasisSpec(5, 5))
    expected = np.diag(
        [2.0 * (nx + ny) + 2.0 for nx in range(5) for ny in range(5)]
    )
    assert np.abs(ham.entries - expected).max() < 1e-14
    assert ham.hermitian_flag


def test_hermiticity_at_theta_zero():
    ham = build_hamiltonian(case_preset(1, 1).potential, BasisSpec(8, 8))
    a = ham.entries
    assert ham.hermitian_flag
    assert np.abs(a - a.conj().T).max() <= 1e-12 * np.abs(a).max()


def test_complex_scaling_phases():
    theta = 0.05 * math.pi
    poly = make_quartic(0, 0, 0, 0, 0, 1)  # x^2 + y^2 only
    ham = build_hamiltonian(poly, BasisSpec(4, 4, theta=theta))
    kin = np.kron(kinetic_matrix_1d(4, 1.0), np.eye(4)) + np.kron(np.eye(4), kinetic_matrix_1d(4, 1.0))
    x2 = np.linalg.matrix_power(position_matrix_1d(4, 1.0, pad=4), 2)[:4, :4]
    pot = np.kron(x2, np.eye(4)) + np.kron(np.eye(4), x2)
    expected = np.exp(-2j * theta) * kin + np.exp(2j * theta) * pot
    assert np.abs(ham.entries - expected).max() < 1e-14
    assert not ham.hermitian_flag


def test_degree_above_padding_rejected():
    poly = PolynomialPotential({(5, 0): SqrtTwoRational(1)})
    with pytest.raises(DegreeTooHigh):
        build_hamiltonian(poly, BasisSpec(4, 4))
    with pytest.raises(DegreeTooHigh):
        build_hamiltonian_1d({6: 1.0}, 4, 1.0)


def test_case1_two_dimensional_benchmark():
    """30 functions per mode reproduce the separated Case-1 ground energy."""
    u1 = OrthogonalMap2(HALF_SQRT2, -HALF_SQRT2, -HALF_SQRT2, -HALF_SQRT2)
    separated = apply_linear_map(case_preset(1, 1).potential, u1)
    basis = BasisSpec(30, 30, omega=optimal_omega(4.0))
    e0 = eig_selfadjoint(build_hamiltonian(separated, basis)).eigenvalues[0]
    assert e0 == pytest.approx(2.903136945459, abs=1e-9)
    e0_raw = eig_selfadjoint(build_hamiltonian(case_preset(1, 1).potential, basis)).eigenvalues[0]
    assert e0_raw == pytest.approx(2.903136945459, abs=1e-10)


def test_optimal_omega_examples():
    assert optimal_omega(0.0) == 1.0

    def bisect_root(g):
        lo, hi = 1.0, 10.0 + (3 * g) ** (1 / 3)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid**3 - mid - 3 * g > 0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    for g in (4.0, 1.0, 2e6):
        w = optimal_omega(g)
        assert w == pytest.approx(bisect_root(g), rel=1e-12)
        assert w**3 - w - 3 * g == pytest.approx(0.0, abs=1e-7 * max(1.0, 3 * g))
    # dominant balance at strong coupling
    assert optimal_omega(2e6) == pytest.approx((6e6) ** (1 / 3), rel=1e-2)


def test_omega_independence_of_spectrum():
    e_plain = eig_selfadjoint(build_hamiltonian_1d({2: 1.0, 4: 1.0}, 60, 1.0)).eigenvalues[0]
    e_opt = eig_selfadjoint(
        build_hamiltonian_1d({2: 1.0, 4: 1.0}, 60, optimal_omega(1.0))
    ).eigenvalues[0]
    assert abs(e_plain - e_opt) < 1e-10


def test_variational_monotonicity_in_basis_size():
    poly = case_preset(1, "0.1").potential
    lowest = [
        eig_selfadjoint(build_hamiltonian(poly, BasisSpec(n, n))).eigenvalues[0]
        for n in (6, 8, 10, 12)
    ]
    assert all(b <= a + 1e-13 for a, b in zip(lowest, lowest[1:]))


def test_bound_state_theta_analyticity():
    """Complex scaling must not move a bound state: Case 2 at a small angle."""
    poly = case_preset(2, 1).potential
    omega = 2.0  # optimal for the separated per-mode coupling
    e0 = eig_selfadjoint(build_hamiltonian(poly, BasisSpec(25, 25, omega=omega))).eigenvalues[0]
    rotated = eig_complex(
        build_hamiltonian(poly, BasisSpec(25, 25, omega=omega, theta=0.02 * math.pi))
    ).eigenvalues
    nearest = rotated[np.argmin(np.abs(rotated - e0))]
    assert abs(nearest.imag) < 1e-6
    assert abs(nearest.real - e0) < 1e-6


def test_basis_spec_validation():
    with pytest.raises(ValueError):
        BasisSpec(0, 5)
    with pytest.raises(ValueError):
        BasisSpec(5, 5, omega=0.0)
    with pytest.raises(ValueError):
        BasisSpec(5, 5, theta=math.pi / 4)
    assert BasisSpec(6, 7).dim == 42


def test_operator_matrix_flag_validation():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(ValueError):
        OperatorMatrix(2, bad, hermitian_flag=True)


def test_matrix_dump_round_trip(tmp_path):
    ham = build_hamiltonian(case_preset(3, "0.1").potential, BasisSpec(4, 4, theta=0.05))
    path = tmp_path / "ham.oscm"
    write_matrix(path, ham)
    raw = path.read_bytes()
    assert raw[:4] == b"OSCM"
    assert len(raw) == 16 + 16 * ham.dim * ham.dim
    again = read_matrix(path)
    assert again.dim == ham.dim
    assert again.hermitian_flag == ham.hermitian_flag
    assert np.array_equal(again.entries, ham.entries)
    with pytest.raises(ValueError):
        bad = tmp_path / "bad.oscm"
        bad.write_bytes(b"NOPE" + raw[4:])
        read_matrix(bad)
