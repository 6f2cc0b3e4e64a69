"""Resonances of unbounded oscillators via the complex-rotation angle sweep.

Each rotation angle theta gives a non-Hermitian matrix whose spectrum rotates
with theta except near resonances, where one eigenvalue stalls. Eigenvalues
are linked across neighbouring angles by greedy nearest-neighbour matching,
and the resonance is the theta-stationary point of the stalled trajectory.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .eig import eig_complex
from .oscbasis import BasisSpec, build_hamiltonian
from .poly2d import PolynomialPotential


class NoStationaryPoint(RuntimeError):
    """No trajectory met the stability threshold inside the theta window."""


@dataclass(frozen=True)
class ThetaScan:
    """Spectra over a theta sweep plus the linked trajectories.

    trajectories[r, k] follows one eigenvalue across thetas[k]; links whose
    nearest-neighbour choice collided with another trajectory are flagged in
    ambiguous[r, k] rather than silently trusted.
    """

    thetas: np.ndarray = field(repr=False)
    spectra: list = field(repr=False)
    trajectories: np.ndarray = field(repr=False)
    ambiguous: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Resonance:
    lam: float | None
    energy: complex
    theta_star: float
    stability: float
    basis_used: BasisSpec
    converged: bool

    def __post_init__(self):
        if self.energy.imag > 0:
            raise ValueError("resonance must lie in the lower half plane")


def theta_trajectory(
    poly: PolynomialPotential, basis: BasisSpec, thetas
) -> ThetaScan:
    """Full rotated spectra for each theta, linked into trajectories."""
    thetas = np.asarray(list(thetas), dtype=float)
    if np.any(np.diff(thetas) <= 0):
        raise ValueError("thetas must be strictly ascending")
    if np.any(thetas >= math.pi / 4) or np.any(thetas < 0):
        raise ValueError("thetas must lie in [0, pi/4)")
    spectra = []
    for theta in thetas:
        spec_basis = BasisSpec(basis.n_max_x, basis.n_max_y, basis.omega, float(theta))
        result = eig_complex(build_hamiltonian(poly, spec_basis))
        spectra.append(np.sort_complex(result.eigenvalues))
    trajectories, ambiguous = _link(spectra)
    return ThetaScan(
        thetas=thetas, spectra=spectra, trajectories=trajectories, ambiguous=ambiguous
    )


def _link(spectra: list) -> tuple[np.ndarray, np.ndarray]:
    """Greedy minimal-distance matching between consecutive spectra."""
    dim, steps = len(spectra[0]), len(spectra)
    traj = np.empty((dim, steps), dtype=complex)
    ambig = np.zeros((dim, steps), dtype=bool)
    traj[:, 0] = spectra[0]
    current = np.arange(dim)  # trajectory r currently sits at index current[r]
    for k in range(1, steps):
        prev, nxt = spectra[k - 1], spectra[k]
        dist = np.abs(prev[current][:, None] - nxt[None, :])
        order = np.argsort(dist, axis=None, kind="stable")
        taken_r = np.zeros(dim, dtype=bool)
        taken_c = np.zeros(dim, dtype=bool)
        new_idx = np.empty(dim, dtype=int)
        # first-choice targets; collisions mark the losing links ambiguous
        first_choice = np.argmin(dist, axis=1)
        assigned = 0
        for flat in order:
            r, c = divmod(int(flat), dim)
            if taken_r[r] or taken_c[c]:
                continue
            new_idx[r] = c
            if c != first_choice[r]:
                ambig[r, k] = True
            taken_r[r] = True
            taken_c[c] = True
            assigned += 1
            if assigned == dim:
                break
        current = new_idx
        traj[:, k] = nxt[current]
    return traj, ambig


def find_lowest_resonance(
    poly: PolynomialPotential,
    basis: BasisSpec,
    theta_window: tuple[float, float] = (0.03 * math.pi, 0.10 * math.pi),
    n_points: int = 15,
    lam: float | None = None,
    stability_tol: float = 5e-2,
    drift_tol: float = 1e-4,
    check_convergence: bool = True,
) -> Resonance:
    """Theta-stationary complex eigenvalue with the smallest real part.

    Sweeps the window, scores every trajectory by the centred difference
    |E(theta+h) - E(theta-h)| / 2h, keeps those that are stable (score below
    `stability_tol`) and decay (Im E < 0), and returns the one with the
    smallest Re E. Convergence is certified by re-diagonalizing at the
    stationary angle with 5 more basis functions per mode.
    """
    lo, hi = theta_window
    if not (0.0 < lo < hi < math.pi / 4):
        raise ValueError("theta window must lie inside (0, pi/4)")
    if n_points < 3:
        raise ValueError("need at least 3 sweep points for a centred difference")
    thetas = np.linspace(lo, hi, n_points)
    scan = theta_trajectory(poly, basis, thetas)

    best = None  # (re, energy, theta_idx, stability)
    two_h = thetas[2] - thetas[0]
    for r in range(scan.trajectories.shape[0]):
        path = scan.trajectories[r]
        scores = np.abs(path[2:] - path[:-2]) / two_h
        k = int(np.argmin(scores)) + 1
        stability = float(scores[k - 1])
        energy = path[k]
        if stability > stability_tol or energy.imag >= 0:
            continue
        if best is None or energy.real < best[1].real:
            best = (r, energy, k, stability)
    if best is None:
        raise NoStationaryPoint(
            "no theta-stationary decaying trajectory in the window; "
            "adjust lambda or the window"
        )
    r, energy, k, stability = best
    theta_star = float(thetas[k])

    converged = False
    if check_convergence:
        bigger = BasisSpec(basis.n_max_x + 5, basis.n_max_y + 5, basis.omega, theta_star)
        result = eig_complex(build_hamiltonian(poly, bigger))
        drift = float(np.min(np.abs(result.eigenvalues - energy)))
        converged = stability < stability_tol and drift < drift_tol

    return Resonance(
        lam=lam,
        energy=complex(energy),
        theta_star=theta_star,
        stability=stability,
        basis_used=BasisSpec(basis.n_max_x, basis.n_max_y, basis.omega, theta_star),
        converged=converged,
    )


def table_csv(resonances: list[Resonance]) -> str:
    """CSV with columns lambda, re_e, im_e, theta_star, nmax."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lambda", "re_e", "im_e", "theta_star", "nmax"])
    for res in resonances:
        writer.writerow(
            [
                _fmt(res.lam),
                _fmt(res.energy.real),
                _fmt(res.energy.imag),
                _fmt(res.theta_star),
                res.basis_used.n_max_x,
            ]
        )
    return buf.getvalue()


def _fmt(value) -> str:
    return "" if value is None else format(value, ".10g")
