"""High-precision 1D eigenvalues from Hankel determinants of the regularized
logarithmic derivative.

For an even potential V(x) = sum_m v_m x^{2m} and parity s (0 even / 1 odd),
the function f = s/x - psi'/psi expands as f(x) = sum_j f_j x^{2j+1} and the
Riccati equation gives the closed recursion

    (2m + 2s + 1) f_m = sum_{j<m} f_j f_{m-1-j} - v_m + E [m = 0].

Eigenvalues are the E-roots of the Hankel determinants
H_D^d(E) = det[f_{i+j+d+1}(E)], which stabilize rapidly as D grows; roots are
polished by Newton in arbitrary precision, each dimension seeding the next.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp


class InsufficientCoefficients(ValueError):
    """The series is too short for the requested determinant block."""


class NewtonDivergence(RuntimeError):
    """Newton iteration on a Hankel determinant failed to settle on a root."""


class NonMonotoneTrail(UserWarning):
    """Root-vs-dimension trail stopped contracting before D_max."""


@dataclass(frozen=True)
class RiccatiSeries:
    """Coefficients f_j(E) of the regularized logarithmic derivative."""

    s: int
    v: tuple
    coeffs: tuple = field(repr=False)
    e_value: object = None


@dataclass(frozen=True)
class HankelSpec:
    """Determinant block: dimension D, displacement d, working precision."""

    D: int
    d: int = 0
    precision_digits: int = 80

    def __post_init__(self):
        if self.D < 1 or self.d < 0:
            raise ValueError("need D >= 1 and d >= 0")

    @property
    def max_index(self) -> int:
        return 2 * self.D - 1 + self.d


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)
    if isinstance(value, (int, float, str)):
        return mp.mpf(value)
    return value  # already an mpf


def riccati_coeffs(v, s: int, e_value, m_max: int) -> RiccatiSeries:
    """f_0..f_{m_max} at energy e_value, at the active mpmath precision.

    `v` lists the even-power potential coefficients [v0, v1, v2, ...]
    (v1 = 1, v2 = g for the quartic factors studied here).
    """
    if s not in (0, 1):
        raise ValueError("parity s must be 0 or 1")
    vs = [_to_mpf(c) for c in v]
    energy = _to_mpf(e_value)
    coeffs = []
    for m in range(m_max + 1):
        total = mp.fsum(coeffs[j] * coeffs[m - 1 - j] for j in range(m))
        total -= vs[m] if m < len(vs) else mp.mpf(0)
        if m == 0:
            total += energy
        coeffs.append(total / (2 * m + 2 * s + 1))
    return RiccatiSeries(s=s, v=tuple(vs), coeffs=tuple(coeffs), e_value=energy)


def hankel_det(series: RiccatiSeries, spec: HankelSpec):
    """det[f_{i+j+d+1}], i, j = 0..D-1, evaluated by LU at working precision."""
    if len(series.coeffs) <= spec.max_index:
        raise InsufficientCoefficients(
            f"need coefficients up to index {spec.max_index}, have {len(series.coeffs) - 1}"
        )
    D, d = spec.D, spec.d
    block = mp.matrix(D, D)
    for i in range(D):
        for j in range(D):
            block[i, j] = series.coeffs[i + j + d + 1]
    return mp.det(block)


def _det_at(v, s: int, energy, D: int, d: int):
    series = riccati_coeffs(v, s, energy, 2 * D - 1 + d)
    return hankel_det(series, HankelSpec(D=D, d=d))


def _newton_root(v, s, d, D, seed, max_iter=60):
    """Newton with central-difference derivative at the working precision.

    Determinant evaluation near a root is pure cancellation, so the last
    digits are noise; iteration stops either on a tiny relative step or when
    the steps stop shrinking below the square-root-of-precision scale (the
    noise floor for that D).
    """
    h = mp.mpf(10) ** (-mp.mp.dps // 3)
    stop = mp.mpf(10) ** (-(mp.mp.dps - 10))
    plateau = mp.mpf(10) ** (-10)
    energy = _to_mpf(seed)
    prev_size = None
    prev_ratio = None
    for _ in range(max_iter):
        fval = _det_at(v, s, energy, D, d)
        deriv = (_det_at(v, s, energy + h, D, d) - _det_at(v, s, energy - h, D, d)) / (2 * h)
        if deriv == 0:
            raise NewtonDivergence(f"flat determinant at D={D}, E={mp.nstr(energy, 20)}")
        step = fval / deriv
        energy -= step
        size = abs(step)
        scale = max(1, abs(energy))
        if size < stop * scale:
            return energy
        if prev_size is not None:
            ratio = float(size / prev_size)
            # Tiny steps that stop contracting mean the root is pinned to the
            # determinant's cancellation noise floor for this D; that is as
            # good as this precision gets.
            if size < plateau * scale and ratio > 0.6:
                return energy
            # A steady contraction ratio r signals a root of multiplicity
            # ~ 1/(1-r) (the determinant vanishes to high order at exact
            # oscillator eigenvalues); stretch the step to restore quadratic
            # convergence.
            if prev_ratio is not None and abs(ratio - prev_ratio) < 0.05 and 0.3 < ratio < 0.97:
                mult = round(1.0 / (1.0 - ratio))
                if mult >= 2:
                    energy -= (mult - 1) * step
                    prev_size = None
                    prev_ratio = None
                    continue
            prev_ratio = ratio
        prev_size = size
    raise NewtonDivergence(f"no convergence within {max_iter} iterations at D={D}")


@dataclass(frozen=True)
class RpmResult:
    e_value: object
    stabilized_digits: int
    trail: tuple  # ((D, root), ...)

    def to_json(self, g=None, s: int = 0, d: int = 0, digits: int | None = None) -> str:
        digits = digits or mp.mp.dps
        return json.dumps(
            {
                "g": None if g is None else float(g),
                "s": s,
                "d": d,
                "roots": [{"D": D, "E": mp.nstr(root, digits)} for D, root in self.trail],
                "stabilized_digits": self.stabilized_digits,
            }
        )


def rpm_eigenvalue(
    v,
    s: int,
    d: int = 0,
    D_max: int = 25,
    seed=None,
    precision_digits: int = 80,
) -> RpmResult:
    """Track the Hankel root from D = 2 up to D_max, seeding each dimension
    with the previous root.

    The seed must lie in the basin of the target eigenvalue (a variational
    estimate does); Hankel determinants have many roots. Returns the D_max
    root, the count of digits agreed between the last two dimensions, and the
    whole trail.
    """
    if seed is None:
        raise ValueError("an explicit seed (e.g. a variational estimate) is required")
    if D_max < 3:
        raise ValueError("D_max must be >= 3")
    with mp.workdps(precision_digits):
        trail = []
        current = _to_mpf(seed)
        for D in range(2, D_max + 1):
            current = _newton_root(v, s, d, D, current)
            trail.append((D, current))
        diffs = [abs(trail[k + 1][1] - trail[k][1]) for k in range(len(trail) - 1)]
        tail = [x for x in diffs[-6:] if x > 0]
        # Once diffs reach the noise plateau they fluctuate harmlessly; only a
        # stall at coarse accuracy is worth flagging.
        coarse = mp.mpf(10) ** (-precision_digits // 3)
        if len(tail) >= 2 and tail[-1] > tail[0] and tail[-1] > coarse:
            warnings.warn(
                "root trail stopped contracting before D_max", NonMonotoneTrail
            )
        last, prev = trail[-1][1], trail[-2][1]
        if last == prev:
            stabilized = precision_digits
        else:
            rel = abs(last - prev) / max(abs(last), mp.mpf(1e-30))
            stabilized = max(0, int(mp.floor(-mp.log10(rel))))
        return RpmResult(e_value=last, stabilized_digits=stabilized, trail=tuple(trail))
