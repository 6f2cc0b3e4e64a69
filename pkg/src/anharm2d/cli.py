"""Command-line front end: case pipelines, transforms, spectra, resonances,
and high-precision 1D eigenvalues.

Exit codes: 0 success, 2 flag/validation error (argparse convention), 3
numerical failure (the error name goes to stderr as a one-line JSON object).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import mpmath as mp
import numpy as np

from .cases import case_preset, exact_lambda
from .eig import eig_selfadjoint
from .maps import flip_x
from .oscbasis import BasisSpec, build_hamiltonian, build_hamiltonian_1d, optimal_omega
from .poly2d import apply_linear_map, is_bounded_below, quartic_form_min
from .resonance import find_lowest_resonance, table_csv
from .rpm import rpm_eigenvalue
from .symmetry import detect_group, separating_rotation

TABLE1_LAMBDAS = (Fraction(10, 100), Fraction(12, 100), Fraction(13, 100), Fraction(14, 100))


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _default_digits() -> int:
    env = os.environ.get("OSC_PRECISION_DIGITS")
    return int(env) if env else 80


def _emit(payload, fmt: str, out_path: str | None) -> None:
    if isinstance(payload, str):  # pre-rendered (CSV table)
        text = payload
    elif fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for key, value in _flatten(payload):
            writer.writerow([key, value])
        text = buf.getvalue()
    else:
        text = "".join(f"{key}: {value}\n" for key, value in _flatten(payload))
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(payload, prefix=""):
    if isinstance(payload, dict):
        for key, value in payload.items():
            yield from _flatten(value, f"{prefix}{key}." if prefix else f"{key}.")
    elif isinstance(payload, (list, tuple)):
        for idx, value in enumerate(payload):
            yield from _flatten(value, f"{prefix}{idx}.")
    else:
        yield prefix.rstrip("."), payload


def _poly_dict(poly) -> dict:
    return json.loads(poly.to_json())


def _separated_quartic_coeffs(poly) -> tuple[Fraction, Fraction] | None:
    """(a, b) of x^2 + y^2 + a x^4 + b y^4 if the potential has that shape."""
    expected = {(2, 0), (0, 2), (4, 0), (0, 4)}
    if not all(ij in expected for ij in poly.terms):
        return None
    coeffs = []
    for ij in ((4, 0), (0, 4)):
        c = poly.coefficient(*ij)
        if c.q != 0:
            return None
        coeffs.append(c.p)
    return coeffs[0], coeffs[1]


def _rpm_ground(g: Fraction, digits: int, d_max: int):
    """High-precision even ground state of p^2 + x^2 + g x^4 (g rational)."""
    if g == 0:
        return mp.mpf(1), None
    omega = optimal_omega(float(g))
    ham = build_hamiltonian_1d({2: 1.0, 4: float(g)}, n_max=40, omega=omega)
    seed = float(eig_selfadjoint(ham).eigenvalues[0])
    result = rpm_eigenvalue([0, 1, g], s=0, d=0, D_max=d_max, seed=seed, precision_digits=digits)
    return result.e_value, result


def _variational_ground_1d(g: float, n_max: int = 60) -> float:
    ham = build_hamiltonian_1d({2: 1.0, 4: g}, n_max=n_max, omega=optimal_omega(g))
    return float(eig_selfadjoint(ham).eigenvalues[0])


def _cmd_transform(args) -> dict:
    preset = case_preset(args.case, args.lam)
    found = separating_rotation(preset.potential)
    payload = {
        "case": args.case,
        "lambda": str(preset.lam),
        "potential": _poly_dict(preset.potential),
        "separable": found is not None,
    }
    if found is not None:
        angle, mp2 = found
        payload["rotation_angle"] = _fmt(angle)
        payload["map"] = {
            "label": mp2.label,
            "entries": [[str(v) for v in row] for row in mp2.entries()],
        }
        payload["transformed"] = _poly_dict(apply_linear_map(preset.potential, mp2))
    return payload


def _cmd_symmetry(args) -> dict:
    preset = case_preset(args.case, args.lam)
    group = detect_group(preset.potential)
    bounded, (qmin, angle) = is_bounded_below(preset.potential), quartic_form_min(preset.potential)
    return {
        "case": args.case,
        "lambda": str(preset.lam),
        "group": json.loads(group.to_json()),
        "boundedness": bounded.value,
        "quartic_form_min": _fmt(qmin),
        "quartic_form_argmin": _fmt(angle),
    }


def _omega_for(args, poly) -> float:
    policy = args.omega
    if policy.startswith("fixed:"):
        value = float(policy.split(":", 1)[1])
        if value <= 0:
            raise ValueError("--omega fixed:<val> needs a positive value")
        return value
    if policy == "optimal":
        # strongest quartic growth direction sets the effective 1D coupling
        neg = poly.homogeneous_part(4).scale(-1)
        qmax = -quartic_form_min(neg)[0]
        return optimal_omega(max(qmax, 0.0))
    raise ValueError(f"unknown omega policy {policy!r}")


def _cmd_spectrum(args) -> dict:
    preset = case_preset(args.case, args.lam)
    omega = _omega_for(args, preset.potential)
    basis = BasisSpec(args.nmax, args.nmax, omega=omega)
    result = eig_selfadjoint(build_hamiltonian(preset.potential, basis))
    count = min(args.count, len(result.eigenvalues))
    return {
        "case": args.case,
        "lambda": str(preset.lam),
        "nmax": args.nmax,
        "omega": _fmt(omega),
        "eigenvalues": [_fmt(e) for e in result.eigenvalues[:count]],
    }


def _resonance_rows(lams, nmax: int, window, steps: int):
    rows = []
    for lam in lams:
        preset = case_preset(3, lam)
        basis = BasisSpec(nmax, nmax, omega=1.0)
        rows.append(
            find_lowest_resonance(
                preset.potential, basis, theta_window=window, n_points=steps, lam=float(lam)
            )
        )
    return rows


def _cmd_resonance(args) -> dict | str:
    if args.case != 3:
        raise ValueError("resonances are computed for the unbounded case 3")
    window = (args.theta_min * math.pi, args.theta_max * math.pi)
    lams = TABLE1_LAMBDAS if (args.emit_table1 and args.lam is None) else (exact_lambda(args.lam if args.lam is not None else Fraction(1, 10)),)
    rows = _resonance_rows(lams, args.nmax, window, args.theta_steps)
    if args.emit_table1:
        return table_csv(rows)
    res = rows[0]
    return {
        "case": 3,
        "lambda": str(lams[0]),
        "re_e": _fmt(res.energy.real),
        "im_e": _fmt(res.energy.imag),
        "theta_star": _fmt(res.theta_star),
        "stability": _fmt(res.stability),
        "nmax": res.basis_used.n_max_x,
        "converged": res.converged,
    }


def _cmd_rpm(args) -> dict:
    digits = args.digits
    g = exact_lambda(args.g)
    omega = optimal_omega(float(g))
    ham = build_hamiltonian_1d({2: 1.0, 4: float(g)}, n_max=40, omega=omega)
    eigs = eig_selfadjoint(ham).eigenvalues
    s = 0 if args.state == "even" else 1
    seed = args.seed if args.seed is not None else float(eigs[s])
    result = rpm_eigenvalue(
        [0, 1, g], s=s, d=args.displacement, D_max=args.dmax, seed=seed, precision_digits=digits
    )
    return {
        "g": str(g),
        "state": args.state,
        "d": args.displacement,
        "D_max": args.dmax,
        "precision_digits": digits,
        "energy": mp.nstr(result.e_value, digits),
        "stabilized_digits": result.stabilized_digits,
        "trail": json.loads(result.to_json(g=float(g), s=s, d=args.displacement, digits=digits))["roots"],
    }


def _case_separable_report(preset, digits: int, d_max: int) -> dict:
    found = separating_rotation(preset.potential)
    angle, mp2 = found
    transformed = apply_linear_map(preset.potential, mp2)
    ab = _separated_quartic_coeffs(transformed)
    with mp.workdps(digits):
        cache = {}
        e_parts = []
        variational = 0.0
        for g in ab:
            if g not in cache:
                cache[g] = (_rpm_ground(g, digits, d_max)[0], _variational_ground_1d(float(g)))
            e_parts.append(cache[g][0])
            variational += cache[g][1]
        total = mp.fsum(e_parts)
        report = {
            "rotation_angle": _fmt(angle),
            "map": {"label": mp2.label, "entries": [[str(v) for v in row] for row in mp2.entries()]},
            "transformed": _poly_dict(transformed),
            "factor_couplings": [str(g) for g in ab],
            "ground_energy_rpm": mp.nstr(total, digits),
            "ground_energy_variational": _fmt(variational),
            "agreement_digits": int(
                mp.floor(-mp.log10(abs(total - variational) / abs(total)))
            ),
        }
    return report


def _cmd_case(args) -> dict | str:
    digits = args.digits
    preset = case_preset(args.case, args.lam)
    payload = {
        "case": args.case,
        "lambda": str(preset.lam),
        "boundedness": is_bounded_below(preset.potential).value,
        "group_order": detect_group(preset.potential).order,
    }
    if args.case in (1, 2):
        payload.update(_case_separable_report(preset, digits, args.dmax))
    elif args.case == 3:
        if args.emit_table1:
            window = (args.theta_min * math.pi, args.theta_max * math.pi)
            lams = TABLE1_LAMBDAS if args.lam is None else (preset.lam,)
            return table_csv(_resonance_rows(lams, args.nmax, window, args.theta_steps))
        qmin, angle = quartic_form_min(preset.potential)
        payload["quartic_form_min"] = _fmt(qmin)
        payload["quartic_form_argmin"] = _fmt(angle)
        window = (args.theta_min * math.pi, args.theta_max * math.pi)
        res = _resonance_rows((preset.lam,), args.nmax, window, args.theta_steps)[0]
        payload.update(
            re_e=_fmt(res.energy.real),
            im_e=_fmt(res.energy.imag),
            theta_star=_fmt(res.theta_star),
            converged=res.converged,
        )
    elif args.case == 4:
        twin = case_preset(1, preset.lam)
        flip = flip_x()
        payload["flip_conjugation_exact"] = apply_linear_map(preset.potential, flip) == twin.potential
        basis = BasisSpec(args.nmax, args.nmax, omega=1.0)
        ours = eig_selfadjoint(build_hamiltonian(preset.potential, basis)).eigenvalues[:10]
        theirs = eig_selfadjoint(build_hamiltonian(twin.potential, basis)).eigenvalues[:10]
        payload["isospectral_max_diff"] = _fmt(float(np.max(np.abs(ours - theirs))))
        payload["lowest_eigenvalues"] = [_fmt(e) for e in ours]
    elif args.case == 5:
        basis = BasisSpec(args.nmax, args.nmax, omega=1.0)
        eigs = eig_selfadjoint(build_hamiltonian(preset.potential, basis)).eigenvalues[:10]
        payload["lowest_eigenvalues"] = [_fmt(e) for e in eigs]
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anharm2d",
        description="2D quartic anharmonic oscillators: transforms, symmetry, spectra, resonances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, case_required=True):
        p.add_argument("--lambda", dest="lam", default=None, help="coupling (exact decimal or fraction)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", dest="out_path", default=None, help="write output to this path")
        return p

    p_case = common(sub.add_parser("case", help="run the full pipeline for a benchmark case"))
    p_case.add_argument("case", type=int, choices=range(1, 6))
    p_tr = common(sub.add_parser("transform", help="separating rotation and transformed potential"))
    p_tr.add_argument("--case", type=int, choices=range(1, 6), required=True)
    p_sym = common(sub.add_parser("symmetry", help="point group and boundedness report"))
    p_sym.add_argument("--case", type=int, choices=range(1, 6), required=True)
    p_sp = common(sub.add_parser("spectrum", help="lowest Rayleigh-Ritz eigenvalues"))
    p_sp.add_argument("--case", type=int, choices=range(1, 6), required=True)
    p_sp.add_argument("--count", type=int, default=10)
    p_res = common(sub.add_parser("resonance", help="lowest complex-rotation resonance"))
    p_res.add_argument("--case", type=int, default=3)
    p_rpm = common(sub.add_parser("rpm", help="high-precision 1D quartic eigenvalue"))
    p_rpm.add_argument("--g", required=True, help="coefficient of x^4 in p^2 + x^2 + g x^4")
    p_rpm.add_argument("--state", choices=("even", "odd"), default="even")
    p_rpm.add_argument("--seed", type=float, default=None, help="Newton seed (default: variational)")
    p_rpm.add_argument("--displacement", type=int, default=0)

    for p in (p_case, p_sp, p_res):
        p.add_argument("--nmax", type=int, default=None, help="basis functions per mode")
    for p in (p_case, p_res):
        p.add_argument("--theta-min", type=float, default=0.03, help="window start in units of pi")
        p.add_argument("--theta-max", type=float, default=0.10, help="window end in units of pi")
        p.add_argument("--theta-steps", type=int, default=15)
        p.add_argument("--emit-table1", action="store_true", help="emit the resonance table as CSV")
    for p in (p_case, p_rpm):
        p.add_argument("--digits", type=int, default=_default_digits())
        p.add_argument("--dmax", type=int, default=25, help="largest Hankel dimension")
    p_sp.add_argument("--omega", default="fixed:1", help="basis frequency: fixed:<val> or optimal")
    return parser


_HANDLERS = {
    "case": _cmd_case,
    "transform": _cmd_transform,
    "symmetry": _cmd_symmetry,
    "spectrum": _cmd_spectrum,
    "resonance": _cmd_resonance,
    "rpm": _cmd_rpm,
}

_DEFAULT_NMAX = {"case": 20, "resonance": 30, "spectrum": 20}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "nmax", None) is None and args.command in _DEFAULT_NMAX:
        args.nmax = 30 if (args.command == "case" and getattr(args, "case", None) == 3) else _DEFAULT_NMAX[args.command]
    try:
        if getattr(args, "nmax", 1) < 1:
            raise ValueError("--nmax must be >= 1")
        if hasattr(args, "theta_min") and not (0.0 < args.theta_min < args.theta_max < 0.25):
            raise ValueError("theta window must satisfy 0 < min < max < 0.25 (units of pi)")
        payload = _HANDLERS[args.command](args)
    except (ValueError, KeyError) as exc:
        parser.exit(2, f"error: {exc}\n")
    except Exception as exc:  # numerical failures -> exit 3 with JSON on stderr
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "detail": str(exc)}) + "\n")
        return 3
    _emit(payload, args.format, args.out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
