"""Randomized property suite behind ``whichway verify``.

Each property reports its worst error over the trials it ran. A property
passes when that error is within ``min(native_tol, tolerance)``, so a tight
``tolerance`` can only make the suite stricter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import correlations as corr
from . import interferometer as mzi
from .qlinalg import (
    DETECTOR,
    PHOTON,
    dagger,
    entropy_from_eigenvalues,
    hermitian_eigenvalues,
    partial_trace,
    trace_norm,
)

V_GRID = np.round(np.linspace(0.0, 1.0, 21), 12)


@dataclass
class PropertyResult:
    name: str
    error: float
    tol: float
    counterexample: str = ""

    @property
    def passed(self):
        return bool(np.isfinite(self.error)) and self.error <= self.tol


def random_density_matrices(rng, n, dim=4):
    g = rng.normal(size=(n, dim, dim)) + 1j * rng.normal(size=(n, dim, dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho, axis1=-2, axis2=-1)[:, None, None]


def random_bloch(rng):
    # uniform in the unit ball
    v = rng.normal(size=3)
    v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
    return mzi.BlochVector(*map(float, v))


def random_detector(rng):
    return mzi.DetectorModel(complex(math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())))


def _worst(errors, labels):
    errors = np.asarray(errors, dtype=float)
    i = int(np.argmax(errors))
    return float(errors[i]), labels(i)


def _qlinalg_properties(rng, trials, tol):
    out = []
    rho = random_density_matrices(rng, trials)
    err = np.abs(np.trace(partial_trace(rho, PHOTON), axis1=-2, axis2=-1) - 1.0)
    e, ce = _worst(err, lambda i: f"rho[{i}]")
    out.append(PropertyResult("partial_trace.unit_trace", e, min(1e-10, tol), ce))

    a = random_density_matrices(rng, trials, 2)
    b = random_density_matrices(rng, trials, 2)
    ab = np.einsum("nij,nkl->nikjl", a, b).reshape(trials, 4, 4)
    err = np.maximum(
        np.max(np.abs(partial_trace(ab, PHOTON) - a), axis=(-2, -1)),
        np.max(np.abs(partial_trace(ab, DETECTOR) - b), axis=(-2, -1)),
    )
    e, ce = _worst(err, lambda i: f"factors #{i}")
    out.append(PropertyResult("partial_trace.product_factors", e, min(1e-10, tol), ce))

    s = lambda m: entropy_from_eigenvalues(hermitian_eigenvalues(m))
    err = np.abs(s(ab) - s(a) - s(b))
    e, ce = _worst(err, lambda i: f"factors #{i}")
    out.append(PropertyResult("entropy.additive", e, min(1e-9, tol), ce))

    h = random_density_matrices(rng, trials, 2) - 0.5 * np.eye(2)
    lam = hermitian_eigenvalues(h)
    err = np.maximum(
        np.abs(lam.sum(-1) - np.trace(h, axis1=-2, axis2=-1).real),
        np.abs(lam.prod(-1) - np.linalg.det(h).real),
    )
    e, ce = _worst(err, lambda i: f"h[{i}]")
    out.append(PropertyResult("eigenvalues.trace_det", e, min(1e-9, tol), ce))

    tn = trace_norm(rho - random_density_matrices(rng, trials))
    err = np.maximum(0.0, np.maximum(tn - 2.0, -tn))
    e, ce = _worst(err, lambda i: f"pair #{i}, norm={tn[i]!r}")
    out.append(PropertyResult("trace_norm.range", e, tol, ce))
    return out


def _interferometer_properties(rng, trials, tol):
    out = []
    configs = [
        mzi.Configuration(random_bloch(rng), random_detector(rng), rng.uniform(0, 2 * math.pi))
        for _ in range(trials)
    ]
    joint = np.array([mzi.evolve_joint(c) for c in configs])
    herm = np.max(np.abs(joint - dagger(joint)), axis=(-2, -1))
    trace = np.abs(np.trace(joint, axis1=-2, axis2=-1) - 1.0)
    neg = np.maximum(0.0, -hermitian_eigenvalues(joint)[:, 0])
    e, ce = _worst(np.maximum.reduce([herm, trace, neg]), lambda i: repr(configs[i]))
    out.append(PropertyResult("evolve_joint.valid_state", e, min(1e-9, tol), ce))

    err = np.max(
        np.abs(partial_trace(joint, PHOTON) - np.array([mzi.reduced_photon_state(c) for c in configs])),
        axis=(-2, -1),
    )
    e, ce = _worst(err, lambda i: repr(configs[i]))
    out.append(PropertyResult("reduced_photon_state.routes_agree", e, min(1e-10, tol), ce))

    few = configs[: min(trials, 20)]
    err = [abs(mzi.fringe_visibility(c.bloch, c.detector) - mzi.scanned_visibility(c.bloch, c.detector)) for c in few]
    e, ce = _worst(err, lambda i: repr(few[i]))
    out.append(PropertyResult("fringe_visibility.scan", e, min(1e-6, tol), ce))

    dets = [c.detector for c in configs]
    bloch0 = mzi.BlochVector(0.0, 0.0, 1.0)
    err = [abs(mzi.distinguishability(bloch0, d) - math.sqrt(1 - abs(d.overlap) ** 2)) for d in dets]
    e, ce = _worst(err, lambda i: repr(dets[i]))
    out.append(PropertyResult("distinguishability.pure_detector", e, min(1e-10, tol), ce))

    reports = [mzi.duality_check(c.bloch, c.detector) for c in configs]
    err = [0.0 if r.lhs is None else max(0.0, r.lhs - 1.0) for r in reports]
    e, ce = _worst(err, lambda i: repr(configs[i]))
    out.append(PropertyResult("duality.bound", e, min(1e-9, tol), ce))

    err = [abs(mzi.duality_check(bloch0, d).lhs - 1.0) for d in dets]
    e, ce = _worst(err, lambda i: repr(dets[i]))
    out.append(PropertyResult("duality.saturation", e, min(1e-9, tol), ce))
    return out


def _correlation_properties(rng, trials, tol):
    out = []
    v = rng.uniform(0.0, 1.0, trials) * (1 - 1e-9)
    gamma = rng.uniform(0.0, 2 * math.pi, trials)
    phi = rng.uniform(0.0, 2 * math.pi, trials)
    gram_err = np.empty(trials)
    period_err = np.empty(trials)
    for i in range(trials):
        m1, m2 = corr._measurement_kets(v[i], gamma[i], phi[i])
        kets = np.stack([m1, m2])
        gram = np.conj(kets) @ kets.T
        gram_err[i] = np.max(np.abs(gram - np.eye(2)))
    e, ce = _worst(gram_err, lambda i: f"V={v[i]!r}, gamma={gamma[i]!r}, phi={phi[i]!r}")
    out.append(PropertyResult("measurement_vectors.orthonormal", e, min(1e-10, tol), ce))

    n = min(trials, 500)
    for i in range(n):
        rho = corr.dephased_state(v[i])
        ce0 = corr._conditional_entropy_kets(rho, corr._measurement_kets(v[i], gamma[i], phi[i]))
        ce1 = corr._conditional_entropy_kets(rho, corr._measurement_kets(v[i], gamma[i] + math.pi / 2, phi[i]))
        period_err[i] = abs(ce0 - ce1)
    e, ce = _worst(period_err[:n], lambda i: f"V={v[i]!r}, gamma={gamma[i]!r}, phi={phi[i]!r}")
    out.append(PropertyResult("conditional_entropy.period_half_pi", e, min(1e-10, tol), ce))

    cc_err, split_err, argmax_err, mi_err, neg = [], [], [], [], []
    for vv in V_GRID:
        vv = float(vv)
        rho1, rho2 = corr.entangled_state(vv), corr.dephased_state(vv)
        r1 = corr.classical_correlations(rho1, vv)
        r2 = corr.classical_correlations(rho2, vv)
        i1, i2 = corr.mutual_information(rho1), corr.mutual_information(rho2)
        cc_err.append(max(abs(r1.cc - corr.cc_pure_analytic(vv)), abs(r2.cc - corr.cc_dephased_analytic(vv))))
        split_err.append(abs((i1 - r1.cc) - r1.cc))
        mi_err.append(abs(i2 - corr.binary_entropy((1 + vv) / 2)))
        neg.append(max(0.0, -r1.cc, -r2.cc, -(i1 - r1.cc), -(i2 - r2.cc) - 1e-8))
        if 0.0 < vv < 1.0:
            argmax_err.append(angle_distance(r2.gamma_star, corr.optimal_gamma(vv), math.pi / 2))
        else:
            argmax_err.append(0.0)
    label = lambda i: f"V={V_GRID[i]!r}"
    for name, errs, native in [
        ("classical_correlations.analytic", cc_err, 1e-6),
        ("discord.pure_state_split", split_err, 1e-6),
        ("classical_correlations.argmax_gamma", argmax_err, 1e-4),
        ("mutual_information.dephased", mi_err, 1e-9),
        ("correlations.non_negative", neg, tol),
    ]:
        e, ce = _worst(errs, label)
        out.append(PropertyResult(name, e, min(native, tol), ce))

    err = []
    for vv in (0.0, 0.3, 0.6, 0.9):
        best = best_projective_guess(corr.dephased_state(vv))
        err.append(max(0.0, best - (1 + math.sqrt(1 - vv * vv)) / 2))
    e, ce = _worst(err, lambda i: f"V={(0.0, 0.3, 0.6, 0.9)[i]!r}")
    out.append(PropertyResult("helstrom.optimal", e, min(1e-7, tol), ce))
    return out


def angle_distance(a, b, period):
    d = (a - b) % period
    return min(d, period - d)


def best_projective_guess(rho, n_theta=401, n_psi=181):
    """Best path-guessing probability over a Bloch-sphere grid of detector measurements."""
    theta = np.linspace(0.0, math.pi, n_theta)[:, None]
    psi = np.linspace(0.0, 2 * math.pi, n_psi, endpoint=False)[None, :]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * psi)
    k1 = np.stack(np.broadcast_arrays(c + 0j, e * s), axis=-1)
    k2 = np.stack(np.broadcast_arrays(-s + 0j, e * c), axis=-1)
    return float(np.max(corr.guessing_probability(rho, (k1, k2))))


def run_properties(tolerance=1e-6, trials=10_000, seed=42):
    rng = np.random.default_rng(seed)
    results = []
    results += _qlinalg_properties(rng, trials, tolerance)
    results += _interferometer_properties(rng, trials, tolerance)
    results += _correlation_properties(rng, trials, tolerance)
    return results


def format_report(results):
    lines = [f"{'status':<6} {'property':<40} {'max_error':>12} {'tol':>10}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status:<6} {r.name:<40} {r.error:>12.3e} {r.tol:>10.1e}")
        if not r.passed:
            lines.append(f"       counterexample: {r.counterexample}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} properties passed")
    return "\n".join(lines)
