"""Photon in a symmetric Mach-Zehnder interferometer with a which-way detector.

The path qubit is spanned by ``|a>`` and ``|b>``. The detector is kept in the
two-dimensional span of its pointer states: ``|d> = (1, 0)`` and
``U|d> = (c, sqrt(1 - |c|^2))`` where ``c = <d|U|d>`` is the pointer overlap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimize import golden_section_max
from .qlinalg import (
    IDENTITY2,
    PHOTON,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ValidationError,
    kron2,
    partial_trace,
    projector,
    trace_norm,
)

BLOCH_ATOL = 1e-12
V0_FLOOR = 1e-9
DUALITY_ATOL = 1e-9
SCAN_POINTS = 401

_BEAM_SPLITTER = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
# sigma_z -/+ i sigma_y in the path basis
_LOWER = SIGMA_Z - 1j * SIGMA_Y
_RAISE = SIGMA_Z + 1j * SIGMA_Y


@dataclass(frozen=True)
class BlochVector:
    s_x: float
    s_y: float
    s_z: float

    def __post_init__(self):
        if self.norm > 1.0 + BLOCH_ATOL:
            raise ValidationError(f"Bloch vector norm {self.norm!r} exceeds 1")

    @property
    def norm(self):
        return math.sqrt(self.s_x**2 + self.s_y**2 + self.s_z**2)

    @property
    def predictability(self):
        return abs(self.s_x)

    @property
    def a_priori_visibility(self):
        return math.hypot(self.s_y, self.s_z)

    @property
    def alpha(self):
        """Phase of ``S_z + i S_y``; zero when that amplitude vanishes."""
        if self.s_y == 0.0 and self.s_z == 0.0:
            return 0.0
        return math.atan2(self.s_y, self.s_z)


@dataclass(frozen=True)
class DetectorModel:
    overlap: complex

    def __post_init__(self):
        object.__setattr__(self, "overlap", complex(self.overlap))
        if abs(self.overlap) > 1.0 + BLOCH_ATOL:
            raise ValidationError(f"pointer overlap |c|={abs(self.overlap)!r} exceeds 1")

    @property
    def visibility_factor(self):
        return abs(self.overlap)

    @property
    def beta(self):
        return 0.0 if self.overlap == 0 else math.atan2(self.overlap.imag, self.overlap.real)

    @property
    def ready_state(self):
        return np.array([1.0, 0.0], dtype=complex)

    @property
    def flagged_state(self):
        """``U|d>``, with its ``|d_perp>`` amplitude real and non-negative."""
        c = self.overlap
        return np.array([c, math.sqrt(max(0.0, 1.0 - abs(c) ** 2))], dtype=complex)

    @property
    def rho_in(self):
        return projector(self.ready_state)

    @property
    def rho_flagged(self):
        return projector(self.flagged_state)


@dataclass(frozen=True)
class Configuration:
    bloch: BlochVector
    detector: DetectorModel
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))


def beam_splitter_map(state):
    """Apply the 50:50 beam splitter to a path-space vector."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (2,):
        raise ValidationError(f"path state must have 2 amplitudes, got {state.shape}")
    return _BEAM_SPLITTER @ state


def photon_initial_state(bloch):
    """``(1 + S.sigma) / 2`` for the photon path qubit."""
    return 0.5 * (IDENTITY2 + bloch.s_x * SIGMA_X + bloch.s_y * SIGMA_Y + bloch.s_z * SIGMA_Z)


def _coherence(bloch, phi):
    # e^{i phi} (S_z + i S_y)
    return np.exp(1j * phi) * complex(bloch.s_z, bloch.s_y)


def evolve_joint(config):
    """Joint photon-detector state after the interferometer (4x4)."""
    b, det = config.bloch, config.detector
    ready, flagged = det.ready_state, det.flagged_state
    rho_d = projector(ready)
    rho_u = projector(flagged)
    d_u = np.outer(ready, np.conj(flagged))  # rho_in U^dagger = |d><Ud|
    u_d = np.outer(flagged, np.conj(ready))  # U rho_in = |Ud><d|
    z = _coherence(b, config.phi)
    return 0.25 * (
        (1 - b.s_x) * kron2(IDENTITY2 + SIGMA_X, rho_d)
        + (1 + b.s_x) * kron2(IDENTITY2 - SIGMA_X, rho_u)
        - np.conj(z) * kron2(_LOWER, d_u)
        - z * kron2(_RAISE, u_d)
    )


def reduced_photon_state(config, route="direct"):
    """Photon state after tracing out the detector.

    ``route="direct"`` assembles it from the overlap ``c`` alone;
    ``route="partial_trace"`` traces the joint state. Both must agree.
    """
    if route == "partial_trace":
        return partial_trace(evolve_joint(config), PHOTON)
    if route != "direct":
        raise ValueError(f"unknown route {route!r}")
    b, c = config.bloch, config.detector.overlap
    z = _coherence(b, config.phi)
    return 0.25 * (
        (1 - b.s_x) * (IDENTITY2 + SIGMA_X)
        + (1 + b.s_x) * (IDENTITY2 - SIGMA_X)
        - np.conj(z) * np.conj(c) * _LOWER
        - z * c * _RAISE
    )


def output_probability(config):
    """Probability that the photon leaves through output port ``a``."""
    b, det = config.bloch, config.detector
    return 0.5 - 0.5 * b.a_priori_visibility * det.visibility_factor * math.cos(
        b.alpha + det.beta + config.phi
    )


def fringe_visibility(bloch, detector):
    return bloch.a_priori_visibility * detector.visibility_factor


def scanned_visibility(bloch, detector, points=SCAN_POINTS):
    """Fringe contrast measured by sweeping the phase shifter.

    ``P^a`` is read off the traced joint state on a uniform grid over
    ``[0, 2 pi)``; the brightest and darkest grid points are then polished
    by golden-section search within one grid step, since a bare grid can
    miss the cosine extremes by ``O(step^2)``.
    """
    def p_a(phi):
        rho_q = reduced_photon_state(Configuration(bloch, detector, phi), route="partial_trace")
        return rho_q[0, 0].real

    grid = np.linspace(0.0, 2 * math.pi, points, endpoint=False)
    pa = np.array([p_a(phi) for phi in grid])
    h = grid[1] - grid[0]
    i_hi, i_lo = int(np.argmax(pa)), int(np.argmin(pa))
    _, hi = golden_section_max(p_a, grid[i_hi] - h, grid[i_hi] + h)
    _, neg_lo = golden_section_max(lambda phi: -p_a(phi), grid[i_lo] - h, grid[i_lo] + h)
    hi, lo = max(hi, pa[i_hi]), min(-neg_lo, pa[i_lo])
    return (hi - lo) / (hi + lo)


def detector_final_state(bloch, detector, rho_in=None):
    """Detector state once the photon has passed; ``rho_in`` may be mixed."""
    if rho_in is None:
        rho_in = detector.rho_in
        rho_flagged = detector.rho_flagged
    else:
        rho_flagged = _flag(rho_in, detector)
    return 0.5 * (1 - bloch.s_x) * rho_in + 0.5 * (1 + bloch.s_x) * rho_flagged


def _flag(rho_in, detector):
    # Unitary on the pointer plane taking |d> to U|d>.
    flagged = detector.flagged_state
    perp = np.array([-np.conj(flagged[1]), np.conj(flagged[0])])
    u = np.column_stack([flagged, perp])
    return u @ np.asarray(rho_in, dtype=complex) @ np.conj(u.T)


def distinguishability(bloch, detector, rho_in=None):
    """Trace-norm path distinguishability of the two weighted pointer states."""
    if rho_in is None:
        rho_in, rho_flagged = detector.rho_in, detector.rho_flagged
    else:
        rho_flagged = _flag(rho_in, detector)
    diff = 0.5 * (1 - bloch.s_x) * rho_in - 0.5 * (1 + bloch.s_x) * rho_flagged
    return trace_norm(diff)


@dataclass(frozen=True)
class DualityReport:
    lhs: float | None
    holds: bool | None
    preparation_lhs: float
    preparation_holds: bool


def duality_check(bloch, detector):
    """Evaluate ``D^2 + (1 - P^2) V^2 / V0^2 <= 1`` and ``P^2 + V0^2 <= 1``.

    With ``V0`` below ``V0_FLOOR`` the main inequality is undefined and both
    ``lhs`` and ``holds`` are ``None``.
    """
    p = bloch.predictability
    v0 = bloch.a_priori_visibility
    prep = p * p + v0 * v0
    prep_ok = prep <= 1.0 + DUALITY_ATOL
    if v0 <= V0_FLOOR:
        return DualityReport(None, None, prep, prep_ok)
    d = distinguishability(bloch, detector)
    v = fringe_visibility(bloch, detector)
    lhs = d * d + (1.0 - p * p) / (v0 * v0) * v * v
    return DualityReport(lhs, lhs <= 1.0 + DUALITY_ATOL, prep, prep_ok)
