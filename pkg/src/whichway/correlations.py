"""Classical correlations, mutual information and discord between photon and detector.

Two joint states are studied, both for a pure detector with real pointer
overlap ``V = <d|U|d>``:

* ``ENTANGLED``: ``|Psi> = (|a>|d> + |b>U|d>) / sqrt(2)``
* ``DEPHASED``: the same state after the environment has removed the
  coherence between the pointer branches,
  ``(|a><a| (x) |d><d| + |b><b| (x) U|d><d|U^dag) / 2``.

Measurements act on the detector only. All entropies are in bits.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .interferometer import BlochVector, DetectorModel, distinguishability
from .optimize import grid_refine_max
from .qlinalg import (
    DETECTOR,
    PHOTON,
    DomainError,
    binary_entropy,
    density_matrix,
    entropy_from_eigenvalues,
    hermitian_eigenvalues,
    partial_trace,
    projector,
    von_neumann_entropy,
)

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi
GAMMA_POINTS = 181
PHI_POINTS = 73
PROB_FLOOR = 1e-12
PRODUCT_MI_ATOL = 1e-12
DISCORD_CLAMP = 1e-8
ANGLE_SNAP = 1e-6


class DegenerateMeasurementError(ValueError):
    """The measurement family is singular (identical pointer states)."""


class StateKind(enum.Enum):
    ENTANGLED = "entangled"
    DEPHASED = "dephased"


@dataclass(frozen=True)
class JointStateKind:
    kind: StateKind
    visibility: float

    def __post_init__(self):
        object.__setattr__(self, "kind", StateKind(self.kind))
        _check_visibility(self.visibility)


@dataclass(frozen=True)
class ProjectorPair:
    gamma: float
    phi: float
    kets: tuple

    @property
    def projectors(self):
        return tuple(projector(k) for k in self.kets)


@dataclass(frozen=True)
class CorrelationReport:
    visibility: float
    distinguishability: float
    predictability: float
    a_priori_visibility: float
    mutual_information: float
    classical_correlations: float
    quantum_discord: float
    optimal_gamma: float
    optimal_phi: float


class CCResult(NamedTuple):
    cc: float
    gamma_star: float
    phi_star: float


def _check_visibility(v):
    if not 0.0 <= v <= 1.0 or math.isnan(v):
        raise DomainError(f"visibility must lie in [0, 1], got {v!r}")


def _xlog2x(x):
    return 0.0 if x <= 0.0 else x * math.log2(x)


# --- joint states -----------------------------------------------------------


def build_joint_state(kind):
    """4x4 joint state in the basis ``|a,d>, |a,d_perp>, |b,d>, |b,d_perp>``."""
    v = float(kind.visibility)
    m = math.sqrt(1.0 - v * v)
    if kind.kind is StateKind.ENTANGLED:
        rho = np.array(
            [
                [1, 0, v, m],
                [0, 0, 0, 0],
                [v, 0, v * v, v * m],
                [m, 0, v * m, m * m],
            ],
            dtype=complex,
        )
    else:
        rho = np.array(
            [
                [1, 0, 0, 0],
                [0, 0, 0, 0],
                [0, 0, v * v, v * m],
                [0, 0, v * m, m * m],
            ],
            dtype=complex,
        )
    return 0.5 * rho


def entangled_state(v):
    return build_joint_state(JointStateKind(StateKind.ENTANGLED, v))


def dephased_state(v):
    return build_joint_state(JointStateKind(StateKind.DEPHASED, v))


# --- measurements on the detector -----------------------------------------------


def pointer_states(v, phi=0.0):
    """``(|d>, U|d>)`` with ``<d|U|d> = v e^{-i phi}``."""
    m = math.sqrt(max(0.0, 1.0 - v * v))
    return (
        np.array([1.0, 0.0], dtype=complex),
        np.array([v * np.exp(-1j * phi), m], dtype=complex),
    )


def helstrom_vectors(v, phi=0.0):
    """Minimum-error measurement kets ``(M_A, M_B)`` for telling ``|d>`` from ``U|d>``.

    ``phi`` is the relative phase of the pointer overlap, ``<d|U|d> = v e^{-i phi}``;
    with that pointer the kets are orthonormal for every phase. ``M_A`` and
    ``M_B`` are the eigenvectors of ``|d><d| - U|d><d|U^dag`` with
    eigenvalues ``+m`` and ``-m``, ``m = sqrt(1 - v^2)``.
    """
    _check_visibility(v)
    if v >= 1.0:
        raise DegenerateMeasurementError("pointer states coincide at V=1; no optimal measurement")
    m = math.sqrt(1.0 - v * v)
    # Expanding a/m |d> - e^{i phi} b/m U|d> with a^2 - b^2 = m, 2ab = v
    # collapses to the components below, free of the 1/m cancellation.
    a = math.sqrt((1.0 + m) / 2.0)
    b = v / (2.0 * a)
    ph = np.exp(1j * phi)
    ma = np.array([a, -ph * b], dtype=complex)
    mb = np.array([-np.conj(ph) * b, -a], dtype=complex)
    return ma, mb


def _measurement_kets(v, gamma, phi):
    # Broadcasting form of the (gamma, phi) projective family; returns arrays (..., 2).
    # Substituting <d|U|d> = v e^{-i phi}, v = sin(chi), m = cos(chi) into
    #   M1 = sin/m |d> + e^{i phi} (cos - sin v/m) U|d>
    #   M2 = e^{-i phi} cos/m |d> - (sin + cos v/m) U|d>
    # cancels every 1/m, leaving rotations by gamma + chi.
    chi = math.asin(v)
    t = np.asarray(gamma, dtype=float) + chi
    ph = np.exp(1j * np.asarray(phi, dtype=float))
    s, c = np.sin(t), np.cos(t)
    m1 = np.stack(np.broadcast_arrays(s + 0j, ph * c), axis=-1)
    m2 = np.stack(np.broadcast_arrays(np.conj(ph) * c, -s + 0j), axis=-1)
    return m1, m2


def measurement_vectors(v, gamma, phi=0.0):
    """Orthonormal detector projectors parametrized by ``(gamma, phi)`` at visibility ``v``.

    At ``phi = 0`` the kets are ``(sin(gamma+chi), cos(gamma+chi))`` and
    ``(cos(gamma+chi), -sin(gamma+chi))`` with ``sin(chi) = v``; ``phi`` adds
    a relative phase, so the family reaches every rank-1 projective
    measurement on the detector qubit.
    """
    _check_visibility(v)
    if v >= 1.0:
        raise DegenerateMeasurementError("measurement family is singular at V=1")
    m1, m2 = _measurement_kets(v, gamma, phi)
    return ProjectorPair(float(gamma), float(phi), (m1, m2))


# --- entropic quantities ---------------------------------------------------------


def _conditional_entropy_kets(rho, kets):
    # sum_k p_k S(rho^Q_k) for measurement kets of shape (..., 2)
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    total = 0.0
    for k in kets:
        unnorm = np.einsum("...j,ajbl,...l->...ab", np.conj(k), r, k)
        p = np.einsum("...aa->...", unnorm).real
        live = p >= PROB_FLOOR
        safe = np.where(live, p, 1.0)
        lam = hermitian_eigenvalues(unnorm / safe[..., None, None])
        total = total + np.where(live, p * entropy_from_eigenvalues(lam), 0.0)
    return total


def conditional_entropy(rho, pair):
    """Photon entropy left after the detector is measured with ``pair``.

    Branches with probability below ``PROB_FLOOR`` contribute nothing.
    """
    rho = density_matrix(rho)
    return float(_conditional_entropy_kets(rho, pair.kets))


def information_gain_closed_form(v, gamma):
    """Entropy drop ``S(rho^Q) - S(rho^Q | Pi)`` for the dephased state at ``phi = 0``.

    Written out term by term rather than via projectors; used to cross-check
    :func:`conditional_entropy`.
    """
    _check_visibility(v)
    m = math.sqrt(1.0 - v * v)
    c2 = math.cos(gamma) ** 2
    s2 = math.sin(gamma) ** 2
    x = (m * math.cos(gamma) - v * math.sin(gamma)) ** 2
    y = (m * math.sin(gamma) + v * math.cos(gamma)) ** 2
    return (
        1.0
        + 0.5 * _xlog2x(c2)
        + 0.5 * _xlog2x(s2)
        + 0.5 * _xlog2x(x)
        + 0.5 * _xlog2x(y)
        - 0.5 * _xlog2x(y + c2)
        - 0.5 * _xlog2x(x + s2)
    )


def mutual_information(rho):
    """``S(rho^Q) + S(rho^D) - S(rho)``."""
    rho = density_matrix(rho)
    i = (
        von_neumann_entropy(partial_trace(rho, PHOTON))
        + von_neumann_entropy(partial_trace(rho, DETECTOR))
        - von_neumann_entropy(rho)
    )
    return 0.0 if -PRODUCT_MI_ATOL <= i < 0.0 else i


def _family_parameter(visibility):
    if visibility is None or visibility >= 1.0:
        return 0.0
    _check_visibility(visibility)
    return float(visibility)


def classical_correlations(rho, visibility=None):
    """Largest photon entropy reduction over projective detector measurements.

    Parameters
    ----------
    rho : (4, 4) array
        Photon-detector state, photon factor first.
    visibility : float, optional
        Pointer overlap used to parametrize the measurement family. The set
        of measurements searched is the same for every value; only the
        meaning of the returned angle changes. ``None`` uses 0.

    Returns
    -------
    CCResult
        ``cc`` in bits and the maximizing ``(gamma, phi)``, with gamma
        folded into ``[0, pi/2)``. Uncorrelated states return ``(0, 0, 0)``
        without searching.
    """
    rho = density_matrix(rho)
    if mutual_information(rho) <= PRODUCT_MI_ATOL:
        return CCResult(0.0, 0.0, 0.0)
    v = _family_parameter(visibility)
    s_q = von_neumann_entropy(partial_trace(rho, PHOTON))

    def objective(gamma, phi):
        return s_q - _conditional_entropy_kets(rho, _measurement_kets(v, gamma, phi))

    res = grid_refine_max(
        objective,
        np.linspace(0.0, HALF_PI, GAMMA_POINTS),
        np.linspace(0.0, TWO_PI, PHI_POINTS, endpoint=False),
    )
    gamma, phi = canonical_angles(v, res.x, res.y)
    return CCResult(max(res.value, 0.0), gamma, phi)


def canonical_angles(v, gamma, phi):
    """Fold ``(gamma, phi)`` to a unique label of the same projector pair.

    ``(gamma, phi)`` and ``(-gamma - 2 asin(v), phi + pi)`` give the same
    projectors, as do ``gamma`` and ``gamma + pi/2`` with the outcomes
    swapped. The representative has ``cos(phi) >= 0``, gamma in ``[0, pi/2)``
    and phi in ``[0, 2 pi)``.
    """
    if math.cos(phi) < 0.0:
        gamma = -gamma - 2.0 * math.asin(v)
        phi = phi - math.pi
    return _fold(gamma, HALF_PI), _fold(phi, TWO_PI)


def _fold(angle, period):
    # refinement leaves ~1e-7 jitter around a flat optimum; pin it to the period origin
    angle %= period
    if angle < ANGLE_SNAP or period - angle < ANGLE_SNAP:
        return 0.0
    return angle


def quantum_discord(rho, visibility=None):
    """Mutual information minus classical correlations, clamped at zero for tiny undershoot."""
    qd = mutual_information(rho) - classical_correlations(rho, visibility).cc
    return 0.0 if -DISCORD_CLAMP <= qd < 0.0 else qd


# --- closed forms ------------------------------------------------------------------


def cc_pure_analytic(v):
    _check_visibility(v)
    return -_xlog2x((1.0 + v) / 2.0) - _xlog2x((1.0 - v) / 2.0)


def optimal_gamma(v):
    """Measurement angle maximizing the dephased-state information gain."""
    _check_visibility(v)
    m = math.sqrt(1.0 - v * v)
    return math.asin(math.sqrt((1.0 + m) / 2.0))


def cc_dephased_analytic(v):
    _check_visibility(v)
    m = math.sqrt(1.0 - v * v)
    return (1.0 + m) / 2.0 * _log2_or_zero(1.0 + m) + (1.0 - m) / 2.0 * _log2_or_zero(1.0 - m)


def _log2_or_zero(x):
    return math.log2(x) if x > 0.0 else 0.0


def qd_pure_analytic(v):
    # equal split of total correlations for a pure state
    return cc_pure_analytic(v)


def qd_dephased_analytic(v):
    _check_visibility(v)
    m = math.sqrt(1.0 - v * v)
    return (
        -_xlog2x((1.0 + v) / 2.0)
        - _xlog2x((1.0 - v) / 2.0)
        - (1.0 + m) / 2.0 * _log2_or_zero(1.0 + m)
        - (1.0 - m) / 2.0 * _log2_or_zero(1.0 - m)
    )


def mi_analytic(kind):
    h = binary_entropy((1.0 + kind.visibility) / 2.0)
    return 2.0 * h if kind.kind is StateKind.ENTANGLED else h


def guessing_probability(rho, kets):
    """Chance of naming the photon path right from a detector measurement.

    Each outcome is decoded to the path with the larger joint probability.
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    total = 0.0
    for k in kets:
        unnorm = np.einsum("...j,ajbl,...l->...ab", np.conj(k), r, k)
        diag = np.einsum("...aa->...a", unnorm).real
        total = total + np.max(diag, axis=-1)
    return total


def correlation_report(kind):
    """All complementarity quantities for one joint state."""
    v = float(kind.visibility)
    rho = build_joint_state(kind)
    cc = classical_correlations(rho, v)
    mi = mutual_information(rho)
    qd = mi - cc.cc
    bloch = BlochVector(0.0, 0.0, 1.0)
    return CorrelationReport(
        visibility=v,
        distinguishability=distinguishability(bloch, DetectorModel(v)),
        predictability=bloch.predictability,
        a_priori_visibility=bloch.a_priori_visibility,
        mutual_information=mi,
        classical_correlations=cc.cc,
        quantum_discord=0.0 if -DISCORD_CLAMP <= qd < 0.0 else qd,
        optimal_gamma=cc.gamma_star,
        optimal_phi=cc.phi_star,
    )
