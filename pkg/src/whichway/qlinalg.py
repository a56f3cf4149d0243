"""Small-matrix complex linear algebra for one- and two-qubit states.

Everything here works on dense numpy arrays of dimension 2 or 4. Two-qubit
operators use photon-major ordering: ``index = 2 * photon + detector``, so
the basis is ``|a,d>, |a,d_perp>, |b,d>, |b,d_perp>``.

Most functions accept a stack of matrices with leading batch axes, which is
what the measurement optimizer relies on.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_ATOL = 1e-10
DENSITY_ATOL = 1e-12
NEGATIVE_EIG_FLOOR = -1e-10

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PHOTON = "photon"
DETECTOR = "detector"


class ValidationError(ValueError):
    """Input is not a valid state or operator."""


class DimensionError(ValidationError):
    """Matrix has an unsupported shape."""


class DomainError(ValueError):
    """Scalar argument outside its allowed range."""


def _check_square(a, dims=(2, 4)):
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] not in dims:
        raise DimensionError(f"expected square matrix of size {dims}, got shape {a.shape}")
    return a


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def is_hermitian(a, atol=HERMITIAN_ATOL):
    a = np.asarray(a)
    return bool(np.all(np.abs(a - dagger(a)) <= atol))


def ket(*amplitudes):
    """Column-free state vector from amplitudes, normalized check included."""
    v = np.asarray(amplitudes, dtype=complex)
    if v.shape not in ((2,), (4,)):
        raise DimensionError(f"state vectors have 2 or 4 amplitudes, got {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > DENSITY_ATOL:
        raise ValidationError(f"state vector not normalized: norm={np.linalg.norm(v)!r}")
    return v


def projector(v):
    """Return ``|v><v|`` for a vector (or a stack of vectors)."""
    v = np.asarray(v, dtype=complex)
    return v[..., :, None] * np.conj(v[..., None, :])


def tensor_product(a, b):
    """Kronecker product of two 2x2 operators, photon factor first."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionError(f"tensor_product takes two 2x2 matrices, got {a.shape} and {b.shape}")
    return kron2(a, b)


def kron2(a, b):
    # np.kron without its generic-shape overhead; both factors 2x2
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)


def density_matrix(rho, atol=DENSITY_ATOL):
    """Validate ``rho`` as a density matrix and return it as a complex array.

    Raises ValidationError when the matrix is not Hermitian, does not have
    unit trace, or has an eigenvalue below ``NEGATIVE_EIG_FLOOR``.
    """
    rho = _check_square(rho)
    if rho.ndim != 2:
        raise DimensionError("density_matrix validates a single matrix")
    if not is_hermitian(rho, atol):
        raise ValidationError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > atol:
        raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
    lam = hermitian_eigenvalues(rho)
    if lam[0] < NEGATIVE_EIG_FLOOR:
        raise ValidationError(f"density matrix has negative eigenvalue {lam[0]!r}")
    return rho


def partial_trace(rho, keep=PHOTON):
    """Reduce a two-qubit operator to one factor.

    Parameters
    ----------
    rho : array_like, shape (..., 4, 4)
    keep : {"photon", "detector"}
        Which subsystem survives.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise DimensionError(f"partial_trace needs 4x4 input, got {rho.shape}")
    r = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    if keep == PHOTON:
        return np.einsum("...ajbj->...ab", r)
    if keep == DETECTOR:
        return np.einsum("...iaib->...ab", r)
    raise ValueError(f"keep must be {PHOTON!r} or {DETECTOR!r}, got {keep!r}")


def _jacobi_sweep_pair(a, p, q):
    # One complex Jacobi rotation zeroing a[..., p, q] for every matrix in the stack.
    apq = a[..., p, q]
    mag = np.abs(apq)
    active = mag > 0.0
    safe = np.where(active, mag, 1.0)
    phase = np.exp(1j * np.angle(apq))
    app = a[..., p, p].real
    aqq = a[..., q, q].real
    # t = tan(theta) from 2|apq| / (aqq - app), arranged so nothing overflows
    gap = aqq - app
    denom = np.abs(gap) + np.hypot(gap, 2.0 * safe)
    t = np.where(gap >= 0, 1.0, -1.0) * 2.0 * mag / denom
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    n = a.shape[-1]
    g = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    # G = diag(phase correction) @ real rotation, restricted to the (p, q) plane
    g[..., p, p] = c
    g[..., p, q] = s
    g[..., q, p] = -s * np.conj(phase)
    g[..., q, q] = c * np.conj(phase)
    return dagger(g) @ a @ g


def hermitian_eigenvalues(h, tol=1e-15, max_sweeps=50):
    """Eigenvalues of a Hermitian matrix (or stack), sorted ascending.

    2x2 input uses the closed-form quadratic roots; 4x4 input is diagonalized
    by cyclic complex Jacobi rotations until the off-diagonal part falls
    below ``tol`` relative to the largest entry.
    """
    a = _check_square(h)
    if not is_hermitian(a):
        raise ValidationError("hermitian_eigenvalues called on a non-Hermitian matrix")
    a = 0.5 * (a + dagger(a))
    n = a.shape[-1]
    if n == 2:
        return _eigenvalues_2x2(a)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    scale = max(float(np.max(np.abs(a), initial=0.0)), 1.0)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.max(np.abs(a[..., off_mask]), initial=0.0)
        if off <= tol * scale:
            break
        for p, q in pairs:
            a = _jacobi_sweep_pair(a, p, q)
    return np.sort(np.diagonal(a, axis1=-2, axis2=-1).real, axis=-1)


def _eigenvalues_2x2(a):
    mean = 0.5 * (a[..., 0, 0].real + a[..., 1, 1].real)
    half_gap = 0.5 * (a[..., 0, 0].real - a[..., 1, 1].real)
    r = np.hypot(half_gap, np.abs(a[..., 0, 1]))
    return np.stack([mean - r, mean + r], axis=-1)


def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def entropy_from_eigenvalues(lam):
    """Shannon entropy in bits of a probability vector (last axis)."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < NEGATIVE_EIG_FLOOR):
        raise ValidationError(f"eigenvalue {lam.min()!r} is too negative for a state")
    lam = np.clip(lam, 0.0, None)
    return -np.sum(_xlog2x(lam), axis=-1)


def von_neumann_entropy(rho):
    """Von Neumann entropy in bits, ``-sum(l * log2(l))`` with ``0 log 0 = 0``."""
    s = entropy_from_eigenvalues(hermitian_eigenvalues(rho))
    return float(s) if np.ndim(s) == 0 else s


def trace_norm(a):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    lam = hermitian_eigenvalues(a)
    s = np.sum(np.abs(lam), axis=-1)
    return float(s) if np.ndim(s) == 0 else s


def binary_entropy(p):
    """``h(p) = -p log2 p - (1-p) log2 (1-p)`` in bits."""
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr < 0.0) | (p_arr > 1.0)) or np.any(np.isnan(p_arr)):
        raise DomainError(f"binary_entropy needs p in [0, 1], got {p!r}")
    h = -(_xlog2x(p_arr) + _xlog2x(1.0 - p_arr))
    return float(h) if h.ndim == 0 else h
