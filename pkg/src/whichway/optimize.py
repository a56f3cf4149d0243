"""Grid scan followed by coordinate-wise golden-section refinement."""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo, hi, xtol=1e-10, max_iter=500):
    """Maximize a unimodal scalar function on ``[lo, hi]``.

    Returns ``(x, f(x))``.
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= xtol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


class SearchResult(NamedTuple):
    x: float
    y: float
    value: float
    rounds: int


def grid_refine_max(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xs: np.ndarray,
    ys: np.ndarray,
    ftol: float = 1e-8,
    xtol: float = 1e-10,
    max_rounds: int = 200,
) -> SearchResult:
    """Maximize ``f(x, y)`` over a tensor grid, then polish one coordinate at a time.

    ``f`` must broadcast over array arguments. The grid argmax takes the
    first occurrence in (x-major, y-minor) order, so ties resolve to the
    smallest x and then the smallest y. Refinement brackets are one grid
    step on either side of the current point.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    values = f(xs[:, None], ys[None, :])
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    x, y, best = float(xs[i]), float(ys[j]), float(values[i, j])
    hx = float(np.max(np.diff(xs))) if xs.size > 1 else 0.0
    hy = float(np.max(np.diff(ys))) if ys.size > 1 else 0.0

    def scalar(xv, yv):
        return float(f(np.array([xv]), np.array([yv]))[0])

    rounds = 0
    for rounds in range(1, max_rounds + 1):
        start = best
        if hx > 0:
            x_new, v = golden_section_max(lambda t: scalar(t, y), x - hx, x + hx, xtol)
            if v > best:
                x, best = x_new, v
        if hy > 0:
            y_new, v = golden_section_max(lambda t: scalar(x, t), y - hy, y + hy, xtol)
            if v > best:
                y, best = y_new, v
        if best - start < ftol:
            break
    return SearchResult(x, y, best, rounds)
