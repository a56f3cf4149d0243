"""Which-way detection and fringe contrast.

Run with ``python3 demos/01_duality.py``.
"""
# %%
import math

import numpy as np

from whichway import (
    BlochVector,
    Configuration,
    DetectorModel,
    distinguishability,
    duality_check,
    fringe_visibility,
    output_probability,
)

# %% [markdown]
# A photon prepared in an equal superposition of both arms (Bloch vector along z)
# meets a detector whose two pointer states overlap by ``c``. As ``c`` shrinks the
# detector learns more about the path, and the fringes wash out.

# %%
photon = BlochVector(0.0, 0.0, 1.0)
print(f"{'|c|':>6} {'V':>8} {'D':>8} {'V^2+D^2':>10}")
for c in np.linspace(0.0, 1.0, 11):
    det = DetectorModel(c)
    v, d = fringe_visibility(photon, det), distinguishability(photon, det)
    print(f"{c:6.2f} {v:8.4f} {d:8.4f} {v * v + d * d:10.6f}")

# %% [markdown]
# The detector phase shifts the fringe pattern without changing its contrast.

# %%
det = DetectorModel(0.6 * np.exp(0.9j))
for phi in np.linspace(0.0, 2 * math.pi, 9):
    pa = output_probability(Configuration(photon, det, phi))
    print(f"phi={phi:5.2f}  P_a={pa:.4f}  " + "#" * int(round(40 * pa)))

# %% [markdown]
# Once the photon's own bias and a priori contrast are divided out, a pure
# detector saturates the bound for any preparation. The preparation part
# ``P^2 + V0^2`` is strict for mixed photons.

# %%
for bloch in (BlochVector(0.6, 0.0, 0.8), BlochVector(0.3, 0.4, 0.2), BlochVector(0.0, 0.5, 0.0)):
    rep = duality_check(bloch, DetectorModel(0.5))
    print(bloch, f"lhs={rep.lhs:.4f}  preparation={rep.preparation_lhs:.4f}")
