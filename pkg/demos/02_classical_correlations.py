"""How much a detector readout tells about the photon, before and after dephasing.

Run with ``python3 demos/02_classical_correlations.py``.
"""
# %%
import math

import numpy as np

from whichway import (
    StateKind,
    JointStateKind,
    build_joint_state,
    cc_dephased_analytic,
    cc_pure_analytic,
    classical_correlations,
    information_gain_closed_form,
    optimal_gamma,
)

# %% [markdown]
# The numeric search scans every projective measurement on the detector and keeps
# the best one; the closed forms should agree to rounding error.

# %%
print(f"{'V':>5} {'CC pure':>10} {'numeric':>10} {'CC deph':>10} {'numeric':>10} {'gamma*':>8}")
for v in np.linspace(0.0, 1.0, 11):
    pure = classical_correlations(build_joint_state(JointStateKind(StateKind.ENTANGLED, v)), v)
    deph = classical_correlations(build_joint_state(JointStateKind(StateKind.DEPHASED, v)), v)
    print(
        f"{v:5.2f} {cc_pure_analytic(v):10.6f} {pure.cc:10.6f} "
        f"{cc_dephased_analytic(v):10.6f} {deph.cc:10.6f} {deph.gamma_star:8.4f}"
    )

# %% [markdown]
# The information gain as a function of the measurement angle peaks at ``optimal_gamma``.

# %%
v = 0.6
for gamma in np.linspace(0.0, math.pi / 2, 13):
    gain = information_gain_closed_form(v, gamma)
    mark = "  <- optimum nearby" if abs(gamma - optimal_gamma(v)) < math.pi / 48 else ""
    print(f"gamma={gamma:5.3f}  gain={gain:.4f}{mark}")
print(f"optimal_gamma({v}) = {optimal_gamma(v):.6f}")
