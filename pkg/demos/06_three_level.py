"""Three-level (spin-1) model: stationary populations and formula audit.

With only incoherent raising (rate alpha) and lowering (rate beta) the
spin-1 master equation is a birth-death chain on the populations.  The
superoperator nullspace gives diagonal stationary states with populations
(alpha^2, alpha beta, beta^2) normalized.  A closed-form (m3, m8) pair
that circulates alongside this model is evaluated verbatim and compared:
it disagrees with the nullspace, and for alpha = 3, beta = 1 it is not
even a physical state.  The stationary state is also always mixed, so no
pure-|0> phase circle exists anywhere in the rate plane.

Run:  python3 demos/06_three_level.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qsync import (
    Spin1Params,
    spin1_formula_comparison,
    spin1_limit_cycle_report,
    spin1_steady_oracle,
)

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT_DIR, exist_ok=True)

# stationary populations along a ratio sweep
ratios = np.logspace(-1.5, 1.5, 121)  # alpha / beta
pops = np.array([
    np.diag(spin1_steady_oracle(Spin1Params(alpha=float(r), beta=1.0))).real
    for r in ratios
])
purities = np.array([
    spin1_limit_cycle_report(Spin1Params(alpha=float(r), beta=1.0)).purity
    for r in ratios
])
print(f"max purity over the ratio sweep: {purities.max():.6f} "
      "(always below 1: the stationary state is never pure)")

# audit the published closed form at a reference point
comp = spin1_formula_comparison(Spin1Params(alpha=3.0, beta=1.0))
print("alpha = 3, beta = 1:")
print(f"  nullspace (m3, m8)      = ({comp.m3_oracle:.9f}, {comp.m8_oracle:.9f})")
print(f"  published (m3, m8)      = ({comp.m3_paper:.9f}, {comp.m8_paper:.9f})")
print(f"  max deviation           = {comp.max_deviation:.6f}")
print(f"  published state physical: {comp.paper_state_physical}")
print(f"  nullspace state physical: {comp.oracle_state_physical}")

# deviation of the published formula across the rate plane
alphas = np.linspace(0.2, 5.0, 49)
betas = np.linspace(0.2, 5.0, 49)
deviation = np.array([
    [spin1_formula_comparison(Spin1Params(alpha=float(a), beta=float(b))
                              ).max_deviation
     for a in alphas]
    for b in betas
])
print(f"published-formula deviation over the rate plane: "
      f"{deviation.min():.4f} .. {deviation.max():.4f} (never zero)")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
labels = ("p(+1)", "p(0)", "p(-1)")
for idx, label in enumerate(labels):
    ax1.semilogx(ratios, pops[:, idx], label=label)
ax1.semilogx(ratios, purities, "k--", lw=1.0, label="purity")
ax1.set_xlabel("alpha / beta")
ax1.set_ylabel("stationary population")
ax1.set_title("Birth-death stationary populations")
ax1.legend(fontsize=8)

mesh = ax2.pcolormesh(alphas, betas, deviation, shading="auto", cmap="inferno")
ax2.plot(3.0, 1.0, "c*", markersize=12, label="alpha=3, beta=1 (unphysical)")
ax2.set_xlabel("alpha")
ax2.set_ylabel("beta")
ax2.set_title("Published formula vs nullspace: max |difference|")
ax2.legend(loc="upper left", fontsize=8)
fig.colorbar(mesh, ax=ax2)
fig.tight_layout()
path = os.path.join(OUT_DIR, "06_three_level.png")
fig.savefig(path, dpi=150)
print(f"wrote {path}")
