"""Undriven two-level dynamics: relaxation onto a circle of pure states.

Without a signal the stationary state is mixed, sitting at height
mz = (gamma_g - gamma_d)/(gamma_g + gamma_d) on the z axis.  One natural
way to read that state is as a uniform mixture of pure states on the
circle of polar angle theta_0 = arccos(mz): every member precesses at the
natural frequency, so the mixture is the motionless average of a rotating
ensemble.  This script checks the decomposition numerically and draws the
relaxation of a few initial states onto the circle's axis.

Run:  python3 demos/01_undriven_limit_cycle.py
"""

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qsync import (
    BlochVector3,
    SystemParams,
    bloch_from_density,
    density_from_bloch,
    evolve,
    limit_cycle_circle,
    steady_state_closed_form,
    tls_liouvillian,
)
from qsync.twolevel import default_time_step

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT_DIR, exist_ok=True)

# 3:1 gain-to-loss ratio puts the circle at 60 degrees
params = SystemParams(gamma_g=3.0, gamma_d=1.0, omega0=1.0)
m_ss = steady_state_closed_form(params)
circle = limit_cycle_circle(params)

print(f"rates gamma_g = {params.gamma_g}, gamma_d = {params.gamma_d}")
print(f"stationary Bloch vector: ({m_ss.mx}, {m_ss.my}, {m_ss.mz})")
print(f"circle polar angle: {circle.polar_angle:.6f} rad "
      f"(= {math.degrees(circle.polar_angle):.1f} deg)")
print(f"fixed point instead of a circle: {circle.is_fixed_point}")

# the uniform mixture over the circle must reproduce the mixed steady state
rho_mix = circle.ensemble_density(360)
rho_ss = density_from_bloch(m_ss)
print(f"ensemble reconstruction error: {np.max(np.abs(rho_mix - rho_ss)):.2e}")

# relax a few pure states; all mz curves collapse onto cos(theta_0)
liou = tls_liouvillian(params)
dt = default_time_step(params)
fig, ax = plt.subplots(figsize=(6.0, 4.0))
starts = [
    BlochVector3(0.0, 0.0, -1.0),
    BlochVector3(1.0, 0.0, 0.0),
    BlochVector3(0.0, -0.6, 0.8),
]
for m0 in starts:
    traj = evolve(liou, density_from_bloch(m0), 4.0, dt)
    mz = [bloch_from_density(rho).mz for rho in traj.states]
    ax.plot(traj.times, mz, label=f"start ({m0.mx:g}, {m0.my:g}, {m0.mz:g})")
ax.axhline(m_ss.mz, color="k", ls="--", lw=1.0, label="stationary mz")
ax.set_xlabel("time")
ax.set_ylabel("mz")
ax.set_title("Relaxation onto the undriven stationary height")
ax.legend(fontsize=8)
fig.tight_layout()
path = os.path.join(OUT_DIR, "01_undriven_relaxation.png")
fig.savefig(path, dpi=150)
print(f"wrote {path}")
