"""Closed-form results for the driven dissipative two-level system.

In the frame rotating at the drive frequency, the Bloch vector obeys

    dmx/dt = -(gamma_d + gamma_g)/4 * mx - delta * my + epsilon * mz
    dmy/dt =  delta * mx - (gamma_d + gamma_g)/4 * my
    dmz/dt =  ( gamma_g (1 - mz) - gamma_d (1 + mz) - 2 epsilon mx ) / 2

where epsilon is the drive strength and delta the detuning.  Setting the
right-hand side to zero and eliminating my and mz gives the unique
stationary point

    mx =  4 epsilon (gamma_g - gamma_d) / D
    my = 16 epsilon delta (gamma_g - gamma_d) / ((gamma_d + gamma_g) D)
    mz = (gamma_g - gamma_d) ((gamma_d + gamma_g)^2 + 16 delta^2)
         / ((gamma_d + gamma_g) D)

with D = (gamma_d + gamma_g)^2 + 8 (epsilon^2 + 2 delta^2).  Note the mz
numerator carries gamma_g - gamma_d: that is forced by the zero-drive limit
mz -> (gamma_g - gamma_d)/(gamma_g + gamma_d), by stationarity under the
equations above, and by the superoperator nullspace.  A sign-flipped variant
sometimes quoted for this solution fails all three checks; the test suite
pins the behaviour.

Without the drive the stationary manifold of pure-state phases survives:
every Bloch vector on the circle at polar angle
theta0 = arccos((gamma_g - gamma_d)/(gamma_g + gamma_d)) precesses rigidly
in the lab frame, and the mixed stationary state is the phase average over
that circle.
"""

import math
from dataclasses import dataclass

import numpy as np

from .liouville import JumpChannel, Liouvillian, build_liouvillian
from .liouville import time_step_for_rates as _default_step
from .states import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Y, SIGMA_Z, BlochVector3, SystemParams, as_bloch, density_from_bloch

__all__ = [
    "DEFORMATION_THRESHOLD",
    "driven_hamiltonian",
    "dissipative_channels",
    "tls_liouvillian",
    "bloch_ode_rhs",
    "steady_state_closed_form",
    "rotate_to_lab_frame",
    "LimitCycleCircle",
    "limit_cycle_circle",
    "ExpansionCoeffs",
    "expansion_coeffs",
    "deformation_parameter",
    "default_time_step",
]

# Above this value of deformation_parameter the drive visibly distorts the
# undriven cycle and the weak-drive (synchronization) picture degrades.
DEFORMATION_THRESHOLD = 0.1


def driven_hamiltonian(params: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian (delta sigma_z + epsilon sigma_y) / 2."""
    return 0.5 * (params.delta * SIGMA_Z + params.epsilon * SIGMA_Y)


def dissipative_channels(params: SystemParams) -> list[JumpChannel]:
    """Gain and damping channels (sigma_+, gamma_g/2) and (sigma_-, gamma_d/2)."""
    return [
        JumpChannel(SIGMA_PLUS, 0.5 * params.gamma_g),
        JumpChannel(SIGMA_MINUS, 0.5 * params.gamma_d),
    ]


def tls_liouvillian(params: SystemParams) -> Liouvillian:
    """Dense generator of the driven two-level master equation."""
    return build_liouvillian(driven_hamiltonian(params), dissipative_channels(params))


def bloch_ode_rhs(params: SystemParams, m) -> BlochVector3:
    """Time derivative of the Bloch vector in the rotating frame."""
    m = as_bloch(m)
    quarter = 0.25 * (params.gamma_d + params.gamma_g)
    return BlochVector3(
        -quarter * m.mx - params.delta * m.my + params.epsilon * m.mz,
        params.delta * m.mx - quarter * m.my,
        0.5
        * (
            params.gamma_g * (1.0 - m.mz)
            - params.gamma_d * (1.0 + m.mz)
            - 2.0 * params.epsilon * m.mx
        ),
    )


def steady_state_closed_form(params: SystemParams) -> BlochVector3:
    """Unique stationary Bloch vector of the driven system (module docstring)."""
    gsum = params.gamma_d + params.gamma_g
    gdiff = params.gamma_g - params.gamma_d
    eps = params.epsilon
    delta = params.delta
    big_d = gsum * gsum + 8.0 * (eps * eps + 2.0 * delta * delta)
    return BlochVector3(
        4.0 * eps * gdiff / big_d,
        16.0 * eps * delta * gdiff / (gsum * big_d),
        gdiff * (gsum * gsum + 16.0 * delta * delta) / (gsum * big_d),
    )


def rotate_to_lab_frame(m, omega: float, t: float) -> BlochVector3:
    """Undo the rotating-frame transformation at time t.

    The lab-frame vector precesses about z at the drive frequency:
    mx' = mx cos(wt) - my sin(wt), my' = mx sin(wt) + my cos(wt), mz' = mz.
    """
    m = as_bloch(m)
    c = math.cos(omega * t)
    s = math.sin(omega * t)
    return BlochVector3(m.mx * c - m.my * s, m.mx * s + m.my * c, m.mz)


@dataclass(frozen=True)
class LimitCycleCircle:
    """Stationary circle of the undriven system.

    polar_angle is the common colatitude theta0 of the pure states on the
    circle; angular_frequency is the lab-frame precession rate (the level
    splitting), or None when it was never specified.  When one of the rates
    vanishes the circle collapses to a pole and is_fixed_point is set.
    """

    polar_angle: float
    angular_frequency: float | None
    is_fixed_point: bool

    def steady_bloch(self) -> BlochVector3:
        """Bloch vector of the phase-averaged (mixed) stationary state."""
        return BlochVector3(0.0, 0.0, math.cos(self.polar_angle))

    def circle_blochs(self, n: int) -> np.ndarray:
        """n pure-state Bloch vectors equally spaced in phase, shape (n, 3)."""
        if n < 1:
            raise ValueError("need at least one phase sample")
        phases = 2.0 * np.pi * np.arange(n) / n
        sin0 = math.sin(self.polar_angle)
        cos0 = math.cos(self.polar_angle)
        return np.column_stack(
            [sin0 * np.cos(phases), sin0 * np.sin(phases), np.full(n, cos0)]
        )

    def ensemble_density(self, n: int = 360) -> np.ndarray:
        """Equal-weight mixture of n circle states; converges to the steady state."""
        rho = np.zeros((2, 2), dtype=complex)
        for row in self.circle_blochs(n):
            rho += density_from_bloch(row)
        return rho / n


def limit_cycle_circle(params: SystemParams) -> LimitCycleCircle:
    """Stationary pure-state circle of the undriven system.

    Requires epsilon = 0; with a drive the phase degeneracy is broken and no
    such circle exists.  gamma_d = 0 or gamma_g = 0 collapses the circle to
    the corresponding pole, returned with is_fixed_point set rather than
    raising, so sweeps over rate ratios stay total.
    """
    if params.epsilon != 0.0:
        raise ValueError("the stationary circle only exists without a drive")
    if params.gamma_d == 0.0:
        return LimitCycleCircle(0.0, params.omega0, True)
    if params.gamma_g == 0.0:
        return LimitCycleCircle(math.pi, params.omega0, True)
    cos0 = (params.gamma_g - params.gamma_d) / params.rate_sum
    return LimitCycleCircle(math.acos(cos0), params.omega0, False)


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Weak-drive response of the stationary state.

    To leading order in epsilon the stationary Bloch vector is

        mx ~ in_phase_slope * epsilon
        my ~ quadrature_slope * epsilon
        mz ~ undriven_mz

    and the exact solution resums to m = (in_phase_slope * eps,
    quadrature_slope * eps, undriven_mz) / (1 + deformation_scale * eps^2),
    so deformation_scale * epsilon^2 measures how strongly the drive
    deforms the undriven cycle.
    """

    in_phase_slope: float
    quadrature_slope: float
    undriven_mz: float
    deformation_scale: float


def expansion_coeffs(params: SystemParams) -> ExpansionCoeffs:
    """Compute the weak-drive coefficients at the given rates and detuning."""
    gsum = params.gamma_d + params.gamma_g
    gdiff = params.gamma_g - params.gamma_d
    denom = gsum * gsum + 16.0 * params.delta * params.delta
    return ExpansionCoeffs(
        in_phase_slope=4.0 * gdiff / denom,
        quadrature_slope=16.0 * params.delta * gdiff / (gsum * denom),
        undriven_mz=gdiff / gsum,
        deformation_scale=8.0 / denom,
    )


def deformation_parameter(params: SystemParams) -> float:
    """Dimensionless drive-squared scale deformation_scale * epsilon^2.

    Small values mean the drive merely picks a phase on the undriven cycle;
    values above DEFORMATION_THRESHOLD mean it visibly deforms the cycle.
    """
    return expansion_coeffs(params).deformation_scale * params.epsilon**2


def default_time_step(params: SystemParams) -> float:
    """Fixed RK4 step resolving the fastest two-level rate."""
    return _default_step(params.rate_sum, params.delta, params.epsilon)
