"""Husimi phase-space representation and the synchronization measure.

A spin coherent state |theta, phi> has amplitudes
(cos(theta/2), e^{i phi} sin(theta/2)) in the (|up>, |down>) basis, so its
Bloch vector is the unit vector with colatitude theta and azimuth phi.  For
a qubit the Husimi function

    Q(theta, phi) = <theta, phi| rho |theta, phi> / (2 pi)
                  = (1 + mx cos(phi) sin(theta) + my sin(phi) sin(theta)
                       + mz cos(theta)) / (4 pi)

is an affine function of the Bloch vector, normalized to one over the
sphere.  Integrating out the colatitude and subtracting the uniform
background leaves the phase distribution

    S(phi) = int_0^pi Q(theta, phi) sin(theta) dtheta - 1/(2 pi)
           = (mx cos(phi) + my sin(phi)) / 8,

whose height and argmax measure how strongly and at which phase the state
is locked.  Both closed forms are exact; the defining integrals are kept as
independent cross-checks in the test suite.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .states import BlochVector3, SystemParams, as_bloch, bloch_from_density
from .twolevel import expansion_coeffs, steady_state_closed_form

__all__ = [
    "SpinCoherentState",
    "coherent_state",
    "husimi_q",
    "QSurface",
    "q_surface",
    "sync_measure",
    "SyncMaximum",
    "max_sync",
    "ArnoldTongue",
    "arnold_tongue",
]

_ANGLE_SLACK = 1e-12


@dataclass(frozen=True)
class SpinCoherentState:
    """Pure qubit state pointing along (theta, phi) on the Bloch sphere."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (-_ANGLE_SLACK <= self.theta <= math.pi + _ANGLE_SLACK):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (-math.pi - _ANGLE_SLACK <= self.phi <= math.pi + _ANGLE_SLACK):
            raise ValueError(f"phi must lie in [-pi, pi], got {self.phi!r}")

    @property
    def amplitudes(self) -> np.ndarray:
        """(cos(theta/2), e^{i phi} sin(theta/2)) in the (|up>, |down>) basis."""
        half = 0.5 * self.theta
        return np.array(
            [math.cos(half), np.exp(1j * self.phi) * math.sin(half)], dtype=complex
        )

    def bloch(self) -> BlochVector3:
        return BlochVector3(
            math.sin(self.theta) * math.cos(self.phi),
            math.sin(self.theta) * math.sin(self.phi),
            math.cos(self.theta),
        )

    def projector(self) -> np.ndarray:
        amps = self.amplitudes
        return np.outer(amps, amps.conj())


def coherent_state(theta: float, phi: float) -> SpinCoherentState:
    """Spin coherent state at colatitude theta, azimuth phi."""
    return SpinCoherentState(float(theta), float(phi))


def husimi_q(rho, theta, phi):
    """Husimi function of a 2x2 state, broadcasting over theta and phi.

    Evaluates the closed form (1 + m . n(theta, phi)) / (4 pi); scalars in,
    scalar out.
    """
    m = bloch_from_density(rho)
    theta_arr = np.asarray(theta, dtype=float)
    phi_arr = np.asarray(phi, dtype=float)
    sin_t = np.sin(theta_arr)
    q = (
        1.0
        + m.mx * np.cos(phi_arr) * sin_t
        + m.my * np.sin(phi_arr) * sin_t
        + m.mz * np.cos(theta_arr)
    ) / (4.0 * math.pi)
    if np.ndim(q) == 0:
        return float(q)
    return q


@dataclass(frozen=True)
class QSurface:
    """Husimi function sampled on a regular (theta, phi) grid."""

    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray

    def sphere_integral(self) -> float:
        """Simpson quadrature of Q over the sphere; 1 for a normalized state."""
        weighted = self.values * np.sin(self.theta)[:, None]
        return float(simpson(simpson(weighted, x=self.phi, axis=1), x=self.theta))

    def argmax(self) -> tuple[float, float]:
        """Grid node (theta, phi) where Q is largest."""
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.theta[i]), float(self.phi[j])


def q_surface(rho, n_theta: int = 181, n_phi: int = 361) -> QSurface:
    """Sample the Husimi function on an inclusive uniform grid.

    theta runs over [0, pi] and phi over [-pi, pi]; at the default
    resolution the Simpson sphere integral reproduces the normalization to
    a few parts in 1e9.
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError("need at least two nodes per axis")
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(-math.pi, math.pi, n_phi)
    values = husimi_q(rho, theta[:, None], phi[None, :])
    return QSurface(theta=theta, phi=phi, values=values)


def sync_measure(m, phi):
    """Phase distribution S(phi) = (mx cos(phi) + my sin(phi)) / 8.

    phi may be a scalar or an array.  Identically zero when the transverse
    Bloch components vanish (no drive, or balanced rates).
    """
    m = as_bloch(m)
    phi_arr = np.asarray(phi, dtype=float)
    s = (m.mx * np.cos(phi_arr) + m.my * np.sin(phi_arr)) / 8.0
    if np.ndim(s) == 0:
        return float(s)
    return s


@dataclass(frozen=True)
class SyncMaximum:
    """Peak of S(phi): height, locked phase, and a degeneracy flag.

    With no transverse polarization S is flat at zero; phi_star is then
    reported as 0.0 with degenerate set instead of NaN.
    """

    s_max: float
    phi_star: float
    degenerate: bool


def max_sync(m) -> SyncMaximum:
    """Height and location of the peak of the phase distribution."""
    m = as_bloch(m)
    transverse = m.transverse
    s_max = transverse / 8.0
    if s_max == 0.0:
        return SyncMaximum(0.0, 0.0, True)
    return SyncMaximum(s_max, math.atan2(m.my, m.mx), False)


@dataclass(frozen=True)
class ArnoldTongue:
    """Peak synchronization over a (drive strength, detuning) grid.

    Arrays are indexed [i, j] for (epsilon[i], delta[j]).  Cells where the
    stationary state does not exist are zeroed and masked in valid.
    """

    epsilon: np.ndarray
    delta: np.ndarray
    s_max: np.ndarray
    phi_star: np.ndarray
    deformation: np.ndarray
    valid: np.ndarray


def arnold_tongue(params: SystemParams, eps_values, delta_values) -> ArnoldTongue:
    """Evaluate max_sync over a grid of drive strengths and detunings.

    The rates are taken from params; epsilon and delta are replaced cell by
    cell.  A cell whose parameters are rejected (negative drive, vanishing
    rate sum) is marked invalid and the sweep continues.
    """
    eps_arr = np.asarray(eps_values, dtype=float).reshape(-1)
    delta_arr = np.asarray(delta_values, dtype=float).reshape(-1)
    shape = (eps_arr.size, delta_arr.size)
    s_max = np.zeros(shape)
    phi_star = np.zeros(shape)
    deformation = np.zeros(shape)
    valid = np.zeros(shape, dtype=bool)
    for i, eps in enumerate(eps_arr):
        for j, delta in enumerate(delta_arr):
            try:
                cell = SystemParams(
                    gamma_g=params.gamma_g,
                    gamma_d=params.gamma_d,
                    epsilon=float(eps),
                    delta=float(delta),
                )
            except ValueError:
                continue
            peak = max_sync(steady_state_closed_form(cell))
            s_max[i, j] = peak.s_max
            phi_star[i, j] = peak.phi_star
            deformation[i, j] = expansion_coeffs(cell).deformation_scale * cell.epsilon**2
            valid[i, j] = True
    return ArnoldTongue(
        epsilon=eps_arr,
        delta=delta_arr,
        s_max=s_max,
        phi_star=phi_star,
        deformation=deformation,
        valid=valid,
    )
