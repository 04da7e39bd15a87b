"""Value types shared by all models: parameters, Bloch vectors, density matrices.

Conventions used consistently across the package:

* hbar = 1, so every rate, drive strength and detuning carries the same
  inverse-time unit.
* The two-level basis order is (|up>, |down>) with |up> the mz = +1 state,
  and rho = (1 + m . sigma)/2 relates a state to its Bloch vector m.
* Density matrices are plain complex numpy arrays.  Validity is reported by
  :func:`validate_state` against the module tolerances instead of being
  enforced by a wrapper class; constructors that would produce an unphysical
  state (for example a Bloch vector outside the unit ball) raise instead.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "POSITIVITY_TOL",
    "BLOCH_NORM_TOL",
    "DegenerateModelError",
    "SystemParams",
    "BlochVector3",
    "as_bloch",
    "StateDiagnostics",
    "density_from_bloch",
    "bloch_from_density",
    "validate_state",
]

# Pauli matrices and ladder operators in the (|up>, |down>) basis.
# SIGMA_PLUS raises |down> to |up>, i.e. it feeds the excited state.
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

# Acceptance thresholds for calling a matrix a physical state.  Hermiticity
# and trace defects are pure rounding noise for anything produced here;
# the eigenvalue slack is looser because nullspace solves and long
# integrations push tiny negative populations of order 1e-12..1e-10.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-9
BLOCH_NORM_TOL = 1e-9


class DegenerateModelError(ValueError):
    """Raised when the requested rates admit no unique stationary state."""


@dataclass(frozen=True)
class SystemParams:
    """Rates and drive settings of the dissipative two-level model.

    gamma_g and gamma_d are the incoherent gain and damping rates, epsilon
    is the drive strength and delta = omega0 - omega the detuning between
    the level splitting omega0 and the drive frequency omega.  The two
    frequencies themselves are optional; they only matter when rotating
    rotating-frame results back to the lab frame.
    """

    gamma_g: float
    gamma_d: float
    epsilon: float = 0.0
    delta: float = 0.0
    omega0: float | None = None
    omega: float | None = None

    def __post_init__(self):
        if self.gamma_g < 0.0 or self.gamma_d < 0.0:
            raise ValueError("gamma_g and gamma_d must be nonnegative")
        if self.gamma_g + self.gamma_d <= 0.0:
            raise DegenerateModelError(
                "gamma_g + gamma_d must be positive; without dissipation "
                "every state is stationary"
            )
        if self.epsilon < 0.0:
            raise ValueError(
                "epsilon must be nonnegative; its sign is a phase convention"
            )
        if not math.isfinite(self.gamma_g + self.gamma_d + self.epsilon + self.delta):
            raise ValueError("parameters must be finite")
        if self.omega0 is not None and self.omega is not None:
            expected = self.omega0 - self.omega
            tol = 1e-12 * max(1.0, abs(expected), abs(self.delta))
            if abs(self.delta - expected) > tol:
                raise ValueError(
                    f"delta={self.delta!r} is inconsistent with "
                    f"omega0 - omega = {expected!r}"
                )

    @property
    def rate_sum(self) -> float:
        """Total dissipation rate gamma_g + gamma_d."""
        return self.gamma_g + self.gamma_d


@dataclass(frozen=True)
class BlochVector3:
    """A point (mx, my, mz) in Bloch space.

    Physical states live in the closed unit ball; time derivatives and other
    intermediate vectors may lie outside it, so the radius is checked where
    a state is actually required (see :func:`density_from_bloch`), not here.
    """

    mx: float
    my: float
    mz: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.mx * self.mx + self.my * self.my + self.mz * self.mz)

    @property
    def transverse(self) -> float:
        """In-plane radius sqrt(mx^2 + my^2)."""
        return math.hypot(self.mx, self.my)

    def as_array(self) -> np.ndarray:
        return np.array([self.mx, self.my, self.mz], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "BlochVector3":
        arr = np.asarray(arr, dtype=float).reshape(-1)
        if arr.size != 3:
            raise ValueError("expected exactly three Bloch components")
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))


def as_bloch(m) -> BlochVector3:
    """Coerce a BlochVector3 or any 3-sequence to a BlochVector3."""
    if isinstance(m, BlochVector3):
        return m
    return BlochVector3.from_array(m)


def density_from_bloch(m) -> np.ndarray:
    """Map a Bloch vector to the 2x2 density matrix (1 + m . sigma)/2.

    Rejects vectors outside the unit ball (beyond rounding slack), since the
    result would not be positive semidefinite.
    """
    m = as_bloch(m)
    if m.norm > 1.0 + BLOCH_NORM_TOL:
        raise ValueError(
            f"Bloch vector has norm {m.norm!r} > 1; not a physical state"
        )
    return np.array(
        [
            [0.5 * (1.0 + m.mz), 0.5 * (m.mx - 1j * m.my)],
            [0.5 * (m.mx + 1j * m.my), 0.5 * (1.0 - m.mz)],
        ],
        dtype=complex,
    )


def bloch_from_density(rho) -> BlochVector3:
    """Extract (mx, my, mz) from a 2x2 density matrix.

    Inverse of :func:`density_from_bloch` on valid states: mx = 2 Re rho01,
    my = -2 Im rho01, mz = rho00 - rho11.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    return BlochVector3(
        2.0 * rho[0, 1].real,
        -2.0 * rho[0, 1].imag,
        (rho[0, 0] - rho[1, 1]).real,
    )


@dataclass(frozen=True)
class StateDiagnostics:
    """Result of checking a matrix against the density-matrix requirements."""

    dim: int
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    hermitian_ok: bool
    trace_ok: bool
    positive_ok: bool

    @property
    def passed(self) -> bool:
        return self.hermitian_ok and self.trace_ok and self.positive_ok


def validate_state(rho) -> StateDiagnostics:
    """Diagnose whether rho is an acceptable density matrix.

    Never raises for a square 2x2 or 3x3 input; all three checks (Hermiticity,
    unit trace, positivity within POSITIVITY_TOL) are reported so callers can
    decide what to do with a near-miss.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    dim = rho.shape[0]
    if dim not in (2, 3):
        raise ValueError(f"expected dimension 2 or 3, got {dim}")
    herm_defect = float(np.max(np.abs(rho - rho.conj().T)))
    trace_defect = float(abs(np.trace(rho) - 1.0))
    # Eigenvalues of the Hermitian part; the anti-Hermitian remainder is
    # already captured by herm_defect.
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    return StateDiagnostics(
        dim=dim,
        hermiticity_defect=herm_defect,
        trace_defect=trace_defect,
        min_eigenvalue=min_eig,
        hermitian_ok=herm_defect <= HERMITICITY_TOL,
        trace_ok=trace_defect <= TRACE_TOL,
        positive_ok=min_eig >= -POSITIVITY_TOL,
    )
