"""Dense Liouvillian superoperators: construction, steady states, propagation.

The master equation handled here is

    d(rho)/dt = -i [H, rho] + sum_k r_k ( O_k rho O_k^dag
                                          - (O_k^dag O_k rho + rho O_k^dag O_k)/2 )

with each jump channel carrying its full prefactor r_k.  States are
vectorized column-major, vec(rho) = rho.flatten(order="F"), which gives the
standard identity vec(A rho B) = (B^T kron A) vec(rho) and therefore

    L = -i (I kron H - H^T kron I)
        + sum_k r_k ( conj(O_k) kron O_k
                      - (I kron O_k^dag O_k + (O_k^dag O_k)^T kron I)/2 ).

Everything is dense; the dimensions in play are 2 and 3, so a d^2 x d^2
matrix is at most 9x9 and direct linear algebra is both exact enough and
fast enough.
"""

import logging
from dataclasses import dataclass

import numpy as np

__all__ = [
    "JumpChannel",
    "Liouvillian",
    "Trajectory",
    "NonUniqueSteadyStateError",
    "IntegrationError",
    "NULLSPACE_TOL",
    "TRACE_DRIFT_ABORT",
    "vectorize",
    "devectorize",
    "build_liouvillian",
    "lindblad_rhs",
    "steady_state",
    "evolve",
    "time_step_for_rates",
]

logger = logging.getLogger(__name__)

# Singular values below this count as zero when deciding whether the
# stationary state is unique.  The physically relevant decay rates in this
# package are 0.025 and above, so the gap between "zero" and the slowest
# relaxation mode is many orders of magnitude.
NULLSPACE_TOL = 1e-8

# An exactly trace-preserving generator keeps tr(rho) = 1 to rounding, so a
# drift beyond this can only mean the fixed step is numerically unstable.
TRACE_DRIFT_ABORT = 1e-6

_STEADY_RESIDUAL_TOL = 1e-10


class NonUniqueSteadyStateError(ValueError):
    """The Liouvillian nullspace has dimension greater than one."""


class IntegrationError(RuntimeError):
    """Fixed-step propagation lost the trace normalization."""


@dataclass(frozen=True)
class JumpChannel:
    """One dissipative channel: a jump operator and its rate prefactor."""

    operator: np.ndarray
    rate: float

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise ValueError(f"jump operator must be square, got shape {op.shape}")
        if not (self.rate >= 0.0):
            raise ValueError(f"channel rate must be nonnegative, got {self.rate!r}")
        object.__setattr__(self, "operator", op)

    @property
    def dim(self) -> int:
        return self.operator.shape[0]


@dataclass(frozen=True)
class Liouvillian:
    """A dense superoperator acting on column-major vectorized states."""

    dim: int
    matrix: np.ndarray

    def apply(self, rho) -> np.ndarray:
        """Right-hand side d(rho)/dt for a given state."""
        return devectorize(self.matrix @ vectorize(rho), self.dim)


@dataclass(frozen=True)
class Trajectory:
    """Fixed-step propagation record: one state per accepted step."""

    times: np.ndarray
    states: np.ndarray
    max_trace_drift: float
    max_hermiticity_defect: float
    renormalizations: int

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def vectorize(rho) -> np.ndarray:
    """Column-major vec: stack the columns of rho."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def devectorize(vec, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return np.asarray(vec, dtype=complex).reshape((dim, dim), order="F")


def _check_hamiltonian(hamiltonian) -> np.ndarray:
    h = np.asarray(hamiltonian, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"Hamiltonian must be square, got shape {h.shape}")
    defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if defect > 1e-12 * max(1.0, float(np.max(np.abs(h)))):
        raise ValueError(f"Hamiltonian is not Hermitian, defect {defect:.3e}")
    return h


def build_liouvillian(hamiltonian, channels) -> Liouvillian:
    """Assemble the dense generator for -i[H, .] plus the given channels.

    Every channel operator must share the Hamiltonian's dimension; rates are
    used exactly as given (no implicit factors of 1/2).
    """
    h = _check_hamiltonian(hamiltonian)
    dim = h.shape[0]
    eye = np.eye(dim, dtype=complex)
    lmat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for ch in channels:
        if ch.dim != dim:
            raise ValueError(
                f"channel dimension {ch.dim} does not match Hamiltonian dimension {dim}"
            )
        op = ch.operator
        opdop = op.conj().T @ op
        lmat = lmat + ch.rate * (
            np.kron(op.conj(), op)
            - 0.5 * (np.kron(eye, opdop) + np.kron(opdop.T, eye))
        )
    return Liouvillian(dim=dim, matrix=lmat)


def lindblad_rhs(hamiltonian, channels, rho) -> np.ndarray:
    """d(rho)/dt evaluated directly from matrix products.

    Same master equation as :func:`build_liouvillian`, written without the
    Kronecker lift; the two routes are compared in the test suite.
    """
    h = _check_hamiltonian(hamiltonian)
    rho = np.asarray(rho, dtype=complex)
    out = -1j * (h @ rho - rho @ h)
    for ch in channels:
        op = ch.operator
        opdop = op.conj().T @ op
        out = out + ch.rate * (
            op @ rho @ op.conj().T - 0.5 * (opdop @ rho + rho @ opdop)
        )
    return out


def _trace_row(dim: int) -> np.ndarray:
    row = np.zeros(dim * dim, dtype=complex)
    row[:: dim + 1] = 1.0
    return row


def steady_state(liouvillian: Liouvillian) -> np.ndarray:
    """Solve L vec(rho) = 0 with tr(rho) = 1 for the unique stationary state.

    Uniqueness is decided by a rank check: more than one singular value of L
    below NULLSPACE_TOL means several stationary states exist and a
    NonUniqueSteadyStateError is raised.  The constrained solve itself is an
    augmented least-squares problem, which is exact for a one-dimensional
    nullspace.
    """
    lmat = liouvillian.matrix
    dim = liouvillian.dim
    singvals = np.linalg.svd(lmat, compute_uv=False)
    null_dim = int(np.sum(singvals < NULLSPACE_TOL))
    if null_dim == 0:
        raise ValueError(
            "generator has a trivial nullspace; it cannot be trace preserving"
        )
    if null_dim > 1:
        raise NonUniqueSteadyStateError(
            f"stationary state is not unique: nullspace dimension {null_dim}"
        )
    augmented = np.vstack([lmat, _trace_row(dim)])
    target = np.zeros(dim * dim + 1, dtype=complex)
    target[-1] = 1.0
    vec, *_ = np.linalg.lstsq(augmented, target, rcond=None)
    rho = devectorize(vec, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.max(np.abs(lmat @ vectorize(rho))))
    if residual > _STEADY_RESIDUAL_TOL:
        raise ValueError(
            f"stationary solve left residual {residual:.3e} > {_STEADY_RESIDUAL_TOL:g}"
        )
    return rho


def time_step_for_rates(*scales: float) -> float:
    """Fixed step resolving the fastest supplied rate: 0.01 / max(scales, 1)."""
    return 0.01 / max(1.0, *[abs(s) for s in scales])


def evolve(liouvillian: Liouvillian, rho0, t_final: float, dt: float) -> Trajectory:
    """Propagate rho0 with classical fixed-step RK4, recording every step.

    The step count is floor(t_final/dt) full steps plus one shortened step
    landing exactly on t_final.  The trace is monitored each step: drift
    beyond TRACE_DRIFT_ABORT aborts with a diagnostic (the step is too large
    for the fastest rate), smaller drift is renormalized away and counted.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if t_final < 0.0:
        raise ValueError(f"t_final must be nonnegative, got {t_final!r}")
    dim = liouvillian.dim
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (dim, dim):
        raise ValueError(
            f"initial state shape {rho0.shape} does not match dimension {dim}"
        )
    lmat = liouvillian.matrix

    n_full = int(np.floor(t_final / dt + 1e-12))
    remainder = t_final - n_full * dt
    if remainder <= dt * 1e-9:
        remainder = 0.0
    n_steps = n_full + (1 if remainder else 0)

    times = np.empty(n_steps + 1)
    states = np.empty((n_steps + 1, dim, dim), dtype=complex)
    times[0] = 0.0
    states[0] = rho0

    vec = vectorize(rho0)
    diag = slice(0, dim * dim, dim + 1)
    max_drift = 0.0
    max_herm = 0.0
    renorms = 0

    for step in range(1, n_steps + 1):
        h = dt if step <= n_full else remainder
        k1 = lmat @ vec
        k2 = lmat @ (vec + (0.5 * h) * k1)
        k3 = lmat @ (vec + (0.5 * h) * k2)
        k4 = lmat @ (vec + h * k3)
        vec = vec + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        trace = vec[diag].sum().real
        drift = abs(trace - 1.0)
        if drift > max_drift:
            max_drift = drift
        if not np.isfinite(drift) or drift > TRACE_DRIFT_ABORT:
            raise IntegrationError(
                f"trace drifted by {drift:.3e} at t = {times[step - 1] + h:.6g} "
                f"(step {step}, dt = {dt:g}); the step is too large for the "
                "fastest rate in the generator"
            )
        if drift > 0.0:
            vec = vec / trace
            if drift > 1e-12:
                renorms += 1

        rho = devectorize(vec, dim)
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > max_herm:
            max_herm = herm
        times[step] = step * dt if step <= n_full else t_final
        states[step] = rho

    if renorms:
        logger.debug(
            "renormalized trace on %d of %d steps (max drift %.3e)",
            renorms,
            n_steps,
            max_drift,
        )
    return Trajectory(
        times=times,
        states=states,
        max_trace_drift=max_drift,
        max_hermiticity_defect=max_herm,
        renormalizations=renorms,
    )
