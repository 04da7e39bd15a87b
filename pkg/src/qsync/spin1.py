"""Three-level (spin-1) extension: incoherent raising and lowering only.

Basis order is (|1>, |0>, |-1>) and the ladder operators carry the spin-1
matrix elements sqrt(2):

    S+ = sqrt(2) * ( |1><0| + |0><-1| ),    S- = S+^dag.

The master equation d(rho)/dt = alpha D[S+] rho + beta D[S-] rho has no
Hamiltonian part.  On populations it reduces to the birth-death chain

    dp1/dt  = 2 alpha p0  - 2 beta  p1
    dp-1/dt = 2 beta  p0  - 2 alpha p-1

whose detailed balance fixes the stationary populations at
(alpha^2, alpha beta, beta^2) / (alpha^2 + alpha beta + beta^2); all
coherences decay.  That nullspace solution is the ground truth here.

States are parametrized by the eight Gell-Mann components m1..m8 through

    rho = (1/sqrt(3)) * [[ 1/sqrt(3) + m3 + m8/sqrt(3),  m1 - i m2,  m4 - i m5 ],
                         [ m1 + i m2,  1/sqrt(3) - m3 + m8/sqrt(3),  m6 - i m7 ],
                         [ m4 + i m5,  m6 + i m7,  1/sqrt(3) - 2 m8/sqrt(3)    ]]

which is Hermitian with unit trace by construction and sends the anchor
(m3, m8) = (-sqrt(3)/2, 1/2) to the projector diag(0, 1, 0) exactly.

A closed-form stationary (m3, m8) that circulates alongside this model is
kept verbatim in :func:`spin1_paper_formula` for comparison purposes.  It
does not agree with the nullspace solution; for alpha = 3, beta = 1 it even
fails positivity.  :func:`spin1_formula_comparison` reports the deviation
instead of hiding it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .liouville import JumpChannel, Liouvillian, build_liouvillian, steady_state
from .states import DegenerateModelError, validate_state

__all__ = [
    "S_PLUS",
    "S_MINUS",
    "Spin1Params",
    "GellmannVector8",
    "gellmann_to_density",
    "density_to_gellmann",
    "spin1_liouvillian",
    "spin1_steady_oracle",
    "spin1_paper_formula",
    "Spin1FormulaComparison",
    "spin1_formula_comparison",
    "Spin1LimitCycleReport",
    "spin1_limit_cycle_report",
]

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

S_PLUS = np.array(
    [[0.0, _SQRT2, 0.0], [0.0, 0.0, _SQRT2], [0.0, 0.0, 0.0]], dtype=complex
)
S_MINUS = S_PLUS.conj().T


@dataclass(frozen=True)
class Spin1Params:
    """Raising and lowering rates of the three-level model."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0.0 or self.beta < 0.0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.alpha + self.beta <= 0.0:
            raise DegenerateModelError(
                "alpha + beta must be positive; without dissipation every "
                "state is stationary"
            )


@dataclass(frozen=True)
class GellmannVector8:
    """Gell-Mann components m1..m8 of a three-level state.

    Any real vector is representable; whether the reconstructed matrix is a
    physical state is reported by validate_state, not enforced here.
    """

    m1: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    m4: float = 0.0
    m5: float = 0.0
    m6: float = 0.0
    m7: float = 0.0
    m8: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.m1, self.m2, self.m3, self.m4, self.m5, self.m6, self.m7, self.m8]
        )


def gellmann_to_density(m: GellmannVector8) -> np.ndarray:
    """Reconstruct the 3x3 density matrix from Gell-Mann components.

    Hermitian by construction and with unit trace up to one rounding step;
    the diagonal is grouped as (1 + m8)/3 +- m3/sqrt(3) so that the anchor
    (m3, m8) = (-sqrt(3)/2, 1/2) lands on diag(0, 1, 0) without rounding.
    """
    base = (1.0 + m.m8) / 3.0
    split = m.m3 / _SQRT3
    d1 = base + split
    d2 = base - split
    d3 = (1.0 - 2.0 * m.m8) / 3.0
    c12 = (m.m1 - 1j * m.m2) / _SQRT3
    c13 = (m.m4 - 1j * m.m5) / _SQRT3
    c23 = (m.m6 - 1j * m.m7) / _SQRT3
    return np.array(
        [
            [d1, c12, c13],
            [np.conj(c12), d2, c23],
            [np.conj(c13), np.conj(c23), d3],
        ],
        dtype=complex,
    )


def density_to_gellmann(rho) -> GellmannVector8:
    """Extract Gell-Mann components; inverse of :func:`gellmann_to_density`."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {rho.shape}")
    return GellmannVector8(
        m1=_SQRT3 * rho[1, 0].real,
        m2=_SQRT3 * rho[1, 0].imag,
        m3=0.5 * _SQRT3 * (rho[0, 0] - rho[1, 1]).real,
        m4=_SQRT3 * rho[2, 0].real,
        m5=_SQRT3 * rho[2, 0].imag,
        m6=_SQRT3 * rho[2, 1].real,
        m7=_SQRT3 * rho[2, 1].imag,
        m8=0.5 * (1.0 - 3.0 * rho[2, 2].real),
    )


def spin1_liouvillian(params: Spin1Params) -> Liouvillian:
    """Dense generator with channels (S+, alpha) and (S-, beta), H = 0."""
    return build_liouvillian(
        np.zeros((3, 3), dtype=complex),
        [JumpChannel(S_PLUS, params.alpha), JumpChannel(S_MINUS, params.beta)],
    )


def spin1_steady_oracle(params: Spin1Params) -> np.ndarray:
    """Stationary state from the superoperator nullspace.

    Diagonal with populations (alpha^2, alpha beta, beta^2) normalized;
    this is the authoritative stationary solution of the model.
    """
    return steady_state(spin1_liouvillian(params))


def spin1_paper_formula(params: Spin1Params) -> tuple[float, float]:
    """Closed-form stationary (m3, m8) kept exactly as published.

    Evaluated verbatim for comparison against the nullspace solution; the
    two disagree, see :func:`spin1_formula_comparison`.  The m8 expression
    divides by alpha, so alpha = 0 is rejected.
    """
    a = params.alpha
    b = params.beta
    if a == 0.0:
        raise ValueError("the published m8 expression is singular at alpha = 0")
    m3 = (-12.0 * a * a - 6.0 * a * b) / (_SQRT3 * (2.0 * a + 4.0 * b) * (2.0 * a + b))
    m8 = 0.5 + b * (a - 4.0 * b) / (2.0 * a * (2.0 * a + b))
    return m3, m8


@dataclass(frozen=True)
class Spin1FormulaComparison:
    """Side-by-side record of the published formula and the nullspace truth."""

    alpha: float
    beta: float
    m3_paper: float
    m8_paper: float
    m3_oracle: float
    m8_oracle: float
    max_deviation: float
    paper_state_physical: bool
    oracle_state_physical: bool


def spin1_formula_comparison(params: Spin1Params) -> Spin1FormulaComparison:
    """Evaluate both stationary routes and report how far apart they are.

    The published (m3, m8) pair is also reconstructed into a matrix (with
    all other components zero, as the formula asserts) and checked for
    physicality; for alpha = 3, beta = 1 that check fails.
    """
    m3_paper, m8_paper = spin1_paper_formula(params)
    rho_oracle = spin1_steady_oracle(params)
    g_oracle = density_to_gellmann(rho_oracle)
    paper_state = gellmann_to_density(GellmannVector8(m3=m3_paper, m8=m8_paper))
    return Spin1FormulaComparison(
        alpha=params.alpha,
        beta=params.beta,
        m3_paper=m3_paper,
        m8_paper=m8_paper,
        m3_oracle=g_oracle.m3,
        m8_oracle=g_oracle.m8,
        max_deviation=max(
            abs(m3_paper - g_oracle.m3), abs(m8_paper - g_oracle.m8)
        ),
        paper_state_physical=validate_state(paper_state).passed,
        oracle_state_physical=validate_state(rho_oracle).passed,
    )


@dataclass(frozen=True)
class Spin1LimitCycleReport:
    """Where the stationary state sits relative to the pure |0> point.

    The offsets locate (m3, m8) relative to the |0> anchor
    (-sqrt(3)/2, 1/2); a genuinely mixed stationary state (purity below
    1 - 1e-9) cannot host the phase-circle construction that requires a
    pure |0>, which is what is_mixed records.
    """

    alpha: float
    beta: float
    purity: float
    is_mixed: bool
    m3: float
    m8: float
    m3_offset: float
    m8_offset: float


def spin1_limit_cycle_report(params: Spin1Params) -> Spin1LimitCycleReport:
    """Purity of the stationary state and its distance from the |0> point."""
    rho = spin1_steady_oracle(params)
    g = density_to_gellmann(rho)
    purity = float(np.trace(rho @ rho).real)
    return Spin1LimitCycleReport(
        alpha=params.alpha,
        beta=params.beta,
        purity=purity,
        is_mixed=purity < 1.0 - 1e-9,
        m3=g.m3,
        m8=g.m8,
        m3_offset=g.m3 + 0.5 * _SQRT3,
        m8_offset=g.m8 - 0.5,
    )
