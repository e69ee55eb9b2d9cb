"""Charts: orthonormal bases viewed as alternative Boolean variable sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..boolean_core import Register
from ..errors import BornError, NumericalError
from ..info import shannon
from ..lp_core import caratheodory, enumerate_vertices
from ..quantum_state import QuantumStateReal
from ..registers import span_system
from .operators import EPS_EIG, DensityOperator, _check_square

UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Chart:
    """Columns of ``unitary`` are the chart basis in reference coordinates."""

    unitary: np.ndarray
    label: str = ""

    def __post_init__(self):
        u = _check_square(self.unitary, "chart")
        if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > UNITARY_TOL:
            raise NumericalError(f"chart {self.label!r} is not unitary")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "unitary", u)

    @property
    def d(self) -> int:
        return self.unitary.shape[0]

    @classmethod
    def identity(cls, d: int, label: str = "reference") -> "Chart":
        return cls(np.eye(d, dtype=complex), label)


@dataclass(frozen=True, eq=False)
class SingularChart:
    """Reverse transcription is impossible in this chart."""

    label: str
    working: np.ndarray
    span_rank: int
    rank: int


def in_chart(rho: DensityOperator, chart: Chart) -> np.ndarray:
    U = chart.unitary
    return U.conj().T @ rho.matrix @ U


def chart_working(rho: DensityOperator, chart: Chart) -> np.ndarray:
    """Diagonal of rho in the chart basis."""
    w = np.real(np.diag(in_chart(rho, chart)))
    w = np.clip(w, 0.0, None)
    return w / w.sum()


def chart_entropy_of(rho: DensityOperator, chart: Chart) -> float:
    return shannon(chart_working(rho, chart))


def conditional_vectors(rho: DensityOperator, chart: Chart) -> np.ndarray:
    """|<chart_j | e_i>|^2 for each eigenvector e_i in the support of rho."""
    E = rho.eigenbasis[:, rho.spectrum > EPS_EIG]
    return (np.abs(chart.unitary.conj().T @ E) ** 2).T


def reverse_transcribe(rho: DensityOperator, chart: Chart, rel_tol: float = 1e-9):
    """Real quantum state seen from ``chart``, or a SingularChart marker."""
    if chart.d != rho.d:
        raise BornError("chart and state dimensions differ")
    n = int(round(np.log2(rho.d)))
    if 1 << n != rho.d:
        raise BornError("dimension must be a power of two")
    w = chart_working(rho, chart)
    V = conditional_vectors(rho, chart)
    r = V.shape[0]
    system, span_rank = span_system(V, Register(n), rel_tol)
    if span_rank < r:
        return SingularChart(chart.label, w, span_rank, r)
    poly = enumerate_vertices(system)
    rep = caratheodory(poly, w)
    return QuantumStateReal(rep, w, system, poly, f"chart:{chart.label}")


def canonical_chart(rho: DensityOperator) -> Chart:
    return Chart(rho.eigenbasis, "canonical")


def chart_overlap(c1: Chart, c2: Chart) -> float:
    if c1.d != c2.d:
        raise BornError("charts have different dimensions")
    return float(np.max(np.abs(c1.unitary.conj().T @ c2.unitary)))


def is_regular(rho: DensityOperator, chart: Chart) -> bool:
    return not isinstance(reverse_transcribe(rho, chart), SingularChart)


def induced_distribution(rho: DensityOperator, effect, chart: Chart) -> np.ndarray:
    """h = q w / <q w> for an effect diagonal in ``chart``."""
    E = effect.matrix if hasattr(effect, "matrix") else np.asarray(effect, dtype=complex)
    U = chart.unitary
    Ec = U.conj().T @ E @ U
    if np.max(np.abs(Ec - np.diag(np.diag(Ec)))) > 1e-9:
        raise BornError("effect is not diagonal in this chart")
    q = np.real(np.diag(Ec))
    if q.min() < -1e-9 or q.max() > 1 + 1e-9:
        raise NumericalError("effect must satisfy 0 <= Q <= 1")
    if isinstance(reverse_transcribe(rho, chart), SingularChart):
        raise BornError(f"chart {chart.label!r} is singular for this state")
    w = chart_working(rho, chart)
    z = float(q @ w)
    if z <= 1e-9:
        raise NumericalError("effect has zero expectation")
    return q * w / z
