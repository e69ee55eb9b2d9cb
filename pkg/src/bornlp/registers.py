"""Pairs of registers in the real probability space.

Joint index convention: w_c[a * d_b + b], i.e. A is the major factor, which
matches numpy's ``kron`` ordering used on the Hilbert side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .boolean_core import Register
from .errors import BornError
from .info import as_distribution, kl_bits, shannon
from .lp_core import LinearSystem, caratheodory, enumerate_vertices
from .quantum_state import QuantumStateReal

EPS_NS = 1e-9
EPS_ZERO = 1e-9


@dataclass(frozen=True)
class BipartiteSplit:
    n_a: int
    n_b: int

    def __post_init__(self):
        if self.n_a < 1 or self.n_b < 0:
            raise BornError("need n_a >= 1 and n_b >= 0")

    @property
    def d_a(self) -> int:
        return 1 << self.n_a

    @property
    def d_b(self) -> int:
        return 1 << self.n_b

    @property
    def d(self) -> int:
        return self.d_a * self.d_b

    def table(self, w_c) -> np.ndarray:
        w = np.asarray(w_c, dtype=float)
        if w.size != self.d:
            raise BornError(f"joint vector has {w.size} entries, split needs {self.d}")
        return w.reshape(self.d_a, self.d_b)


def product(w_a, w_b) -> np.ndarray:
    return np.outer(as_distribution(w_a), as_distribution(w_b)).ravel()


def marginal(w_c, split: BipartiteSplit, side: str = "A") -> np.ndarray:
    t = split.table(w_c)
    if side.upper() == "A":
        return t.sum(axis=1)
    if side.upper() == "B":
        return t.sum(axis=0)
    raise BornError(f"side must be 'A' or 'B', got {side!r}")


def entanglement_relative_entropy(w_c, split: BipartiteSplit) -> float:
    """S(P_c || P_a x P_b) in bits."""
    w = as_distribution(w_c)
    ref = product(marginal(w, split, "A"), marginal(w, split, "B"))
    val = kl_bits(w, ref)
    # the product of its own marginals always covers the joint support
    assert np.isfinite(val)
    return max(val, 0.0)


def mutual_information(w_c, split: BipartiteSplit) -> float:
    w = as_distribution(w_c)
    return shannon(marginal(w, split, "A")) + shannon(marginal(w, split, "B")) - shannon(w)


def conditionals(w_c, split: BipartiteSplit, side: str = "A"):
    """Conditional distributions of ``side`` given each value of the other side.

    Returns (vectors, weights) for the conditioning values with nonzero mass.
    """
    t = split.table(as_distribution(w_c))
    if side.upper() == "B":
        t = t.T
    nu = t.sum(axis=0)
    keep = nu > EPS_ZERO
    return (t[:, keep] / nu[keep]).T, nu[keep]


def span_system(vectors, register: Register, rel_tol: float = 1e-10) -> tuple[LinearSystem, int]:
    """LP system whose feasible set is span(vectors) intersected with the simplex.

    Rows are normalization plus an orthonormal basis of the orthogonal
    complement of the span.  Returns the system and the span rank.
    """
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    _, s, vt = np.linalg.svd(V, full_matrices=True)
    r = int(np.sum(s > rel_tol * s[0]))
    comp = vt[r:]
    rows = np.vstack([np.ones(register.d), comp]) if len(comp) else np.ones((1, register.d))
    rhs = np.zeros(rows.shape[0])
    rhs[0] = 1.0
    return LinearSystem.from_rows(rows, rhs, register), r


def partial_lp_system(w_c, split: BipartiteSplit, side: str = "A"):
    """Sub-register system from the span of the conditional distributions."""
    n = split.n_a if side.upper() == "A" else split.n_b
    if n < 1:
        raise BornError("the requested side carries no bits")
    vecs, _ = conditionals(w_c, split, side)
    system, r = span_system(vecs, Register(n))
    poly = enumerate_vertices(system)
    w = marginal(w_c, split, side)
    rep = caratheodory(poly, w)
    state = QuantumStateReal(rep, w, system, poly, "marginal")
    return system, state


class SignalingCheck(NamedTuple):
    ok: bool
    max_deviation: float


def non_signaling_check(family, split: BipartiteSplit, side: str = "A",
                        tol: float = EPS_NS) -> SignalingCheck:
    """Is the ``side`` marginal the same for every member of the family?"""
    margs = [marginal(w, split, side) for w in family]
    if not margs:
        raise BornError("empty family")
    ref = margs[0]
    dev = max(float(np.max(np.abs(m - ref))) for m in margs)
    return SignalingCheck(dev <= tol, dev)


def purify(state: QuantumStateReal, d_b: int | None = None) -> np.ndarray:
    """Joint distribution whose ancilla value labels the simplex vertex.

    w_c[a, b] = mu_b * w_b[a] for b < r and zero for the unused ancilla values.
    """
    r = state.simplex.r
    if d_b is None:
        d_b = r
    if d_b < r:
        raise BornError(f"ancilla dimension {d_b} is smaller than the simplex size {r}")
    t = np.zeros((state.d, d_b))
    t[:, :r] = (state.simplex.vertices * state.mu[:, None]).T
    return t.ravel()
