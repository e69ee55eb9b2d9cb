"""Two-register quantities in Hilbert space."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import BornError
from ..registers import BipartiteSplit
from .measurement import von_neumann_povm
from .mub import mub_cluster
from .operators import DensityOperator, HilbertPovm, von_neumann_entropy

SUPPORT_TOL = 1e-9


def _mat(rho):
    return rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)


def partial_trace(rho, split: BipartiteSplit, keep: str = "A") -> DensityOperator:
    m = _mat(rho)
    if m.shape[0] != split.d:
        raise BornError("state dimension does not match the split")
    t = m.reshape(split.d_a, split.d_b, split.d_a, split.d_b)
    if keep.upper() == "A":
        return DensityOperator(np.einsum("ijkj->ik", t))
    if keep.upper() == "B":
        return DensityOperator(np.einsum("ijil->jl", t))
    raise BornError(f"keep must be 'A' or 'B', got {keep!r}")


def relative_entropy(rho: DensityOperator, sigma: DensityOperator) -> float:
    """S(rho || sigma) in bits; +inf when rho leaves the support of sigma."""
    sv, su = sigma.spectrum, sigma.eigenbasis
    keep = sv > SUPPORT_TOL
    P = su[:, keep]
    outside = 1.0 - np.trace(P.conj().T @ rho.matrix @ P).real
    if outside > SUPPORT_TOL:
        return float("inf")
    rv, ru = rho.spectrum, rho.eigenbasis
    rk = rv > SUPPORT_TOL
    t1 = float(np.sum(rv[rk] * np.log2(rv[rk])))
    log_sigma = P @ np.diag(np.log2(sv[keep])) @ P.conj().T
    t2 = float(np.trace(rho.matrix @ log_sigma).real)
    return t1 - t2


class ConditionalEntropy(NamedTuple):
    value: float
    negative: bool


def conditional_entropy(rho_c: DensityOperator, split: BipartiteSplit) -> ConditionalEntropy:
    """S(A|B) = S(rho_c) - S(rho_b); negative values flag entanglement."""
    val = von_neumann_entropy(rho_c) - von_neumann_entropy(partial_trace(rho_c, split, "B"))
    return ConditionalEntropy(val, val < -1e-9)


def entanglement_entropy(rho_c: DensityOperator, split: BipartiteSplit) -> float:
    rho_a = partial_trace(rho_c, split, "A")
    rho_b = partial_trace(rho_c, split, "B")
    ref = DensityOperator(np.kron(rho_a.matrix, rho_b.matrix))
    return relative_entropy(rho_c, ref)


def post_measurement_states(rho_c: DensityOperator, split: BipartiteSplit, povm: HilbertPovm):
    """Outcome probabilities and normalized A states after measuring B."""
    if povm.d != split.d_b:
        raise BornError("POVM does not act on the B factor")
    t = rho_c.matrix.reshape(split.d_a, split.d_b, split.d_a, split.d_b)
    out = []
    for q in povm.elements:
        # Tr_b[rho_c (1 x Q)]
        sub = np.einsum("ijkl,lj->ik", t, q)
        p = float(np.trace(sub).real)
        out.append((p, sub / p if p > 1e-12 else None))
    return out


def measured_conditional_entropy(rho_c, split, povm) -> float:
    """S(A | POVM_B) = sum_g p(g) S(rho_a^g)."""
    total = 0.0
    for p, sub in post_measurement_states(rho_c, split, povm):
        if sub is not None:
            total += p * von_neumann_entropy(DensityOperator(0.5 * (sub + sub.conj().T)))
    return total


class Discord(NamedTuple):
    value: float
    best_index: int
    values: tuple


def default_discord_family(split: BipartiteSplit):
    return [von_neumann_povm(c) for c in mub_cluster(split.n_b)]


def quantum_discord(rho_c: DensityOperator, split: BipartiteSplit, povm_family_b=None) -> Discord:
    """max over the family of S(A|POVM_B) - S(A|B)."""
    family = default_discord_family(split) if povm_family_b is None else list(povm_family_b)
    if not family:
        raise BornError("empty POVM family")
    base = conditional_entropy(rho_c, split).value
    vals = tuple(measured_conditional_entropy(rho_c, split, p) - base for p in family)
    k = int(np.argmax(vals))
    return Discord(vals[k], k, vals)
