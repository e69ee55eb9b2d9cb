"""POVMs, their information content and entropic uncertainty bounds."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..errors import BornError, NumericalError
from .charts import Chart, chart_entropy_of, chart_overlap
from .operators import DensityOperator, HilbertPovm, von_neumann_entropy

INDEPENDENCE_TOL = 1e-8


def von_neumann_povm(chart: Chart) -> HilbertPovm:
    U = chart.unitary
    return HilbertPovm(tuple(np.outer(U[:, j], U[:, j].conj()) for j in range(chart.d)))


def povm_independent(p1: HilbertPovm, p2: HilbertPovm, tol: float = INDEPENDENCE_TOL) -> bool:
    """Tr(Q1 Q2) == Tr(Q1) Tr(Q2) / d for every pair of elements."""
    if p1.d != p2.d:
        raise BornError("POVMs act on different dimensions")
    d = p1.d
    for a in p1.elements:
        ta = np.trace(a).real
        for b in p2.elements:
            if abs(np.trace(a @ b).real - ta * np.trace(b).real / d) > tol:
                return False
    return True


def independent_complement(povm: HilbertPovm, seed: int = 0):
    """A projector Q with {Q, 1-Q} independent of ``povm``.

    Q - Tr(Q)/d must be Hilbert-Schmidt orthogonal to every element.  We look
    for a traceless Hermitian H in that complement and take the projector on
    its positive eigenspace when the spectrum is symmetric (two-valued);
    otherwise we return the mixed effect 1/2 + H / (2 ||H||), which satisfies
    the same condition.
    """
    d = povm.d
    rng = np.random.Generator(np.random.PCG64(seed))
    # real basis of Hermitian matrices
    herm = []
    for i in range(d):
        for j in range(i, d):
            e = np.zeros((d, d), complex)
            e[i, j] = e[j, i] = 1
            herm.append(e)
            if i != j:
                f = np.zeros((d, d), complex)
                f[i, j], f[j, i] = -1j, 1j
                herm.append(f)
    B = np.array([h.ravel() for h in herm])
    cons = [np.eye(d).ravel()] + [q.ravel() for q in povm.elements]
    C = np.array([[np.vdot(c, b).real for b in B] for c in cons])
    _, s, vt = np.linalg.svd(C)
    r = int(np.sum(s > 1e-10 * s[0]))
    null = vt[r:]
    if len(null) == 0:
        raise BornError("no independent direction exists for this POVM")
    coef = rng.standard_normal(len(null)) @ null
    H = (coef @ B).reshape(d, d)
    H = 0.5 * (H + H.conj().T)
    ev = np.linalg.eigvalsh(H)
    Q = 0.5 * np.eye(d) + H / (2 * np.max(np.abs(ev)))
    return HilbertPovm((Q, np.eye(d) - Q))


class PovmEntropy(NamedTuple):
    info_gain: float
    entropy: float
    probabilities: np.ndarray


def povm_entropy(rho: DensityOperator, povm: HilbertPovm, check: bool = True) -> PovmEntropy:
    """Information gain against the maximally mixed reference, and its entropy.

    info = N + sum p log2(p / q) with q = Tr Q; entropy = N - info.
    """
    d = rho.d
    n_bits = math.log2(d)
    p = np.array([np.trace(rho.matrix @ q).real for q in povm.elements])
    q = np.array([np.trace(e).real for e in povm.elements])
    p = np.clip(p, 0, None)
    mask = p > 0
    info = n_bits + float(np.sum(p[mask] * np.log2(p[mask] / q[mask])))
    ent = n_bits - info
    if check and ent < von_neumann_entropy(rho) - 1e-9:
        raise NumericalError(f"POVM entropy {ent} below von Neumann entropy")
    return PovmEntropy(info, ent, p)


def random_povm(d: int, n_outcomes: int, rng) -> HilbertPovm:
    """Random POVM from a random resolution of the identity.

    Draw positive G_k, then Q_k = S^{-1/2} G_k S^{-1/2} with S = sum G_k.
    """
    if n_outcomes < 1:
        raise BornError("need at least one outcome")
    ranks = [int(rng.integers(1, d + 1)) for _ in range(n_outcomes)]
    # S must be invertible, so the ranks have to cover d
    short = d - sum(ranks)
    if short > 0:
        ranks[-1] += short
    gs = []
    for k in ranks:
        a = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
        gs.append(a @ a.conj().T)
    S = sum(gs)
    w, v = np.linalg.eigh(S)
    s_inv = v @ np.diag(w ** -0.5) @ v.conj().T
    els = [s_inv @ g @ s_inv for g in gs]
    els = [0.5 * (e + e.conj().T) for e in els]
    # absorb rounding into the last element
    els[-1] = els[-1] + (np.eye(d) - sum(els))
    return HilbertPovm(tuple(els))


class EntropicBounds(NamedTuple):
    h1: float
    h2: float
    maassen_uffink: float
    frank_lieb: float
    satisfied: bool


def entropic_bounds(rho: DensityOperator, c1: Chart, c2: Chart, slack: float = 1e-9) -> EntropicBounds:
    h1 = chart_entropy_of(rho, c1)
    h2 = chart_entropy_of(rho, c2)
    delta = chart_overlap(c1, c2)
    mu = max(0.0, -2 * math.log2(delta))
    fl = mu + von_neumann_entropy(rho)
    total = h1 + h2
    return EntropicBounds(h1, h2, mu, fl, bool(total >= mu - slack and total >= fl - slack))


class ClusterEntropy(NamedTuple):
    entropies: tuple
    total: float
    bound: float
    excess: float


def cluster_entropy(rho: DensityOperator, charts) -> ClusterEntropy:
    """Sum of chart entropies over a MUB cluster against d N + S(rho)."""
    hs = tuple(chart_entropy_of(rho, c) for c in charts)
    d = rho.d
    bound = d * math.log2(d) + von_neumann_entropy(rho)
    total = float(sum(hs))
    return ClusterEntropy(hs, total, bound, total - bound)
