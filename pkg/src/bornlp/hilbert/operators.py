"""Density operators, observables and the transcription of real states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import BornError, NumericalError
from ..info import as_distribution, shannon
from ..quantum_state import QuantumStateReal
from ..registers import purify

EPS_H = 1e-9
EPS_EIG = 1e-10
EPS_KRAUS = 1e-8
MAX_DIM = 256


def _check_square(m, what):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise BornError(f"{what} must be a square matrix")
    if m.shape[0] > MAX_DIM:
        raise BornError(f"{what} dimension {m.shape[0]} exceeds {MAX_DIM}")
    return m


def _fix_phase(vec, tol=1e-10):
    nz = np.flatnonzero(np.abs(vec) > tol)
    if nz.size == 0:
        return vec
    z = vec[nz[0]]
    return vec * (abs(z) / z)


def canonical_eigh(h, group_tol=1e-9):
    """Eigen-decomposition with a reproducible basis.

    Eigenvalues are sorted descending.  Inside each degenerate group the basis
    is rebuilt by pivoted Gram-Schmidt on the projections of the canonical
    basis vectors, and every eigenvector gets a real positive first nonzero
    entry.
    """
    vals, vecs = np.linalg.eigh(h)
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    out = np.empty_like(vecs)
    start = 0
    d = len(vals)
    while start < d:
        stop = start + 1
        while stop < d and vals[stop - 1] - vals[stop] <= group_tol:
            stop += 1
        Q = vecs[:, start:stop]
        if stop - start == 1:
            out[:, start] = _fix_phase(Q[:, 0])
        else:
            cand = Q @ Q.conj().T  # column i = projection of e_i
            chosen = []
            for _ in range(stop - start):
                resid = cand.copy()
                for c in chosen:
                    resid -= np.outer(c, c.conj() @ resid)
                norms = np.round(np.linalg.norm(resid, axis=0), 9)
                i = int(np.argmax(norms))
                chosen.append(resid[:, i] / np.linalg.norm(resid[:, i]))
            for k, c in enumerate(chosen):
                out[:, start + k] = _fix_phase(c)
        start = stop
    return vals, out


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray
    spectrum: np.ndarray = field(init=False, repr=False)
    eigenbasis: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = _check_square(self.matrix, "density operator")
        if np.max(np.abs(m - m.conj().T)) > EPS_H:
            raise NumericalError("density operator is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1) > 1e-9:
            raise NumericalError(f"density operator has trace {tr!r}")
        m = 0.5 * (m + m.conj().T)
        vals, vecs = canonical_eigh(m)
        if vals.min() < -1e-9:
            raise NumericalError(f"density operator has eigenvalue {vals.min():.3e}")
        vals = np.clip(vals, 0.0, None)
        vals = vals / vals.sum()
        for a in (m, vals, vecs):
            a.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "spectrum", vals)
        object.__setattr__(self, "eigenbasis", vecs)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(np.sum(self.spectrum > EPS_EIG))

    @property
    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    matrix: np.ndarray

    def __post_init__(self):
        m = _check_square(self.matrix, "observable")
        if np.max(np.abs(m - m.conj().T)) > EPS_H:
            raise NumericalError("observable is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class HilbertPovm:
    elements: tuple

    def __post_init__(self):
        els = tuple(_check_square(e, "POVM element") for e in self.elements)
        if not els:
            raise BornError("empty POVM")
        d = els[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for e in els:
            if np.max(np.abs(e - e.conj().T)) > EPS_H:
                raise NumericalError("POVM element is not Hermitian")
            if np.linalg.eigvalsh(0.5 * (e + e.conj().T)).min() < -1e-9:
                raise NumericalError("POVM element is not positive")
            total += e
        if np.max(np.abs(total - np.eye(d))) > EPS_KRAUS:
            raise NumericalError("POVM elements do not sum to the identity")
        object.__setattr__(self, "elements", els)

    @property
    def d(self) -> int:
        return self.elements[0].shape[0]


@dataclass(frozen=True, eq=False)
class Gauge:
    """Entry phases for transcription; ``phases=None`` is the natural gauge."""

    phases: np.ndarray | None = None

    def __post_init__(self):
        if self.phases is not None:
            p = np.asarray(self.phases, dtype=complex).ravel()
            if np.max(np.abs(np.abs(p) - 1)) > 1e-12:
                raise BornError("gauge phases must be unit complex numbers")
            object.__setattr__(self, "phases", p)

    @classmethod
    def natural(cls) -> "Gauge":
        return cls(None)

    @classmethod
    def from_angles(cls, angles) -> "Gauge":
        return cls(np.exp(1j * np.asarray(angles, dtype=float)))

    def vector(self, n: int) -> np.ndarray:
        if self.phases is None:
            return np.ones(n, dtype=complex)
        if self.phases.size != n:
            raise BornError(f"gauge has {self.phases.size} phases, transcription needs {n}")
        return self.phases


def transcribe_pure(w, gauge: Gauge | None = None) -> DensityOperator:
    w = as_distribution(w)
    amp = np.sqrt(w) * (gauge or Gauge.natural()).vector(w.size)
    return DensityOperator(np.outer(amp, amp.conj()))


def _next_pow2(r: int) -> int:
    return 1 << max(0, math.ceil(math.log2(max(r, 1))))


def purified_amplitudes(state: QuantumStateReal, gauge: Gauge | None = None,
                        d_b: int | None = None) -> np.ndarray:
    if d_b is None:
        d_b = _next_pow2(state.rank)
    w_c = purify(state, d_b)
    return np.sqrt(w_c) * (gauge or Gauge.natural()).vector(w_c.size)


def transcribe_mixed(state: QuantumStateReal, gauge: Gauge | None = None,
                     d_b: int | None = None) -> DensityOperator:
    """rho = Tr_b |c><c| for the purified amplitudes c.

    ``d_b`` defaults to the smallest power of two holding the simplex.
    """
    c = purified_amplitudes(state, gauge, d_b)
    C = c.reshape(state.d, -1)
    return DensityOperator(C @ C.conj().T)


def diagonal_observable(q) -> HermitianObservable:
    return HermitianObservable(np.diag(np.asarray(q, dtype=float)).astype(complex))


def born_expectation(rho: DensityOperator, obs) -> float:
    Q = obs.matrix if isinstance(obs, HermitianObservable) else np.asarray(obs, dtype=complex)
    if Q.shape != rho.matrix.shape:
        raise BornError("observable and state dimensions differ")
    val = np.trace(rho.matrix @ Q)
    if abs(val.imag) > 1e-9:
        raise NumericalError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def apply_channel(rho: DensityOperator, kraus) -> DensityOperator:
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if not ops:
        raise BornError("empty Kraus list")
    d = rho.d
    total = sum(k.conj().T @ k for k in ops)
    if np.max(np.abs(total - np.eye(d))) > EPS_KRAUS:
        raise NumericalError("Kraus operators are not complete")
    out = sum(k @ rho.matrix @ k.conj().T for k in ops)
    return DensityOperator(out)


def von_neumann_entropy(rho: DensityOperator) -> float:
    lam = rho.spectrum[rho.spectrum > EPS_EIG]
    return shannon(lam)


def effect_probability(rho: DensityOperator, effect) -> float:
    E = effect.matrix if isinstance(effect, HermitianObservable) else np.asarray(effect, complex)
    ev = np.linalg.eigvalsh(0.5 * (E + E.conj().T))
    if ev.min() < -1e-9 or ev.max() > 1 + 1e-9:
        raise NumericalError("effect must satisfy 0 <= Q <= 1")
    return born_expectation(rho, E)


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())
