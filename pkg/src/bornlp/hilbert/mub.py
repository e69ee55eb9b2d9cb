"""Complete sets of mutually unbiased bases for d = 2, 4, 8.

For N >= 2 the bases are common eigenbases of maximal commuting sets of
Pauli operators labelled by GF(2^N):

* the reference class, generated by Z(e_k);
* one class per field element a, generated by X(e_k) Z(M_a e_k), where
  M_a[i, j] = tr(a b_i b_j) over the polynomial basis b_i = x^i.

Field arithmetic uses the irreducible polynomials x^2+x+1 and x^3+x+1.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import BornError
from .charts import Chart
from .operators import _fix_phase

# bit i of the mask is the coefficient of x^i
IRREDUCIBLE = {2: 0b111, 3: 0b1011}

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

S2 = 1 / np.sqrt(2)
QUBIT_CHARTS = (
    np.eye(2, dtype=complex),
    S2 * np.array([[1, 1], [1, -1]], dtype=complex),
    S2 * np.array([[1, 1], [1j, -1j]], dtype=complex),
)


def gf_mul(a: int, b: int, n: int) -> int:
    poly = IRREDUCIBLE[n]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> n:
            a ^= poly
    return out


def gf_trace(a: int, n: int) -> int:
    acc, p = 0, a
    for _ in range(n):
        acc ^= p
        p = gf_mul(p, p, n)
    if acc not in (0, 1):
        raise ArithmeticError("field trace left the prime field")
    return acc


def trace_form(a: int, n: int) -> np.ndarray:
    basis = [1 << i for i in range(n)]
    return np.array([[gf_trace(gf_mul(a, gf_mul(bi, bj, n), n), n) for bj in basis]
                     for bi in basis], dtype=int)


def pauli(u, v) -> np.ndarray:
    """Hermitian X(u) Z(v), with a factor i when u . v is odd."""
    op = np.ones((1, 1), dtype=complex)
    for uk, vk in zip(u, v):
        f = np.eye(2, dtype=complex)
        if uk:
            f = f @ _X
        if vk:
            f = f @ _Z
        op = np.kron(op, f)
    if int(np.dot(u, v)) % 2:
        op = 1j * op
    return op


def _common_eigenbasis(gens) -> np.ndarray:
    n = len(gens)
    d = 1 << n
    H = sum((2.0 ** k) * g for k, g in enumerate(gens))
    _, vecs = np.linalg.eigh(H)
    U = np.zeros((d, d), dtype=complex)
    for j in range(d):
        v = vecs[:, j]
        signs = [np.real(v.conj() @ g @ v) for g in gens]
        # eigenvalue +1 on generator k -> bit k is 0, generator 0 is the top bit
        idx = 0
        for s in signs:
            idx = (idx << 1) | (1 if s < 0 else 0)
        U[:, idx] = _fix_phase(v)
    return U


@lru_cache(maxsize=None)
def _cluster(n: int):
    if n == 1:
        return tuple(QUBIT_CHARTS)
    if n not in IRREDUCIBLE:
        raise BornError(f"MUB clusters are provided for N <= 3, got N={n}")
    eye = np.eye(n, dtype=int)
    bases = [_common_eigenbasis([pauli(np.zeros(n, int), eye[k]) for k in range(n)])]
    for a in range(1 << n):
        M = trace_form(a, n)
        gens = [pauli(eye[k], M @ eye[k] % 2) for k in range(n)]
        bases.append(_common_eigenbasis(gens))
    return tuple(bases)


def mub_cluster(n_vars: int) -> list[Chart]:
    """d + 1 pairwise unbiased charts; the first one is the reference basis."""
    return [Chart(u.copy(), f"mub{k}") for k, u in enumerate(_cluster(n_vars))]


def qubit_charts() -> list[Chart]:
    return [Chart(u.copy(), f"U{k + 1}") for k, u in enumerate(QUBIT_CHARTS)]
