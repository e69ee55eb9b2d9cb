"""Independent reference computations used by the tests.

None of these import the package's LP or entropy code.
"""

import itertools
import math
from fractions import Fraction

import numpy as np


def rref(rows):
    """Reduced row echelon form over the rationals. Returns (matrix, pivots)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def solve_square(A, b):
    """Exact solve of a square rational system, or None when singular."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    M, piv = rref(aug)
    n = len(A)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [M[i][n] for i in range(n)]


def _q(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    return Fraction(float(x))


def rational_vertices(A, b):
    """All basic feasible solutions of A p = b, p >= 0, exactly.

    Returns None when the system is inconsistent or has no nonnegative point.
    """
    A = [[_q(x) for x in row] for row in A]
    b = [_q(x) for x in b]
    d = len(A[0])
    M, piv = rref([row + [bi] for row, bi in zip(A, b)])
    if d in piv:
        return None
    rows = [r[:d] for r in M[:len(piv)]]
    rhs = [r[d] for r in M[:len(piv)]]
    m = len(rows)
    out = set()
    for basis in itertools.combinations(range(d), m):
        sub = [[row[j] for j in basis] for row in rows]
        x = solve_square(sub, rhs)
        if x is None or min(x) < 0:
            continue
        v = [Fraction(0)] * d
        for j, xj in zip(basis, x):
            v[j] = xj
        out.add(tuple(v))
    return out or None


def entropy_nats(p):
    return -sum(x * math.log(x) for x in p if x > 0)


def grid_maxent(vertices, n=40, rounds=12):
    """Maximize Shannon entropy over conv(vertices) by grid search plus refinement.

    Searches barycentric weights on a regular grid, then repeatedly re-grids
    a shrinking box around the best point.
    """
    V = np.asarray(vertices, dtype=float)
    K = len(V)
    if K == 1:
        return V[0]

    def grid(center, width, steps):
        axes = [np.linspace(max(0, c - width), min(1, c + width), steps) for c in center[:-1]]
        for pt in itertools.product(*axes):
            s = sum(pt)
            if s <= 1 + 1e-15:
                yield np.array(list(pt) + [max(0.0, 1 - s)])

    best_w = np.full(K, 1 / K)
    best = entropy_nats(best_w @ V)
    center, width = best_w, 1.0
    for k in range(rounds):
        steps = n if k == 0 else 11
        for w in grid(center, width, steps):
            h = entropy_nats(w @ V)
            if h > best:
                best, best_w = h, w
        center = best_w
        width = width / 4 if k else 2.0 / n
    return best_w @ V


def brute_marginal(w, literals, n):
    """P(literals) by summing every consistent complete assignment."""
    total = 0.0
    for bits in itertools.product((0, 1), repeat=n):
        if all(bits[abs(l) - 1] == (1 if l > 0 else 0) for l in literals):
            idx = int("".join(map(str, bits)), 2)
            total += w[idx]
    return total


def classical_mi(joint2d):
    j = np.asarray(joint2d, dtype=float)
    pa, pb = j.sum(1), j.sum(0)
    out = 0.0
    for a in range(j.shape[0]):
        for b in range(j.shape[1]):
            if j[a, b] > 0:
                out += j[a, b] * math.log2(j[a, b] / (pa[a] * pb[b]))
    return out


def classical_conditional_entropy(joint2d):
    """H(A|B) for a table indexed [a, b]."""
    j = np.asarray(joint2d, dtype=float)
    pb = j.sum(0)
    out = 0.0
    for a in range(j.shape[0]):
        for b in range(j.shape[1]):
            if j[a, b] > 0:
                out -= j[a, b] * math.log2(j[a, b] / pb[b])
    return out


def deterministic_chsh_values():
    vals = []
    for a0, a1, b0, b1 in itertools.product((-1, 1), repeat=4):
        vals.append(a0 * b0 + a1 * b0 + a0 * b1 - a1 * b1)
    return vals
