"""The LP system A p = b, p >= 0 over classical-state probabilities.

Row 0 of every system is normalization.  Vertices are found by brute-force
basis enumeration, which is fine for d <= 16.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, nnls
from scipy.spatial import Delaunay

from .boolean_core import ConstraintSpec, Register, requirement_to_lineq, universal_equations
from .errors import BornError, ConvergenceError, InfeasibleError, NumericalError
from .info import shannon


@dataclass(frozen=True)
class Tolerances:
    zero: float = 1e-9
    lin: float = 1e-9
    dedupe: float = 1e-7
    rank_rel: float = 1e-10
    opt: float = 1e-7
    max_iter: int = 200


TOL = Tolerances()


@dataclass(frozen=True)
class LinearSystem:
    a_matrix: np.ndarray
    b_vector: np.ndarray
    register: Register
    # constraint index behind each kept row (-1 for normalization)
    sources: tuple[int, ...] = ()
    dropped: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return self.a_matrix.shape[0]

    @property
    def d(self) -> int:
        return self.register.d

    @property
    def rank(self) -> int:
        return self.m

    def residual(self, p) -> float:
        return float(np.max(np.abs(self.a_matrix @ np.asarray(p, float) - self.b_vector)))

    def contains(self, p, tol=TOL.lin) -> bool:
        p = np.asarray(p, float)
        return p.min() >= -TOL.zero and self.residual(p) <= tol

    @classmethod
    def from_rows(cls, rows, rhs, register: Register, sources=None, tol=TOL) -> "LinearSystem":
        """Drop dependent rows; raise if a dependent row disagrees on its rhs."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        rhs = np.asarray(rhs, dtype=float).ravel()
        if rows.shape[1] != register.d or rows.shape[0] != rhs.size:
            raise BornError("row/rhs shapes do not match the register")
        if sources is None:
            sources = list(range(-1, rows.shape[0] - 1))
        scale = max(float(np.max(np.abs(rows))), 1.0)
        eps = tol.rank_rel * scale
        kept, kept_b, kept_src, dropped = [], [], [], []
        for row, b, src in zip(rows, rhs, sources):
            if kept:
                basis = np.array(kept)
                coef, *_ = np.linalg.lstsq(basis.T, row, rcond=None)
                resid = np.max(np.abs(basis.T @ coef - row))
            else:
                coef, resid = None, np.max(np.abs(row))
            if resid > eps:
                kept.append(row)
                kept_b.append(b)
                kept_src.append(src)
                continue
            implied = 0.0 if coef is None else float(coef @ np.array(kept_b))
            if abs(implied - b) > tol.lin * max(1.0, abs(b)):
                raise InfeasibleError(
                    f"constraint {src} is a combination of earlier rows but asks for "
                    f"{float(b):.12g} instead of {implied:.12g}",
                    constraint_index=src,
                )
            dropped.append(src)
        a = np.array(kept)
        bb = np.array(kept_b)
        a.setflags(write=False)
        bb.setflags(write=False)
        return cls(a, bb, register, tuple(kept_src), tuple(dropped))


def build_system(constraints: list[ConstraintSpec], register: Register) -> LinearSystem:
    rows, rhs, src = [], [], []
    for q, b in universal_equations(register):
        rows.append(q.entries)
        rhs.append(b)
        src.append(-1)
    for k, spec in enumerate(constraints):
        q, b = requirement_to_lineq(spec, register)
        rows.append(q.entries)
        rhs.append(b)
        src.append(k)
    return LinearSystem.from_rows(rows, rhs, register, src)


def feasible(system: LinearSystem) -> bool:
    res = linprog(np.zeros(system.d), A_eq=system.a_matrix, b_eq=system.b_vector,
                  bounds=(0, None), method="highs")
    return res.status == 0


@dataclass(frozen=True)
class Polytope:
    vertices: np.ndarray
    affine_dim: int
    system: LinearSystem | None = field(default=None, compare=False, repr=False)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_simplicial(self) -> bool:
        return self.n_vertices == self.affine_dim + 1


def _sort_vertices(verts):
    # descending lexicographic order on rounded entries
    keys = np.round(verts, 9)
    order = sorted(range(len(verts)), key=lambda i: tuple(-keys[i]))
    return verts[order]


def enumerate_vertices(system: LinearSystem, tol=TOL) -> Polytope:
    """All basic feasible solutions.

    A nonempty set {p >= 0, A p = b} always has a basic feasible solution,
    so finding none is a proof of infeasibility.
    """
    a, b = system.a_matrix, system.b_vector
    m, d = a.shape
    combos = np.array(list(itertools.combinations(range(d), m)), dtype=int)
    blocks = a[:, combos].transpose(1, 0, 2)  # (K, m, m)
    sv = np.linalg.svd(blocks, compute_uv=False)
    ok = sv[:, -1] > 1e-10 * np.maximum(sv[:, 0], 1e-300)
    combos, blocks = combos[ok], blocks[ok]
    sols = np.linalg.solve(blocks, np.broadcast_to(b, (len(blocks), m))[..., None])[..., 0]
    good = sols.min(axis=1) >= -tol.zero
    found = []
    for basis, x in zip(combos[good], sols[good]):
        v = np.zeros(d)
        v[basis] = x
        v[np.abs(v) < tol.zero] = 0.0
        v = np.clip(v, 0.0, None)
        if system.residual(v) > tol.lin:
            continue
        if any(np.max(np.abs(v - w)) <= tol.dedupe for w in found):
            continue
        found.append(v)
    if not found:
        raise InfeasibleError("system has no nonnegative solution")
    verts = _sort_vertices(np.array(found))
    verts.setflags(write=False)
    return Polytope(verts, d - m, system)


@dataclass(frozen=True)
class SimplicialRepresentation:
    vertices: np.ndarray
    coords: np.ndarray
    # positions of the chosen vertices in the parent polytope
    indices: tuple[int, ...] = ()

    @property
    def point(self) -> np.ndarray:
        return self.coords @ self.vertices

    @property
    def r(self) -> int:
        return self.coords.size


def affinely_independent(vertices, tol=1e-9) -> bool:
    v = np.atleast_2d(np.asarray(vertices, float))
    if len(v) <= 1:
        return True
    diff = v[1:] - v[0]
    s = np.linalg.svd(diff, compute_uv=False)
    return bool(s[-1] > tol * max(s[0], 1.0))


def caratheodory(polytope: Polytope, anchor, tol=TOL) -> SimplicialRepresentation:
    """Affinely independent vertices whose hull holds ``anchor``.

    Only vertices with positive weight are returned, so an anchor that is
    itself a vertex yields a one-vertex simplex with mu = (1,).
    """
    anchor = np.asarray(anchor, dtype=float)
    V = polytope.vertices
    K = len(V)
    M = np.vstack([V.T, np.ones(K)])
    rhs = np.append(anchor, 1.0)
    lam, resid = nnls(M, rhs, maxiter=50 * K + 100)
    if resid > 1e-8:
        raise NumericalError(f"anchor lies outside the polytope (residual {resid:.2e})")
    support = [i for i in range(K) if lam[i] > 1e-12]
    lam = lam.copy()
    while True:
        cols = M[:, support]
        _, s, vt = np.linalg.svd(cols)
        rank = int(np.sum(s > 1e-10 * s[0]))
        if rank == len(support):
            break
        z = vt[-1]
        if z.max() <= 1e-14:
            z = -z
        pos = z > 1e-14
        ratios = np.full(len(support), np.inf)
        ratios[pos] = lam[support][pos] / z[pos]
        t = ratios.min()
        # ties: smallest weight, then enumeration order
        cand = [k for k in range(len(support)) if ratios[k] <= t * (1 + 1e-9) + 1e-15]
        drop = min(cand, key=lambda k: (lam[support[k]], support[k]))
        new = lam[support] - t * z
        for k, i in enumerate(support):
            lam[i] = max(new[k], 0.0)
        lam[support[drop]] = 0.0
        support = [i for i in support if lam[i] > 1e-14]
    cols = M[:, support]
    mu, *_ = np.linalg.lstsq(cols, rhs, rcond=None)
    mu = np.clip(mu, 0.0, None)
    mu /= mu.sum()
    rep = SimplicialRepresentation(V[support].copy(), mu, tuple(support))
    err = np.max(np.abs(rep.point - anchor))
    if err > tol.lin:
        raise NumericalError(f"Caratheodory reconstruction error {err:.2e}")
    return rep


def simplex_from_weights(polytope: Polytope, weights, indices=None) -> SimplicialRepresentation:
    """Explicit simplex with caller-chosen weights, zero weights kept."""
    weights = np.asarray(weights, dtype=float)
    if indices is None:
        indices = tuple(range(polytope.n_vertices))
    verts = polytope.vertices[list(indices)]
    if weights.shape != (len(indices),):
        raise BornError("one weight per chosen vertex is required")
    if weights.min() < -TOL.zero or abs(weights.sum() - 1) > TOL.lin:
        raise NumericalError("simplicial coordinates must be a probability vector")
    if not affinely_independent(verts):
        raise BornError("chosen vertices are not affinely independent")
    w = np.clip(weights, 0, None)
    return SimplicialRepresentation(verts.copy(), w / w.sum(), tuple(indices))


@dataclass(frozen=True)
class MaxEntSolution:
    distribution: np.ndarray
    multipliers: np.ndarray
    log_partition: float
    entropy_bits: float
    dual_entropy_bits: float
    forced_zeros: tuple[int, ...]
    iterations: int


def forced_zeros(polytope: Polytope, tol=TOL) -> tuple[int, ...]:
    return tuple(int(j) for j in np.where(np.all(polytope.vertices <= tol.zero, axis=0))[0])


def maxent(system: LinearSystem, polytope: Polytope | None = None, tol=TOL) -> MaxEntSolution:
    """Maximum-entropy point by damped Newton on the dual.

    With g = exp(-sum_j alpha_j a_j) / Z over the free coordinates, the dual
    F(alpha) = log Z + alpha . b is convex with gradient b - E_g[a] and
    Hessian Cov_g(a).  Coordinates that vanish on every vertex are pinned to
    zero first.  Multipliers refer to the reduced system on the free
    coordinates, rows after normalization; ``log_partition`` plays the role
    of the normalization multiplier.
    """
    if polytope is None:
        polytope = enumerate_vertices(system, tol)
    zeros = forced_zeros(polytope, tol)
    free = np.array([j for j in range(system.d) if j not in zeros])
    a_free = system.a_matrix[:, free]
    # rows that became dependent once the zeros were removed
    reduced = _independent_rows(a_free, system.b_vector, tol)
    A = a_free[reduced[1:]] if len(reduced) > 1 else np.zeros((0, free.size))
    b = system.b_vector[reduced[1:]] if len(reduced) > 1 else np.zeros(0)
    # normalization row is row 0 of every system; rescale others by it
    norm = a_free[reduced[0]]
    if not np.allclose(norm, norm[0]):
        raise NumericalError("row 0 is not a normalization row")
    alpha = np.zeros(A.shape[0])

    def dual(al):
        s = -(al @ A) if A.size else np.zeros(free.size)
        mx = s.max()
        logz = mx + math.log(np.exp(s - mx).sum())
        g = np.exp(s - logz)
        return logz + al @ b, g, logz

    F, g, logz = dual(alpha)
    it = 0
    for it in range(1, tol.max_iter + 1):
        if not A.size:
            break
        mean = A @ g
        grad = b - mean
        gnorm = float(np.max(np.abs(grad)))
        if gnorm < 1e-13:
            break
        cen = A - mean[:, None]
        H = (cen * g) @ cen.T
        step = np.linalg.lstsq(H, -grad, rcond=1e-14)[0]
        slope = grad @ step
        if slope >= 0:
            step, slope = -grad, -grad @ grad
        t = 1.0
        while True:
            F_new, g_new, logz_new = dual(alpha + t * step)
            if F_new <= F + 1e-4 * t * slope or t < 1e-12:
                break
            t *= 0.5
        if t < 1e-12 and F_new > F:
            break
        alpha = alpha + t * step
        F, g, logz = F_new, g_new, logz_new
    else:
        gnorm = float(np.max(np.abs(b - A @ g)))
        if gnorm > tol.opt:
            raise ConvergenceError("maxent Newton did not converge", iterate=alpha, grad_norm=gnorm)
    full = np.zeros(system.d)
    full[free] = g
    gap = float(np.max(np.abs(system.a_matrix @ full - system.b_vector)))
    if gap > max(tol.opt, 1e-8):
        raise ConvergenceError(f"maxent point violates constraints by {gap:.2e}",
                               iterate=alpha, grad_norm=gap)
    direct = shannon(full)
    dual_bits = float((logz + float(alpha @ b)) / math.log(2))
    if abs(direct - dual_bits) > tol.opt:
        raise ConvergenceError(f"dual entropy {dual_bits} disagrees with direct {direct}",
                               iterate=alpha, grad_norm=gap)
    return MaxEntSolution(full, alpha, float(logz), direct, dual_bits, zeros, it)


def _independent_rows(a, b, tol):
    kept = []
    for i, row in enumerate(a):
        if not kept:
            if np.max(np.abs(row)) > tol.rank_rel:
                kept.append(i)
            continue
        basis = a[kept]
        coef, *_ = np.linalg.lstsq(basis.T, row, rcond=None)
        if np.max(np.abs(basis.T @ coef - row)) > tol.rank_rel * max(1.0, np.max(np.abs(a))):
            kept.append(i)
    return kept


@dataclass(frozen=True)
class CentroidEstimate:
    point: np.ndarray
    std_error: float = 0.0
    method: str = "exact"


def centroid(polytope: Polytope, method: str = "exact", samples: int = 200_000,
             seed: int = 0) -> np.ndarray:
    return centroid_estimate(polytope, method, samples, seed).point


def centroid_estimate(polytope: Polytope, method: str = "exact", samples: int = 200_000,
                      seed: int = 0) -> CentroidEstimate:
    """Uniform-density center of mass.

    Simplicial polytopes use the vertex average.  Otherwise ``exact``
    triangulates the polytope in local affine coordinates and averages the
    simplex centroids by volume; ``mc`` uses rejection sampling in the
    bounding box and reports the Monte-Carlo standard error.
    """
    V = polytope.vertices
    if len(V) == 0:
        raise BornError("empty polytope")
    if polytope.is_simplicial or len(V) == 1:
        return CentroidEstimate(V.mean(axis=0))
    origin = V.mean(axis=0)
    _, s, vt = np.linalg.svd(V - origin)
    k = int(np.sum(s > 1e-10 * s[0]))
    basis = vt[:k]
    local = (V - origin) @ basis.T
    if k == 1:
        lo, hi = local[:, 0].min(), local[:, 0].max()
        return CentroidEstimate(origin + 0.5 * (lo + hi) * basis[0])
    tri = Delaunay(local)
    if method == "exact":
        simp = local[tri.simplices]  # (S, k+1, k)
        vols = np.abs(np.linalg.det(simp[:, 1:] - simp[:, :1]))
        cents = simp.mean(axis=1)
        c = (vols[:, None] * cents).sum(axis=0) / vols.sum()
        return CentroidEstimate(origin + c @ basis)
    if method != "mc":
        raise BornError(f"unknown centroid method {method!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    lo, hi = local.min(axis=0), local.max(axis=0)
    pts = rng.uniform(lo, hi, size=(samples, k))
    inside = pts[tri.find_simplex(pts) >= 0]
    if len(inside) < 2:
        raise NumericalError("too few accepted samples for a centroid estimate")
    mean = inside.mean(axis=0)
    se = float(np.max(inside.std(axis=0, ddof=1) @ np.abs(basis)) / math.sqrt(len(inside)))
    return CentroidEstimate(origin + mean @ basis, se, "mc")
