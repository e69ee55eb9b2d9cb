"""Quantum states in the real probability space.

A state couples an LP system with a working distribution picked from its
polytope, plus a Carathéodory simplex of vertices holding that point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boolean_core import Covector, DecisionFunction, indicator_covector
from .errors import BornError, NumericalError
from .info import as_distribution, shannon
from .io import dec
from .lp_core import (
    TOL,
    LinearSystem,
    Polytope,
    SimplicialRepresentation,
    caratheodory,
    centroid,
    enumerate_vertices,
    maxent,
    simplex_from_weights,
)

SELECTIONS = ("maxent", "centroid", "explicit")


@dataclass(frozen=True)
class QuantumStateReal:
    simplex: SimplicialRepresentation
    working: np.ndarray
    system: LinearSystem
    polytope: Polytope | None = field(default=None, repr=False)
    selection: str = "explicit"

    def __post_init__(self):
        w = as_distribution(self.working)
        if np.max(np.abs(self.simplex.point - w)) > TOL.lin:
            raise NumericalError("working distribution differs from the simplex mean")
        w.setflags(write=False)
        object.__setattr__(self, "working", w)

    @property
    def mu(self) -> np.ndarray:
        return self.simplex.coords

    @property
    def d(self) -> int:
        return self.working.size

    @property
    def rank(self) -> int:
        return self.simplex.r


def make_state(system: LinearSystem, selection: str = "maxent", explicit=None,
               polytope: Polytope | None = None) -> QuantumStateReal:
    if selection not in SELECTIONS:
        raise BornError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    if polytope is None:
        polytope = enumerate_vertices(system)
    if selection == "maxent":
        w = maxent(system, polytope).distribution
    elif selection == "centroid":
        w = centroid(polytope)
    else:
        if explicit is None:
            raise BornError("explicit selection needs a working distribution")
        w = np.asarray(explicit, dtype=float)
        if w.shape != (system.d,) or not system.contains(w):
            raise NumericalError("explicit working distribution is not in the polytope")
    rep = caratheodory(polytope, w)
    return QuantumStateReal(rep, w, system, polytope, selection)


def state_from_weights(system: LinearSystem, weights, indices=None,
                       polytope: Polytope | None = None) -> QuantumStateReal:
    """State with caller-chosen simplicial coordinates on polytope vertices."""
    if polytope is None:
        polytope = enumerate_vertices(system)
    rep = simplex_from_weights(polytope, weights, indices)
    return QuantumStateReal(rep, rep.point, system, polytope, "explicit")


def expectation(state: QuantumStateReal, q) -> float:
    q = q if isinstance(q, Covector) else Covector(np.asarray(q, float))
    return q.pair(state.working)


def is_pure(state: QuantumStateReal) -> bool:
    return bool(state.mu.max() >= 1 - TOL.zero)


@dataclass(frozen=True)
class RealPovm:
    elements: tuple[Covector, ...]
    labels: tuple = ()

    def __post_init__(self):
        els = tuple(e if isinstance(e, Covector) else Covector(np.asarray(e, float))
                    for e in self.elements)
        if not els:
            raise BornError("empty POVM")
        mat = np.array([e.entries for e in els])
        if mat.min() < 0:
            raise BornError("POVM covectors must be nonnegative")
        if np.max(np.abs(mat.sum(axis=0) - 1)) > TOL.lin:
            raise BornError("POVM covectors do not sum to the tautology")
        labels = tuple(self.labels) or tuple(range(len(els)))
        if len(labels) != len(els):
            raise BornError("one label per POVM element")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def partition(cls, parts, register, labels=()):
        return cls(tuple(indicator_covector(DecisionFunction(frozenset(p)), register)
                         for p in parts), tuple(labels))


def measure(state: QuantumStateReal, povm: RealPovm) -> np.ndarray:
    p = np.array([e.pair(state.working) for e in povm.elements])
    if abs(p.sum() - 1) > TOL.lin or p.min() < -TOL.zero:
        raise NumericalError("measurement outcomes are not a distribution")
    return p


def chart_entropy(state: QuantumStateReal) -> float:
    return shannon(state.working)


def simplicial_entropy(state: QuantumStateReal) -> float:
    return shannon(state.mu)


def state_report(state: QuantumStateReal) -> dict:
    return {
        "selection": state.selection,
        "rank_m": state.system.m,
        "d": state.d,
        "working": [dec(x) for x in state.working],
        "simplex_vertices": [[dec(x) for x in v] for v in state.simplex.vertices],
        "mu": [dec(x) for x in state.mu],
        "chart_entropy_bits": dec(chart_entropy(state)),
        "simplicial_entropy_bits": dec(simplicial_entropy(state)),
        "pure": is_pure(state),
    }
