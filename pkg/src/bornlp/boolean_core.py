"""Boolean registers, classical states and linear constraint rows.

States are indexed big-endian: variable 1 is the most significant bit, so
the assignment (x1, ..., xN) has index sum(x_i * 2**(N - i)).  A literal is a
signed 1-based variable number: ``3`` means X3 is true, ``-3`` means X3 is
false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import BornError, ParseError

MAX_VARS = 8


@dataclass(frozen=True)
class Register:
    n_vars: int

    def __post_init__(self):
        if not isinstance(self.n_vars, (int, np.integer)) or not 1 <= self.n_vars <= MAX_VARS:
            raise BornError(f"n_vars must be an integer in [1, {MAX_VARS}], got {self.n_vars!r}")

    @property
    def d(self) -> int:
        return 1 << self.n_vars


@dataclass(frozen=True)
class ClassicalState:
    index: int
    assignment: tuple[int, ...]

    @classmethod
    def from_index(cls, index: int, register: Register) -> "ClassicalState":
        n = register.n_vars
        bits = tuple((index >> (n - 1 - i)) & 1 for i in range(n))
        return cls(index, bits)

    @classmethod
    def from_assignment(cls, bits) -> "ClassicalState":
        idx = 0
        for b in bits:
            idx = (idx << 1) | int(b)
        return cls(idx, tuple(int(b) for b in bits))


@dataclass(frozen=True)
class DecisionFunction:
    support: frozenset[int]

    @classmethod
    def tautology(cls, register: Register) -> "DecisionFunction":
        return cls(frozenset(range(register.d)))

    @classmethod
    def of_variable(cls, var: int, register: Register, value: int = 1) -> "DecisionFunction":
        lit = var if value else -var
        return cls(frozenset(_consistent_states((lit,), register)))


@dataclass(frozen=True)
class Covector:
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 1 or not np.all(np.isfinite(arr)):
            raise BornError("covector entries must be a finite 1-D array")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __len__(self):
        return self.entries.size

    def pair(self, p) -> float:
        p = np.asarray(p, dtype=float)
        if p.shape != self.entries.shape:
            raise BornError(f"length mismatch: covector {self.entries.size}, vector {p.size}")
        return float(self.entries @ p)


REQUIREMENT = "requirement_prob"
STATE_SUM = "state_sum"
EXPECTATION = "covector_expectation"
KINDS = (REQUIREMENT, STATE_SUM, EXPECTATION)


@dataclass(frozen=True)
class ConstraintSpec:
    """One linear constraint.

    ``requirement_prob`` with ``equals_literals`` set encodes
    P(literals) = P(equals_literals); ``rhs`` is then ignored (zero).
    """

    kind: str
    rhs: Fraction | float = 0
    literals: tuple[int, ...] = ()
    states: tuple[int, ...] = ()
    covector: tuple[float, ...] = ()
    equals_literals: tuple[int, ...] | None = None
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BornError(f"unknown constraint kind {self.kind!r}")
        if self.kind != EXPECTATION and self.equals_literals is None:
            if not 0 <= float(self.rhs) <= 1:
                raise BornError(f"probability rhs {self.rhs} outside [0, 1]")

    @classmethod
    def req(cls, literals, rhs=0, equals=None):
        return cls(REQUIREMENT, Fraction(rhs) if not isinstance(rhs, float) else rhs,
                   literals=tuple(literals),
                   equals_literals=None if equals is None else tuple(equals))


def enumerate_states(register: Register) -> list[ClassicalState]:
    return [ClassicalState.from_index(i, register) for i in range(register.d)]


def indicator_covector(f: DecisionFunction, register: Register) -> Covector:
    q = np.zeros(register.d)
    for i in f.support:
        if not 0 <= i < register.d:
            raise BornError(f"state index {i} out of range for d={register.d}")
        q[i] = 1.0
    return Covector(q)


def _check_literals(literals, register: Register):
    seen = {}
    for lit in literals:
        v = abs(int(lit))
        if lit == 0 or v > register.n_vars:
            raise BornError(f"literal {lit} out of range for N={register.n_vars}")
        if seen.get(v, lit > 0) != (lit > 0):
            raise BornError(f"contradictory literals X{v} and not X{v}")
        seen[v] = lit > 0


def _consistent_states(literals, register: Register):
    _check_literals(literals, register)
    n = register.n_vars
    out = []
    for idx in range(register.d):
        ok = True
        for lit in literals:
            bit = (idx >> (n - abs(lit))) & 1
            if bit != (1 if lit > 0 else 0):
                ok = False
                break
        if ok:
            out.append(idx)
    return out


def literal_indicator(literals, register: Register) -> Covector:
    """Indicator of every classical state consistent with a partial requirement."""
    return indicator_covector(DecisionFunction(frozenset(_consistent_states(literals, register))), register)


def requirement_to_lineq(spec: ConstraintSpec, register: Register) -> tuple[Covector, float]:
    if spec.kind == REQUIREMENT:
        row = literal_indicator(spec.literals, register).entries
        if spec.equals_literals is not None:
            row = row - literal_indicator(spec.equals_literals, register).entries
            return Covector(row), 0.0
        return Covector(row), float(spec.rhs)
    if spec.kind == STATE_SUM:
        return indicator_covector(DecisionFunction(frozenset(spec.states)), register), float(spec.rhs)
    if len(spec.covector) != register.d:
        raise BornError(f"expectation covector has {len(spec.covector)} entries, need {register.d}")
    return Covector(np.array(spec.covector, dtype=float)), float(spec.rhs)


def universal_equations(register: Register) -> list[tuple[Covector, float]]:
    """Rows implied by the Boolean algebra alone.

    Written over complete-state probabilities, every consistency identity of
    the form P(A) = P(A;i) + P(A;-i) holds by construction, so the only
    surviving row is normalization.
    """
    return [(Covector(np.ones(register.d)), 1.0)]


# constraint files ---------------------------------------------------------

_VALUE = r"[-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?(?:/\d+)?"
_LITS = r"[-+]?\d+(?:\s*[,;]\s*[-+]?\d+)*"
_RE_VARS = re.compile(r"^vars\s+(\d+)$")
_RE_REQ = re.compile(rf"^req\s+({_LITS})\s*=\s*(?:req\s+({_LITS})|({_VALUE}))$")
_RE_STATES = re.compile(rf"^states\s*\{{\s*(\d+(?:\s*,\s*\d+)*)?\s*\}}\s*=\s*({_VALUE})$")
_RE_EXPECT = re.compile(rf"^expect\s+({_VALUE}(?:\s*,\s*{_VALUE})*)\s*=\s*({_VALUE})$")


def parse_value(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}") from exc


def _split_ints(text):
    return tuple(int(t) for t in re.split(r"\s*[,;]\s*", text.strip()) if t)


def parse_constraints(text: str) -> tuple[Register, list[ConstraintSpec]]:
    """Parse the line-oriented constraint format.

    ``states`` uses 0-based indices in the big-endian ordering.
    """
    register = None
    specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RE_VARS.match(line)
        if m:
            if register is not None:
                raise ParseError("duplicate vars header", lineno)
            try:
                register = Register(int(m.group(1)))
            except BornError as exc:
                raise ParseError(str(exc), lineno) from exc
            continue
        if register is None:
            raise ParseError("missing 'vars N' header before constraints", lineno)
        try:
            spec = _parse_row(line, lineno, register)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), lineno) from exc
            raise
        except BornError as exc:
            raise ParseError(str(exc), lineno) from exc
        specs.append(spec)
    if register is None:
        raise ParseError("empty constraint file: no 'vars N' header")
    return register, specs


def _parse_row(line, lineno, register):
    m = _RE_REQ.match(line)
    if m:
        lits = _split_ints(m.group(1))
        _check_literals(lits, register)
        if m.group(2):
            other = _split_ints(m.group(2))
            _check_literals(other, register)
            return ConstraintSpec(REQUIREMENT, 0, literals=lits, equals_literals=other, line=lineno)
        return ConstraintSpec(REQUIREMENT, parse_value(m.group(3)), literals=lits, line=lineno)
    m = _RE_STATES.match(line)
    if m:
        states = _split_ints(m.group(1) or "")
        for s in states:
            if s >= register.d:
                raise ParseError(f"state index {s} out of range for d={register.d}", lineno)
        return ConstraintSpec(STATE_SUM, parse_value(m.group(2)), states=states, line=lineno)
    m = _RE_EXPECT.match(line)
    if m:
        coeffs = tuple(float(parse_value(t)) for t in m.group(1).split(","))
        if len(coeffs) != register.d:
            raise ParseError(f"expect row has {len(coeffs)} coefficients, need {register.d}", lineno)
        return ConstraintSpec(EXPECTATION, parse_value(m.group(2)), covector=coeffs, line=lineno)
    raise ParseError(f"unrecognised constraint {line!r}", lineno)


def load_constraints(path) -> tuple[Register, list[ConstraintSpec]]:
    return parse_constraints(Path(path).read_text())
