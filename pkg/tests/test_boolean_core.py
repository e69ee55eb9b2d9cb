import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bornlp.boolean_core import (
    ClassicalState,
    ConstraintSpec,
    Covector,
    DecisionFunction,
    Register,
    enumerate_states,
    indicator_covector,
    literal_indicator,
    parse_constraints,
    requirement_to_lineq,
    universal_equations,
)
from bornlp.errors import BornError, ParseError

from oracles import brute_marginal


def test_register_bounds():
    assert Register(1).d == 2
    assert Register(8).d == 256
    for bad in (0, 9, 2.0):
        with pytest.raises(BornError):
            Register(bad)


def test_big_endian_indexing():
    reg = Register(3)
    s = ClassicalState.from_index(4, reg)
    assert s.assignment == (1, 0, 0)
    assert ClassicalState.from_assignment((0, 1, 1)).index == 3
    for st_ in enumerate_states(reg):
        assert ClassicalState.from_assignment(st_.assignment).index == st_.index


def test_variable_indicator_is_msb_first():
    reg = Register(2)
    q1 = indicator_covector(DecisionFunction.of_variable(1, reg), reg)
    q2 = indicator_covector(DecisionFunction.of_variable(2, reg), reg)
    np.testing.assert_array_equal(q1.entries, [0, 0, 1, 1])
    np.testing.assert_array_equal(q2.entries, [0, 1, 0, 1])
    taut = indicator_covector(DecisionFunction.tautology(reg), reg)
    np.testing.assert_array_equal(taut.entries, np.ones(4))


def test_covector_pairing_and_length_check():
    q = Covector(np.array([1.0, 0.0, 2.0]))
    assert q.pair([0.2, 0.3, 0.5]) == pytest.approx(1.2)
    with pytest.raises(BornError):
        q.pair([0.5, 0.5])
    with pytest.raises(BornError):
        Covector(np.array([np.nan]))


def test_contradictory_and_out_of_range_literals():
    reg = Register(2)
    with pytest.raises(BornError):
        literal_indicator((1, -1), reg)
    with pytest.raises(BornError):
        literal_indicator((3,), reg)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(1, 4), st.data())
def test_literal_indicator_matches_brute_force(n, data):
    reg = Register(n)
    vars_ = data.draw(st.lists(st.integers(1, n), unique=True, max_size=n))
    lits = tuple(v if data.draw(st.booleans()) else -v for v in vars_)
    w = np.random.Generator(np.random.PCG64(len(lits) + 7 * n)).dirichlet(np.ones(reg.d))
    q = literal_indicator(lits, reg)
    assert q.pair(w) == pytest.approx(brute_marginal(w, lits, n), abs=1e-14)


def test_requirement_rows():
    reg = Register(2)
    q, b = requirement_to_lineq(ConstraintSpec.req([1, -2], Fraction(1, 3)), reg)
    np.testing.assert_array_equal(q.entries, [0, 0, 1, 0])
    assert b == pytest.approx(1 / 3)
    q, b = requirement_to_lineq(ConstraintSpec.req([1], equals=[2]), reg)
    np.testing.assert_array_equal(q.entries, [0, -1, 1, 0])
    assert b == 0.0


def test_universal_equations_reduce_to_normalization():
    for n in (1, 2, 3):
        rows = universal_equations(Register(n))
        assert len(rows) == 1
        np.testing.assert_array_equal(rows[0][0].entries, np.ones(1 << n))
        assert rows[0][1] == 1.0
    # every consistency identity P(A) = P(A;i) + P(A;-i) is implied
    reg = Register(3)
    for lits in itertools.chain([()], itertools.combinations([1, -2, 3], 2)):
        for v in range(1, 4):
            if v in map(abs, lits):
                continue
            lhs = literal_indicator(lits, reg).entries
            rhs = literal_indicator(lits + (v,), reg).entries + literal_indicator(lits + (-v,), reg).entries
            np.testing.assert_array_equal(lhs, rhs)


def test_parse_all_row_kinds():
    text = """
    # comment line
    vars 2
    req 1, -2 = 1/4   # trailing comment
    req 1 = req 2
    states {0, 3} = 0.5
    expect 1, 0, 0, -1 = 0
    """
    reg, specs = parse_constraints(text)
    assert reg.n_vars == 2
    assert [s.kind for s in specs] == ["requirement_prob", "requirement_prob", "state_sum",
                                       "covector_expectation"]
    assert specs[0].rhs == Fraction(1, 4)
    assert specs[1].equals_literals == (2,)
    assert specs[2].states == (0, 3)
    assert specs[0].line == 4


@pytest.mark.parametrize("text,line", [
    ("req 1 = 1/2", 1),
    ("vars 2\nreq 3 = 1/2", 2),
    ("vars 2\nreq 1 = 3/2", 2),
    ("vars 2\nstates {4} = 1", 2),
    ("vars 2\nexpect 1, 2 = 0", 2),
    ("vars 2\nwhat is this", 2),
    ("vars 2\nvars 3", 2),
    ("vars 2\nreq 1 = 1/0", 2),
    ("vars 9", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_constraints(text)
    assert exc.value.line == line


def test_empty_file_is_an_error():
    with pytest.raises(ParseError):
        parse_constraints("# nothing\n")
