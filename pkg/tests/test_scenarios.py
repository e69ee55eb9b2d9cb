import json
import math

import numpy as np
import pytest

from bornlp import scenarios as sc
from bornlp.errors import BornError
from bornlp.io import dumps

from oracles import deterministic_chsh_values


@pytest.mark.parametrize("name", ["one_bit", "qubit_mub", "singlet", "triplet", "prbox"])
def test_fast_scenarios_pass(name):
    rep = sc.run_scenario(name)
    failed = [c.name for c in rep.checks if not c.passed]
    assert not failed, failed


def test_epr_scenario_small_sample():
    rep = sc.run_scenario("epr", samples=100_000, seed=3)
    assert rep.passed, [c.name for c in rep.checks if not c.passed]


def test_report_serializes():
    rep = sc.run_scenario("triplet")
    data = json.loads(dumps(rep.to_dict()))
    assert data["schema"] == 1
    assert data["passed"] is True
    assert all(c["source"] in ("reference", "oracle") for c in data["checks"])
    csv = sc.report_csv(rep)
    assert csv.startswith("name,expected")
    assert csv.count("\n") == len(rep.checks) + 1


def test_run_scenario_rejects_bad_input():
    with pytest.raises(BornError):
        sc.run_scenario("nope")
    with pytest.raises(BornError):
        sc.run_scenario("prbox", C=1)


def test_qubit_mub_documents_printed_value():
    rep = sc.qubit_mub(math.pi / 4)
    assert any("2.125" in n for n in rep.notes)
    total = sum(float(x) for x in rep.tables["entropies_bits"])
    assert total == pytest.approx(2.2018, abs=1e-4)


def test_epr_analytic_grid():
    system, poly = sc.triplet_system()
    for t1 in np.linspace(0, 2 * math.pi, 12, endpoint=False):
        for t2 in (0.0, 1.1):
            st = sc.epr_state(t1, t2, system, poly)
            c = math.cos(t1 - t2)
            np.testing.assert_allclose(st.working, [(1 - c) / 4, (1 + c) / 4, (1 + c) / 4,
                                                    (1 - c) / 4], atol=1e-12)


def test_lambda_sampler_matches_density():
    g = np.random.Generator(np.random.PCG64(0))
    phi = 0.7
    lam = sc.sample_lambda(phi, 400_000, g)
    assert lam.min() >= 0 and lam.max() < 2 * math.pi
    # mean of cos^2(lambda - phi) under |cos|/4 is 2/3
    assert np.mean(np.cos(lam - phi) ** 2) == pytest.approx(2 / 3, abs=3e-3)


@pytest.mark.parametrize("first", ["a", "b"])
def test_protocol_order_does_not_matter(first):
    sim = sc.epr_protocol_sim(0.3, 1.9, 200_000, seed=11, first=first)
    assert sim.max_sigma < 4.0


def test_protocol_validation():
    with pytest.raises(BornError):
        sc.epr_protocol_sim(0, 1, 0)
    with pytest.raises(BornError):
        sc.epr_protocol_sim(0, 1, 10, first="c")


def test_chsh_values():
    assert sc.epr_chsh_analytic() == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert sc.local_chsh_max() == max(abs(v) for v in deterministic_chsh_values()) == 2
    assert abs(sc.prbox_chsh(0, 0)) == pytest.approx(4.0, abs=1e-9)


def test_pr_permutations_map_vertices():
    table = sc.pr_vertex_table()
    psi00 = np.sqrt(table[0])
    for A in (0, 1):
        for B in (0, 1):
            np.testing.assert_allclose(sc.pr_permutation(A, B) @ psi00, np.sqrt(table[2 * A + B]),
                                       atol=1e-15)


def test_pr_s_diagonal_values():
    s = sc.pr_s_diagonal()
    table = sc.pr_vertex_table()
    assert [float(s @ v) for v in table] == [1.0, 1.0, 1.0, -1.0]


def test_run_builtin_constraint_files():
    for name in ("singlet", "triplet", "prbox"):
        rep = sc.run_constraint_file(sc.constraint_path(name), "maxent", mub=(name != "prbox"))
        assert rep.passed, (name, [c.name for c in rep.checks if not c.passed])


def test_inconsistent_file_reports_line(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("vars 1\nreq 1 = 1/3\n\nreq -1 = 1/3\n")
    rep = sc.run_constraint_file(p)
    assert not rep.passed
    assert any("line 4" in n for n in rep.notes)


def test_constraint_path_unknown():
    with pytest.raises(BornError):
        sc.constraint_path("no_such_file.txt")
