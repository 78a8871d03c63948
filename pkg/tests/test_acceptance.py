"""Acceptance criteria, one test each.

Every criterion prints a single ``ACCEPT <id> PASS|FAIL ...`` line (also
collected into the terminal summary). All comparisons are exact (tolerance
zero); instance counts and budgets are pinned below.
"""

import time

import pytest

from svectcc.bimorph import RankMatrix, perm_block
from svectcc.exactmat import Mat
from svectcc.harness import (
    SampleGrid,
    check_axioms_A,
    check_perm_normalization,
    check_random_law,
    find_kv_counterexample,
    recheck,
)

SEED = 0
GRID = SampleGrid(cap=2, extra_random=20, seed=SEED, extra_cap=4)
N_COMPOSE_ORACLE = 200
N_ASSOC_UNIT = 100
N_HCOMPOSE_ORACLE = 200
N_LAWS = 100
N_NATURALITY = 200
N_ROUNDTRIP = 100
KV_BUDGET = 1000
TOLERANCE = 0  # exact arithmetic throughout

RESULTS: list[str] = []


def record(cid: str, ok: bool, detail: str, seconds: float):
    line = f"ACCEPT {cid:<22} {'PASS' if ok else 'FAIL'}  {detail}  ({seconds:.1f}s, tolerance={TOLERANCE})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _rows(*rows):
    return Mat.from_rows(rows)


WORKED_6 = _rows(
    [1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
)
WORKED_9 = _rows(
    [1, 0, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0, 0, 0],
)


def test_perm_block_worked_matrices():
    R = RankMatrix.from_rows([[1, 1], [0, 1], [2, 0]])
    (p6, p9), dt = _timed(lambda: (perm_block((1, 2, 1), R, (1, 1)), perm_block((1, 2, 1), R, (2, 1))))
    ok = p6 == WORKED_6 and p9 == WORKED_9 and dt < 1.0
    record("perm_block_example", ok, f"6x6 match={p6 == WORKED_6}, 9x9 match={p9 == WORKED_9}", dt)


def test_perm_block_normalization_exhaustive():
    rep, dt = _timed(lambda: check_perm_normalization(max_dim=3, max_entry=2, max_a=2))
    record("perm_normalization", rep.passed, f"{rep.instances_checked} instances, {rep.sample_grid}", dt)


def test_generator_relations_and_axioms_exhaustive():
    rep, dt = _timed(lambda: check_axioms_A(max_n=3, max_a=3, max_r=2))
    record("axioms_A", rep.passed, f"{rep.instances_checked} (n, a, r) triples, {rep.sample_grid}", dt)


def _law(cid, law, n, extra=""):
    rep, dt = _timed(lambda: check_random_law(law, n, seed=SEED, grid=GRID))
    ok = rep.passed and rep.instances_checked >= n
    record(cid, ok, f"{law}: {rep.instances_checked}/{n} instances, coverage={rep.coverage}{extra}", dt)
    return rep, dt


def test_oracle_compose():
    _, dt = _law("oracle_compose", "oracle_compose", N_COMPOSE_ORACLE)
    assert dt < 60


def test_compose1_assoc_and_units():
    _law("assoc1", "assoc1", N_ASSOC_UNIT)
    _law("unit1", "unit1", N_ASSOC_UNIT)


def test_oracle_hcompose():
    _law("oracle_hcompose", "oracle_hcompose", N_HCOMPOSE_ORACLE)


@pytest.mark.parametrize("law", ["interchange", "vassoc", "vunit", "hassoc", "hunit"])
def test_two_cell_laws(law):
    rep, _ = _law(law, law, N_LAWS)
    assert rep.coverage["zero_rank"] > 0 and rep.coverage["zero_object"] > 0


def test_naturality():
    _law("naturality", "naturality", N_NATURALITY)


def test_kv_counterexample():
    rep, dt = _timed(lambda: find_kv_counterexample(KV_BUDGET, SEED))
    ok = rep.passed and recheck(rep) and dt < 60
    cell = rep.counterexample["cell"] if rep.counterexample else {}
    record("kv_counterexample", ok,
           f"witness after {rep.instances_checked}/{KV_BUDGET} instances, differing cell ({cell.get('k')}, {cell.get('j')}), "
           f"re-verified={ok}", dt)


def test_gauge_roundtrip():
    _law("gauge_roundtrip", "gauge_roundtrip", N_ROUNDTRIP)
