from dataclasses import replace

import pytest

from hzrcg.benchmark import (RECORD_HEADER, RecordFormatError, RunRecord, make_problem, read_records_csv,
                             run_suite, write_records_csv)
from hzrcg.rules import RULE_NAMES, BetaRule
from hzrcg.solver import SolverConfig

HZ, FR = BetaRule.parse("hz"), BetaRule.parse("fr")


def test_single_run():
    recs = run_suite("rayleigh", 1, 10, solvers=[HZ])
    assert len(recs) == 1
    r = recs[0]
    assert (r.problem_id, r.solver_id, r.seed, r.n) == ("rayleigh-n10-s0", "hz", 0, 10)
    assert r.converged and r.iterations > 0 and r.elapsed_ns > 0


def test_solvers_share_instance():
    a, b = run_suite("stability", 1, 12, 0.3, solvers=[HZ, FR], base_seed=5)
    assert (a.problem_id, a.seed) == (b.problem_id, b.seed) == ("stability-n12-p0.3-s5", 5)
    assert (a.solver_id, b.solver_id) == ("hz", "fr")


def test_full_size_cardinality():
    seven = [BetaRule.parse(n) for n in RULE_NAMES if n != "mhz"]
    recs = run_suite("rayleigh", 100, 100, solvers=seven, config=SolverConfig(max_iterations=1))
    assert len(recs) == 700
    assert len({r.problem_id for r in recs}) == 100


def test_parallel_matches_sequential():
    kw = dict(suite="stability", instances=4, n=20, p=0.2, solvers=[HZ, FR])
    seq = run_suite(**kw, workers=1)
    par = run_suite(**kw, workers=2)
    strip = [replace(r, elapsed_ns=0) for r in seq]
    assert strip == [replace(r, elapsed_ns=0) for r in par]


def test_make_problem_rejects_unknown_suite():
    with pytest.raises(ValueError):
        make_problem("tsp", 5, 0.1, 0)
    with pytest.raises(ValueError):
        run_suite("tsp")


def _records(k):
    return [RunRecord(f"p{i}", "hz" if i % 2 else "fr", i, 100, bool(i % 3), i, 2 * i, 2 * i, 1000 + i,
                      0.1 * i + 1e-17, 1e-7 / (i + 1)) for i in range(k)]


def test_csv_round_trip(tmp_path):
    recs = _records(20)
    path = tmp_path / "runs.csv"
    write_records_csv(recs, path)
    assert read_records_csv(path) == recs


def test_csv_line_count(tmp_path):
    path = tmp_path / "runs.csv"
    write_records_csv(_records(700), path)
    lines = path.read_text().splitlines()
    assert len(lines) == 701
    assert lines[0] == ",".join(RECORD_HEADER)


def test_csv_missing_column(tmp_path):
    path = tmp_path / "runs.csv"
    write_records_csv(_records(3), path)
    text = path.read_text().replace(",iterations,", ",iters,", 1)
    path.write_text(text)
    with pytest.raises(RecordFormatError, match="iterations"):
        read_records_csv(path)


def test_csv_bad_row(tmp_path):
    path = tmp_path / "runs.csv"
    write_records_csv(_records(3), path)
    lines = path.read_text().splitlines()
    lines[2] = lines[2].replace("false", "maybe").replace("true", "maybe")
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(RecordFormatError, match="line 3"):
        read_records_csv(path)
