"""Acceptance criteria 1-11.  Every comparison is exact equality.

Each criterion is one test; its verdict lands in RESULTS and the conftest
hook prints one line per criterion at the end of the session.  Running this
file directly prints the same lines.
"""
import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stdout

from hypothesis import HealthCheck, given, settings, strategies as st

from macdonald_bcd import cli
from macdonald_bcd import macdonald as mac
from macdonald_bcd import qseries as qs
from macdonald_bcd import transition as tr
from macdonald_bcd.report import FAIL, PASS, SKIPPED, VerificationReport
from macdonald_bcd.rootsys import build

RESULTS: dict[int, bool] = {}
TYPES = ("B", "C", "D")
INNER_POINTS = ((1, 1), (1, 2), (2, 1))


def systems(max_n, min_n=1):
    """All B, C, D root systems with min_n <= n <= max_n; D needs n >= 2."""
    return [build(t, n, allow_rank_one=True) for t in TYPES for n in range(min_n, max_n + 1)
            if not (t == "D" and n < 2)]


def record(criterion, reports, min_samples=0):
    failed = [r.to_line() for r in reports if not r.passed or r.samples < min_samples]
    RESULTS[criterion] = not failed and bool(reports)
    assert reports, "no checks ran"
    assert not failed, "\n".join(failed)


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_criterion_1_weyl_characters():
    record(1, [mac.weyl_character_check(R, r) for R in systems(3, 2) for r in range(6)])


def test_criterion_2_specialization_formula():
    record(2, [mac.specialization_check(R, r) for R in systems(3) for r in range(6)])


def test_criterion_3_theorem4():
    record(3, [mac.theorem4_check(n, r) for n in range(1, 4) for r in range(7)])


def test_criterion_4_conjectures():
    reports = []
    for k in (1, 2, 3, 4):
        cases = [(n, r) for n in range(tr.MIN_RANK[k], 3) for r in range(6)]
        cases += [(3, r) for r in range(4)]
        reports += [tr.conjecture_check(k, n, r, d) for n, r in cases for d in ("forward", "converse")]
    for n in range(tr.MIN_RANK[5], 3):
        for r in range(4):
            for d in ("forward", "converse"):
                reports.append(tr.conjecture5_coefficients_check(n, r, d))
                reports.append(tr.conjecture5_check(n, r, d))
    record(4, reports)


def test_criterion_5_degenerations():
    record(5, [tr.degeneration_check(k, n, r)
               for k in (1, 2, 4) for n in range(tr.MIN_RANK[k], 4) for r in range(6)])


def test_criterion_6_matrix_inverses_and_reduction():
    reports = [tr.mutual_inverse_check(tag, 12, seed=0, count=20) for tag in tr.FAMILIES]
    reports += [tr.bressoud_reduction_check(r, d, count=20) for d in (0, 1) for r in range(6)]
    record(6, reports, min_samples=20)


def test_criterion_7_qseries():
    sampled = (qs.theorem1_check, qs.theorem2_check, qs.theorem3_check, qs.lemma7_check, qs.lemma9_check)
    reports = [check(r, seed=0, count=20) for check in sampled for r in range(9)]
    reports += [qs.oracle_check(name, r, seed=0, count=20) for name in sorted(qs.ORACLES) for r in range(9)]
    reports += [qs.q_binomial_check(8, seed=0, count=20)]
    symbolic = [check(r, symbolic=True) for check in sampled for r in range(3)]
    symbolic += [qs.oracle_check(name, r, symbolic=True) for name in sorted(qs.ORACLES) for r in range(3)]
    failed = [rep.to_line() for rep in symbolic if not rep.passed]
    assert not failed, "\n".join(failed)
    record(7, reports, min_samples=20)


def test_criterion_8_identities():
    reports = [mac.theorem5_check(n) for n in range(1, 4)]
    reports += [mac.theorem5_check(n, "sampled", seed=0) for n in range(1, 6)]
    reports += [mac.lemma8_check(n) for n in range(1, 5)]
    reports += [mac.lemma2_check(n, r) for n in range(1, 4) for r in range(5)]
    record(8, reports)


def test_criterion_9_orthogonality():
    record(9, [mac.orthogonality_check(R, r, k, K)
               for R in systems(2) for r in range(5) for k, K in INNER_POINTS])


def test_criterion_10_principal_specializations():
    reports = [mac.principal_g_checks(R, r) for R in systems(2) for r in range(5)]
    corner = {"C": "T-half", "B": "T", "D": "one"}
    for R in systems(2):
        for r in range(5):
            out = cli.specialize_value(R.type, R.n, r, corner[R.type])
            closed = cli.specialize_value(R.type, R.n, r, "a")
            ok = out["matches_specialization_formula"] and closed["matches_closed_form"]
            reports.append(VerificationReport("corner_base", {"type": R.type, "n": R.n, "r": r},
                                              PASS if ok else FAIL, None if ok else [out, closed]))
    record(10, reports)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 4))
def _deterministic_streams(seed, max_r):
    argv = ["verify", "--suite", "qseries", "--seed", str(seed), "--max-r", str(max_r)]
    assert run_cli(argv) == run_cli(argv)


@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.sampled_from(TYPES), st.integers(2, 3), st.integers(0, 4))
def _cache_coherence(tmp_root, type_, n, r):
    cache = tmp_root.mktemp("cache")
    argv = ["compute", "--type", type_, "--rank", str(n), "--r", str(r)]
    fresh = run_cli(argv)
    assert fresh == run_cli(argv + ["--cache", str(cache)]) == run_cli(argv + ["--cache", str(cache)])
    assert cli.cache_path(cache, type_, n, r).exists()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([PASS, FAIL, SKIPPED]), max_size=8))
def _exit_codes(verdicts):
    reports = iter([VerificationReport("synthetic", {"i": i}, v, {"x": 1} if v == FAIL else None)
                    for i, v in enumerate(verdicts)])
    original = (cli.suite_tasks, cli.run_task)
    cli.suite_tasks = lambda *a: list(range(len(verdicts)))
    cli.run_task = lambda task: next(reports)
    try:
        code, out = run_cli(["verify", "--suite", "weyl"])
    finally:
        cli.suite_tasks, cli.run_task = original
    assert code == (1 if FAIL in verdicts else 0)
    assert [json.loads(line)["verdict"] for line in out.splitlines()] == verdicts


def _separate_processes_agree():
    argv = [sys.executable, "-m", "macdonald_bcd", "verify", "--suite", "matrices", "--max-n", "2",
            "--max-r", "2", "--seed", "7"]
    runs = [subprocess.run(argv, capture_output=True, check=True, env={**os.environ, "PYTHONHASHSEED": h}).stdout
            for h in ("1", "2")]
    assert runs[0] == runs[1] and runs[0]


def test_criterion_11_infrastructure(tmp_path_factory):
    RESULTS[11] = False
    _deterministic_streams()
    _separate_processes_agree()
    _cache_coherence(tmp_path_factory)
    _exit_codes()
    assert run_cli(["verify", "--suite", "weyl", "--max-n", "4"])[0] == 2
    RESULTS[11] = True


def summary_lines() -> list[str]:
    verdict = {True: "pass", False: "fail", None: "fail (not run)"}
    return [f"criterion {k}: {verdict[RESULTS.get(k)]}" for k in range(1, 12)]


if __name__ == "__main__":
    import pytest
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
