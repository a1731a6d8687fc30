import io
import json
from contextlib import redirect_stdout

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from macdonald_bcd import cli
from macdonald_bcd import macdonald as mac
from macdonald_bcd.report import FAIL, PASS, SKIPPED, VerificationReport
from macdonald_bcd.rootsys import RootSystem
from macdonald_bcd.scalars import Scalar


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_compute_trivial_cases():
    code, out = run(["compute", "--type", "C", "--rank", "1", "--r", "1"])
    assert code == 0
    rec = json.loads(out)
    assert [mu for mu, _ in rec["terms"]] == [[1]]
    assert Scalar.from_json(rec["terms"][0][1]) == 1
    code, out = run(["compute", "--type", "C", "--rank", "2", "--r", "0"])
    assert [mu for mu, _ in json.loads(out)["terms"]] == [[0, 0]]


def test_compute_c2_r2_matches_library():
    _, out = run(["compute", "--type", "C", "--rank", "2", "--r", "2"])
    rec = json.loads(out)
    P = mac.macdonald_P(RootSystem("C", 2), 2).expansion
    assert len(rec["terms"]) == 3
    assert all(Scalar.from_json(c) == P[tuple(mu)] for mu, c in rec["terms"])


@pytest.mark.parametrize("fmt", ["text", "latex"])
def test_compute_other_formats(fmt):
    code, out = run(["compute", "--type", "B", "--rank", "2", "--r", "1", "--format", fmt])
    assert code == 0 and "m" in out


def test_specialize_examples():
    _, out = run(["specialize", "--type", "C", "--rank", "2", "--r", "0"])
    assert json.loads(out)["string"] == "1"
    _, out = run(["specialize", "--type", "C", "--rank", "2", "--r", "2", "--base", "T-half"])
    assert json.loads(out)["matches_specialization_formula"] is True
    _, out = run(["specialize", "--type", "D", "--rank", "2", "--r", "3", "--base", "one"])
    assert json.loads(out)["matches_specialization_formula"] is True


def test_usage_errors_are_nonzero():
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--type", "E", "--rank", "2", "--r", "1"])
    assert exc.value.code != 0
    assert cli.main(["compute", "--type", "D", "--rank", "1", "--r", "1"]) == 2
    assert cli.main(["verify", "--suite", "weyl", "--max-n", "4"]) == 2


def test_verify_theorem4_and_conjectures():
    code, out = run(["verify", "--suite", "theorem4", "--max-n", "2", "--max-r", "6"])
    assert code == 0 and all(json.loads(l)["verdict"] == PASS for l in out.splitlines())
    code, out = run(["verify", "--suite", "conjectures", "--max-n", "1", "--max-r", "5"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 18 and all(json.loads(l)["verdict"] == PASS for l in lines)


def test_qseries_stream_is_deterministic():
    a = run(["verify", "--suite", "qseries", "--seed", "42", "--max-r", "3"])
    b = run(["verify", "--suite", "qseries", "--seed", "42", "--max-r", "3"])
    assert a == b
    assert "wall_time" not in a[1]


def test_parallel_stream_matches_serial():
    serial = run(["verify", "--suite", "weyl", "--max-n", "2", "--max-r", "3"])
    parallel = run(["verify", "--suite", "weyl", "--max-n", "2", "--max-r", "3", "--jobs", "2"])
    assert serial == parallel


@settings(max_examples=6, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.sampled_from("BCD"), st.integers(2, 3), st.integers(0, 3))
def test_cache_coherence(tmp_path_factory, type_, n, r):
    cache = tmp_path_factory.mktemp("cache")
    fresh = run(["compute", "--type", type_, "--rank", str(n), "--r", str(r)])
    first = run(["compute", "--type", type_, "--rank", str(n), "--r", str(r), "--cache", str(cache)])
    second = run(["compute", "--type", type_, "--rank", str(n), "--r", str(r), "--cache", str(cache)])
    assert fresh == first == second
    assert cli.cache_path(cache, type_, n, r).exists()


def test_cache_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    run(["compute", "--type", "C", "--rank", "2", "--r", "1"])
    assert cli.cache_path(tmp_path, "C", 2, 1).exists()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([PASS, FAIL, SKIPPED]), max_size=6))
def test_exit_code_contract(verdicts):
    reports = iter([VerificationReport("fake", {"i": i}, v, {"x": 1} if v == FAIL else None)
                    for i, v in enumerate(verdicts)])
    original = (cli.suite_tasks, cli.run_task)
    cli.suite_tasks = lambda *a: list(range(len(verdicts)))
    cli.run_task = lambda task: next(reports)
    try:
        code, out = run(["verify", "--suite", "weyl"])
    finally:
        cli.suite_tasks, cli.run_task = original
    assert code == (1 if FAIL in verdicts else 0)
    assert len(out.splitlines()) == len(verdicts)
