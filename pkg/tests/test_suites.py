import json

import pytest

from pottskit import suites
from pottskit.suites import Options, VerificationReport, run_suite


def _strip(rep):
    d = rep.to_json()
    d.pop("elapsed")
    return d


@pytest.mark.parametrize("name,opts", [
    ("partition-identities", Options(max_edges=2)),
    ("biggs", Options(max_edges=2)),
    ("matiyasevich", Options(max_edges=2)),
    ("four-formulas", Options(max_edges=2)),
    ("shift-product", Options(max_edges=1)),
    ("shift-sum", Options(max_edges=1)),
    ("vertex-convolution", Options(max_edges=2)),
    ("star-triangle", Options(samples=2)),
    ("general-n", Options(samples=2)),
    ("percolation", Options(samples=3)),
    ("lyb", Options(samples=5)),
    ("tetrahedron", Options(samples=3)),
    ("reconstruction", Options(samples=5)),
    ("fourteen-term", Options()),
])
def test_small_runs_pass(name, opts):
    rep = run_suite(name, opts)
    assert rep.instances and rep.passed, rep.to_text()
    assert rep.to_text().startswith(f"{name}: PASS")


def test_every_suite_is_covered():
    assert set(suites.SUITES) == set(suites._BUILDERS)


def test_unknown_suite():
    with pytest.raises(suites.UnknownSuite):
        run_suite("nope")


def test_report_roundtrip():
    rep = run_suite("lyb", Options(samples=3))
    back = VerificationReport.from_json(rep.dumps())
    assert back == rep
    assert json.loads(rep.dumps())["passed"] is True


def test_deterministic():
    a = run_suite("reconstruction", Options(samples=4, seed=3))
    b = run_suite("reconstruction", Options(samples=4, seed=3))
    assert _strip(a) == _strip(b)
    c = run_suite("reconstruction", Options(samples=4, seed=4))
    assert _strip(a) != _strip(c)


def test_failure_reports_operands():
    # a negative tolerance makes every numeric check fail
    rep = run_suite("lyb", Options(samples=2, tol=-1.0))
    assert not rep.passed and len(rep.failures) == len(rep.instances)
    first = rep.failures[0]
    assert first["operands"]
    text = rep.to_text()
    assert "FAIL" in text and "first failure" in text
    for k in first["operands"]:
        assert f"    {k}: " in text


def test_exact_records():
    ok = suites._rec_exact("x", 0, {"a": 1})
    bad = suites._rec_exact("x", "1/3", {"a": 1})
    assert ok["passed"] and "operands" not in ok
    assert not bad["passed"] and bad["residual"] == "1/3" and bad["operands"] == {"a": 1}
    rep = VerificationReport("s", 0, 1e-9, instances=[ok, bad])
    assert rep.max_residual == pytest.approx(1 / 3)


def test_crashing_task_is_a_failure():
    def boom():
        raise RuntimeError("kaput")
    recs = suites._guard("s", boom)
    assert len(recs) == 1 and not recs[0]["passed"] and "kaput" in recs[0]["error"]


def test_threads_cap(monkeypatch):
    monkeypatch.setenv("POTTSKIT_THREADS", "1")
    assert suites.workers() == 1
    monkeypatch.delenv("POTTSKIT_THREADS")
    assert suites.workers() >= 1


def test_tolerance_policy():
    assert suites._tol(Options(), "lyb") == 1e-12
    assert suites._tol(Options(), "something-else") == suites.DEFAULT_TOL
    assert suites._tol(Options(tol=1e-3), "lyb") == 1e-3
