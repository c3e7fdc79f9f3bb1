"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with pytest (lines are repeated in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""

import sys
from fractions import Fraction

import pytest

from pottskit.corpus import k3, multigraph_corpus, triangle_fixtures
from pottskit.partition import PottsModel, partition_enumerate
from pottskit.suites import Options, run_suite

RESULTS = {}
_reports = {}


def suite(name):
    if name not in _reports:
        _reports[name] = run_suite(name, Options())
    return _reports[name]


def records(name, *tags, exclude=()):
    return [r for r in suite(name).instances
            if all(t in r["instance"] for t in tags)
            and not any(x in r["instance"] for x in exclude)]


def exact_zero(recs):
    return bool(recs) and all(r["exact"] and r["residual"] == "0" for r in recs)


def worst(recs):
    return max((r["residual"] for r in recs), default=float("inf"))


def within(recs, tol, count=None):
    ok = bool(recs) and all(not r["exact"] and r.get("error") is None and r["residual"] <= tol
                            for r in recs)
    return ok and (count is None or len(recs) == count)


def report(k, ok, detail):
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_criterion_01_partition_identities():
    recs = records("partition-identities", exclude=("z-from-tutte",))
    graphs = len(multigraph_corpus(6))
    fk = records("partition-identities", " fk")
    elapsed = suite("partition-identities").elapsed
    ok = exact_zero(recs) and len(fk) == 3 * graphs and elapsed < 120
    report(1, ok, f"{len(recs)} exact checks over {graphs} graphs x n in 2..4, "
                  f"{elapsed:.0f}s (limit 120s)")


def test_criterion_02_tutte_bridge():
    recs = records("partition-identities", "z-from-tutte")
    graphs = len(multigraph_corpus(6))
    z = partition_enumerate(PottsModel.isotropic(k3(), 2, Fraction(3), Fraction(1)))
    ok = exact_zero(recs) and len(recs) == 3 * graphs and z == 72
    report(2, ok, f"{len(recs)} graph/n pairs x 20 rational weights exact, Z2(K3; 3, 1) = {z}")


def test_criterion_03_biggs():
    names = ("biggs", "matiyasevich", "four-formulas")
    recs = [r for n in names for r in suite(n).instances]
    elapsed = sum(suite(n).elapsed for n in names)
    ok = exact_zero(recs) and elapsed < 300
    report(3, ok, f"{len(recs)} exact checks on the <= 5 edge corpus, n in 2..5, "
                  f"{elapsed:.0f}s (limit 300s)")


def test_criterion_04_shifts():
    names = ("shift-product", "shift-sum", "vertex-convolution")
    recs = [r for n in names for r in suite(n).instances]
    report(4, exact_zero(recs), f"{len(recs)} exact checks, <= 4 edges, <= 6 vertices, "
                                f"(n1, n2) in {{1,2,3}}^2")


def test_criterion_05_star_triangle():
    names = list(triangle_fixtures())
    recs = [r for r in suite("star-triangle").instances
            if any(r["instance"].startswith(f"{n} draw") for n in names)]
    ok = within(recs, 1e-9, count=3 * 20 * len(names))
    report(5, ok, f"{len(names)} fixtures x 20 draws, Z/boundary/dlogZ worst {worst(recs):.2e} "
                  f"(tol 1e-9)")


def test_criterion_06_general_n():
    cond = [r for s in ("2", "3", "1/2") for r in records("general-n", f"jones s={s} condition")]
    five = records("general-n", "jones", "five-equations")
    inv = records("general-n", "jones", "Z invariance")
    gen = records("general-n", "generic rejected")
    ok = (exact_zero(cond) and len(cond) == 3 and within(five, 1e-12, 3)
          and within(inv, 1e-9, 3) and exact_zero(gen))
    report(6, ok, f"Jones s in {{2, 3, 1/2}}: condition exact, five equations "
                  f"{worst(five):.2e} (tol 1e-12), Z {worst(inv):.2e} (tol 1e-9), "
                  f"{len(gen)} generic triples rejected")


def test_criterion_07_lyb():
    lyb = records("lyb", " lyb")
    closed = records("lyb", "closed form")
    orth = records("lyb", "orthogonality")
    ok = within(lyb, 1e-12, 100) and within(closed, 1e-12, 20) and within(orth, 1e-13)
    report(7, ok, f"LYB {worst(lyb):.2e} on {len(lyb)} samples, closed form {worst(closed):.2e} "
                  f"at {len(closed)} points, R R^T {worst(orth):.2e}")


def test_criterion_08_tetrahedron():
    forms = records("tetrahedron", "form ")
    counted = records("tetrahedron", "accepted sample count")
    six = records("tetrahedron", "six-R") + records("tetrahedron", "sequences agree")
    inv = records("tetrahedron", "involution lemma")
    ok = (within(forms, 1e-8, 2) and not counted and "over 100 samples" in forms[0]["instance"]
          and within(six, 1e-8, 200) and within(inv, 1e-9, 100))
    report(8, ok, f"both forms {worst(forms):.2e} over 100 accepted samples, six-R "
                  f"{worst(six):.2e}, involution lemma {worst(inv):.2e}")


def test_criterion_09_reconstruction():
    trip = records("reconstruction", "roundtrip")
    scale = records("reconstruction", "scale")
    ok = within(trip, 1e-9, 50) and within(scale, 1e-9, 50)
    report(9, ok, f"roundtrip {worst(trip):.2e} on {len(trip)} tuples, scale {worst(scale):.2e}")


def test_criterion_10_fourteen_term():
    cons = records("fourteen-term", "constraint")
    rel = records("fourteen-term", "relation")
    base = records("fourteen-term", "base relation")
    step = [r for r in rel if not r["instance"].startswith("base")]
    ok = within(cons, 1e-12) and within(base, 1e-9, 1) and within(step, 1e-9) and len(step) >= 1
    report(10, ok, f"constraint {worst(cons):.2e}, relation {worst(rel):.2e} on base and "
                   f"{len(step)} induction-step ambients")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
