"""Named verification suites and their reports.

Each suite expands into tasks; a task checks one graph or one sample and
returns instance records.  Tasks run in a process pool capped by
``POTTSKIT_THREADS`` and the report keeps task order, so output does not
depend on scheduling.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from . import biggs as bg
from . import startriangle as st
from . import tetrahedron as tt
from .corpus import multigraph_corpus, triangle_fixtures
from .graph import (Multigraph, components, disjoint_union, is_bridge, one_point_join,
                    vertex_induced)
from .invariants import verify_convolution_formula, z_from_tutte
from .partition import (DEFAULT_BUDGET, BoundarySpec, PottsModel, boundary_table,
                        deletion_contraction_residual, partition_cluster,
                        partition_enumerate, partition_fk)
from .poly import format_rational

DEFAULT_TOL = 1e-9

# contract tolerances of the numeric checks, used when no --tol is given
CHECK_TOL = {
    "lyb": 1e-12,
    "closed-form": 1e-12,
    "orthogonality": 1e-13,
    "five-equations": 1e-12,
    "tetrahedron": 1e-8,
    "six-r": 1e-8,
    "constraint": 1e-12,
}

SUITES = ("partition-identities", "biggs", "matiyasevich", "four-formulas",
          "shift-product", "shift-sum", "vertex-convolution", "star-triangle",
          "general-n", "percolation", "lyb", "tetrahedron", "reconstruction",
          "fourteen-term")

DEFAULT_MAX_EDGES = {"partition-identities": 6, "biggs": 5, "matiyasevich": 5,
                     "four-formulas": 5, "shift-product": 4, "shift-sum": 4,
                     "vertex-convolution": 4}


class UnknownSuite(ValueError):
    pass


@dataclass
class Options:
    max_edges: int = None
    samples: int = None
    seed: int = 0
    tol: float = None
    budget: int = None


@dataclass
class VerificationReport:
    suite: str
    seed: int
    tolerance: float
    elapsed: float = 0.0
    instances: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r["passed"] for r in self.instances)

    @property
    def failures(self):
        return [r for r in self.instances if not r["passed"]]

    @property
    def max_residual(self):
        """Largest numeric residual (exact residuals count by absolute value)."""
        vals = [abs(float(Fraction(r["residual"]))) if r["exact"] else r["residual"]
                for r in self.instances if r["residual"] is not None]
        return max(vals, default=0.0)

    def to_json(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["suite"], data["seed"], data["tolerance"], data["elapsed"],
                   list(data["instances"]))

    def to_text(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.suite}: {status}  {len(self.instances)} instances, "
                 f"{len(self.failures)} failed, max residual {self.max_residual:.3e}, "
                 f"{self.elapsed:.1f}s, seed {self.seed}"]
        fails = self.failures
        if fails:
            first = fails[0]
            lines.append(f"  first failure: {first['instance']}")
            lines.append(f"    residual {first['residual']} (tol {first['tol']})")
            if first.get("error"):
                lines.append(f"    error: {first['error']}")
            for k, v in (first.get("operands") or {}).items():
                lines.append(f"    {k}: {v}")
        return "\n".join(lines)


# instance records ------------------------------------------------------------

def _rec_exact(name, residual, operands):
    r = Fraction(residual)
    rec = {"instance": name, "exact": True, "residual": format_rational(r),
           "tol": 0.0, "passed": r == 0}
    if r != 0:
        rec["operands"] = operands
    return rec


def _rec_num(name, residual, tol, operands=None):
    r = float(residual)
    rec = {"instance": name, "exact": False, "residual": r, "tol": tol,
           "passed": bool(r <= tol)}
    if not rec["passed"] and operands:
        rec["operands"] = operands
    return rec


def _rec_error(name, exc, exact, tol, operands=None):
    return {"instance": name, "exact": exact, "residual": None, "tol": tol,
            "passed": False, "error": f"{type(exc).__name__}: {exc}",
            "operands": operands or {}}


def _fmt_weights(ws):
    return [[format_rational(Fraction(a)) if isinstance(a, (int, Fraction)) else a
             for a in w] for w in ws]


def _graph_desc(g: Multigraph):
    return f"v={g.num_vertices} e={g.pairs}"


def _rand_q(rng, lo=-5, hi=5, den=4):
    """Random rational with small numerator and denominator."""
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _rand_nonzero(rng):
    while True:
        x = _rand_q(rng)
        if x != 0:
            return x


def _rng(seed, *keys):
    # string seeds hash deterministically, unlike hash() of a tuple
    return random.Random(":".join(map(str, (seed,) + keys)))


def _fits(n, v, budget):
    return n ** v <= (budget or DEFAULT_BUDGET)


def _tol(opts, check=None):
    if opts.tol is not None:
        return opts.tol
    return CHECK_TOL.get(check, DEFAULT_TOL)


# partition identities --------------------------------------------------------

def _sub_model(m: PottsModel, vertices):
    g = vertex_induced(m.graph, vertices)
    w = dict(zip(m.graph.edge_ids, m.weights))
    return PottsModel(g, m.n, tuple(w[f] for f, _, _ in g.edges))


def _task_partition(idx, g, opts):
    out = []
    budget = opts.budget
    for n in (2, 3, 4):
        if not _fits(n, g.num_vertices, budget):
            continue
        rng = _rng(opts.seed, "partition", idx, n)
        ws = tuple((_rand_q(rng), _rand_nonzero(rng)) for _ in g.edges)
        m = PottsModel(g, n, ws)
        ops = {"graph": _graph_desc(g), "n": n, "weights": _fmt_weights(ws)}
        tag = f"g{idx} n={n}"
        z = partition_enumerate(m, budget)
        out.append(_rec_exact(f"{tag} fk", partition_fk(m, budget) - z, ops))
        for eid, u, w in g.edges:
            if u != w and not is_bridge(g, eid):
                out.append(_rec_exact(f"{tag} deletion-contraction e{eid}",
                                      deletion_contraction_residual(m, eid, budget), ops))
        total = sum(boundary_table(m, [0], budget).values()) if g.num_vertices else z
        out.append(_rec_exact(f"{tag} boundary-sum", total - z, ops))
        comps = components(g)
        if len(comps) > 1:
            rest = [x for c in comps[1:] for x in c]
            z1 = partition_enumerate(_sub_model(m, comps[0]), budget)
            z2 = partition_enumerate(_sub_model(m, rest), budget)
            out.append(_rec_exact(f"{tag} union-split", z - z1 * z2, ops))
        if g.num_vertices and _fits(n, g.num_vertices + 1, budget):
            h = Multigraph.from_pairs(2, [(0, 1)])
            hw = ((_rand_q(rng), _rand_nonzero(rng)),)
            mh = PottsModel(h, n, hw)
            zh = partition_enumerate(mh, budget)
            mu = PottsModel(disjoint_union(g, Multigraph.from_pairs(1, [(0, 0)])), n,
                            ws + hw)
            zl = hw[0][0] * n
            out.append(_rec_exact(f"{tag} disjoint-union", partition_enumerate(mu, budget) - z * zl, ops))
            mj = PottsModel(one_point_join(g, h), n, ws + hw)
            out.append(_rec_exact(f"{tag} one-vertex-join",
                                  n * partition_enumerate(mj, budget) - z * zh, ops))
        worst = Fraction(0)
        for k in range(20):
            a, b = _rand_q(rng), _rand_nonzero(rng)
            if a == b:
                a += 1
            mi = PottsModel.isotropic(g, n, a, b)
            r = z_from_tutte(g, n, a, b) - partition_enumerate(mi, budget)
            if r != 0 and worst == 0:
                worst = r
                ops = dict(ops, alpha=format_rational(a), beta=format_rational(b))
        out.append(_rec_exact(f"{tag} z-from-tutte x20", worst, ops))
    return out


def _tasks_partition(opts):
    return [partial(_task_partition, i, g, opts)
            for i, g in enumerate(multigraph_corpus(opts.max_edges))]


# biggs family ------------------------------------------------------------------

def _task_biggs(idx, g, opts):
    out = []
    for n in (2, 3, 4, 5):
        if not _fits(n, g.num_vertices, opts.budget):
            continue
        rng = _rng(opts.seed, "biggs", idx, n)
        a1, b1 = _rand_q(rng), _rand_nonzero(rng)
        a2, b2 = _rand_q(rng), _rand_nonzero(rng)
        if a2 == b2:
            a2 += 1
        m1 = PottsModel.isotropic(g, n, a1, b1)
        m2 = PottsModel.isotropic(g, n, a2, b2)
        ops = {"graph": _graph_desc(g), "n": n, "m1": [str(a1), str(b1)], "m2": [str(a2), str(b2)]}
        out.append(_rec_exact(f"g{idx} n={n} isotropic", bg.verify_biggs(m1, m2, opts.budget), ops))
        w1, w2 = [], []
        for _ in g.edges:
            a, b = _rand_q(rng), _rand_nonzero(rng)
            c, d = _rand_q(rng), _rand_nonzero(rng)
            w1.append((a, b))
            w2.append((c if c != d else c + 1, d))
        m1 = PottsModel(g, n, tuple(w1))
        m2 = PottsModel(g, n, tuple(w2))
        ops = {"graph": _graph_desc(g), "n": n, "m1": _fmt_weights(w1), "m2": _fmt_weights(w2)}
        out.append(_rec_exact(f"g{idx} n={n} anisotropic", bg.verify_biggs(m1, m2, opts.budget), ops))
    return out


def _task_matiyasevich(idx, g, opts):
    out = []
    for n in (2, 3, 4, 5):
        if _fits(n, g.num_vertices, opts.budget):
            out.append(_rec_exact(f"g{idx} n={n}", bg.verify_matiyasevich(g, n, opts.budget),
                                  {"graph": _graph_desc(g), "n": n}))
    return out


def _task_four(idx, g, opts):
    out = []
    for n in (2, 3, 4, 5):
        if not _fits(n, g.num_vertices, opts.budget):
            continue
        rng = _rng(opts.seed, "four", idx, n)
        a, b = _rand_q(rng), _rand_nonzero(rng)
        ops = {"graph": _graph_desc(g), "n": n, "alpha": str(a), "beta": str(b)}
        for k, r in enumerate(bg.verify_four_formulas(g, n, a, b, opts.budget), 1):
            out.append(_rec_exact(f"g{idx} n={n} formula {k}", r, ops))
    return out


def _small(opts, max_vertices=6):
    return [(i, g) for i, g in enumerate(multigraph_corpus(opts.max_edges))
            if g.num_vertices <= max_vertices]


def _task_shift(kind, idx, g, opts):
    out = []
    rng = _rng(opts.seed, kind, idx)
    for n1 in (1, 2, 3):
        for n2 in (1, 2, 3):
            ops = {"graph": _graph_desc(g), "n1": n1, "n2": n2}
            tag = f"g{idx} n1={n1} n2={n2}"
            if kind == "vertex-convolution":
                out.append(_rec_exact(tag, bg.verify_tutte_vertex_convolution(g, n1, n2), ops))
                continue
            a, b = _rand_q(rng), _rand_nonzero(rng)
            if a == b:
                a += 1
            ops.update(alpha=str(a), beta=str(b))
            fn = bg.verify_order_shift_product if kind == "shift-product" else bg.verify_order_shift_sum
            out.append(_rec_exact(tag, fn(g, n1, n2, a, b, opts.budget), ops))
    if kind == "vertex-convolution":
        r = verify_convolution_formula(g)
        out.append(_rec_exact(f"g{idx} bad-colouring convolution", 0 if r.is_zero() else 1,
                              {"graph": _graph_desc(g), "residual": str(r)}))
    return out


def _tasks_corpus(fn, opts, small=False):
    items = _small(opts) if small else list(enumerate(multigraph_corpus(opts.max_edges)))
    return [partial(fn, i, g, opts) for i, g in items]


# star-triangle -----------------------------------------------------------------

def _task_star_triangle(name, g, draw, opts):
    rng = np.random.default_rng([opts.seed, draw, sum(map(ord, name))])
    ws = tuple((float(a), float(b)) for a, b in
               zip(rng.uniform(0.3, 3.0, len(g.edges)), rng.uniform(0.5, 2.0, len(g.edges))))
    m = PottsModel(g, 2, ws)
    tol = _tol(opts)
    ops = {"graph": _graph_desc(g), "weights": [list(w) for w in ws]}
    try:
        res = st.verify_invariance(m, triangle=(0, 1, 2))
    except (st.StarTriangleError, ValueError, ZeroDivisionError) as exc:
        return [_rec_error(f"{name} draw {draw}", exc, False, tol, ops)]
    return [_rec_num(f"{name} draw {draw} {key}", res[key], tol, ops)
            for key in ("Z", "boundary", "dlogZ")]


def _task_star_side(draw, opts):
    # star to triangle on a star with one extra edge between two leaves
    rng = np.random.default_rng([opts.seed, draw, 7])
    g = Multigraph.from_pairs(5, [(3, 0), (3, 1), (3, 2), (0, 4), (4, 1)])
    ws = tuple((float(a), 1.0) for a in rng.uniform(0.3, 3.0, 5))
    tol = _tol(opts)
    m = PottsModel(g, 2, ws)
    res = st.verify_invariance(m, star_center=3)
    out = [_rec_num(f"star draw {draw} {key}", res[key], tol,
                    {"weights": [list(w) for w in ws]}) for key in ("Z", "boundary", "dlogZ")]
    t = tuple(w[0] for w in ws[:3])
    tp = st.f_map(t)
    beta_p = st.beta_ratio(t)
    r = max(st.ising_system_residuals(t, tp, 1.0, beta_p)) / max(abs(x) for x in t + tp)
    out.append(_rec_num(f"star draw {draw} four-equations", r, tol, {"t": t}))
    return out


def _tasks_star_triangle(opts):
    draws = opts.samples or 20
    tasks = [partial(_task_star_triangle, name, g, d, opts)
             for name, g in triangle_fixtures().items() for d in range(draws)]
    tasks += [partial(_task_star_side, d, opts) for d in range(draws)]
    return tasks


# n >= 3 and percolation ----------------------------------------------------------

def _jones_fixture():
    # star at 3 plus a path closing leaves 0 and 1 through vertex 4
    return Multigraph.from_pairs(5, [(3, 0), (3, 1), (3, 2), (0, 4), (4, 1), (2, 2)])


def _task_jones(s, opts):
    t, n = st.jones_point(s)
    tag = f"jones s={s}"
    out = [_rec_exact(f"{tag} condition", st.condition_residual(t, n), {"t": [str(x) for x in t]})]
    res = st.star_triangle_general(t, n, tol=0)
    r5 = max(st.general_system_residuals(t, res.t, res.beta_product, n))
    out.append(_rec_num(f"{tag} five-equations", r5, _tol(opts, "five-equations")))
    g = _jones_fixture()
    ws = tuple((x, Fraction(1)) for x in t) + ((Fraction(3), Fraction(2)), (Fraction(5), Fraction(3)),
                                               (Fraction(2), Fraction(1)))
    z = partition_cluster(g, n, ws)
    out.append(_rec_num(f"{tag} cluster Z invariance",
                        abs(st.cluster_invariance(g, ws, n, 3)) / max(abs(z), 1e-300), _tol(opts)))
    return out


def _surface_point(rng, n):
    # pick t1, t2 and solve the condition, which is linear in t3
    while True:
        t1, t2 = Fraction(rng.randint(5, 40), 4), Fraction(rng.randint(5, 40), 4)
        c = t1 * t2 - t1 - t2 - (n - 1)
        if c == 0:
            continue
        t3 = (t1 * t2 + (n - 1) * (t1 + t2) + n * n - 3 * n + 1) / c
        if t3 > 0 and t1 + t2 + t3 + n - 3 != 0:
            return (t1, t2, t3)


def _task_general(n, draw, opts):
    rng = _rng(opts.seed, "general", n, draw)
    t = _surface_point(rng, n)
    tag = f"n={n} draw {draw}"
    ops = {"t": [str(x) for x in t]}
    out = [_rec_exact(f"{tag} condition", st.condition_residual(t, n), ops)]
    res = st.star_triangle_general(t, n, tol=0)
    out.append(_rec_exact(f"{tag} five-equations",
                          max(st.general_system_residuals(t, res.t, res.beta_product, n)), ops))
    out.append(_rec_exact(f"{tag} quartic", st.quartic_residual(t, n), ops))
    g = _jones_fixture()
    ws = tuple((x, Fraction(1)) for x in t) + tuple(
        (_rand_q(rng, 1, 5), Fraction(rng.randint(1, 4))) for _ in range(3))
    m = PottsModel(g, n, ws)
    out.append(_rec_exact(f"{tag} Z invariance", st.cluster_invariance(g, ws, n, 3), ops))
    m2, _ = st.star_to_triangle(m, 3)
    z1, z2 = partition_enumerate(m), partition_enumerate(m2)
    out.append(_rec_num(f"{tag} enumerated Z", abs(z2 - z1) / abs(z1), _tol(opts), ops))
    # generic triple: off the surface, must be rejected
    gen = (t[0], t[1], t[2] + 1)
    try:
        st.star_triangle_general(gen, n)
        out.append({"instance": f"{tag} generic rejected", "exact": True, "residual": "1",
                    "tol": 0.0, "passed": False, "operands": {"t": [str(x) for x in gen]}})
    except st.StarTriangleError:
        out.append(_rec_exact(f"{tag} generic rejected", 0, ops))
    return out


def _tasks_general(opts):
    draws = opts.samples or 5
    tasks = [partial(_task_jones, s, opts) for s in (Fraction(2), Fraction(3), Fraction(1, 2))]
    tasks += [partial(_task_general, n, d, opts) for n in (3, 4) for d in range(draws)]
    return tasks


def _task_percolation(draw, opts):
    rng = np.random.default_rng([opts.seed, draw, 11])
    tol = _tol(opts)
    if draw == 0:
        p1 = p2 = p3 = 2 * math.sin(math.pi / 18)
    else:
        while True:
            p1, p2 = rng.uniform(0.05, 0.95, 2)
            if p1 + p2 < 0.98:
                break
        p3 = (1 - p1 - p2) / (1 - p1 * p2)
    p = (float(p1), float(p2), float(p3))
    pp = st.percolation_star_triangle(*p)
    out = [_rec_num(f"draw {draw} relations", max(st.percolation_relations(p, pp)), tol, {"p": p})]
    alpha = tuple(rng.uniform(0.5, 2, 3))
    alpha_p = (math.prod(alpha), 1.0, 1.0)
    general, perc = st.percolation_reduction(p, pp, alpha, alpha_p)
    out.append(_rec_num(f"draw {draw} reduction",
                        max(abs(a - b) for a, b in zip(general, perc)), tol, {"p": p}))
    out.append(_rec_num(f"draw {draw} reduced equations", max(abs(x) for x in general), tol, {"p": p}))
    return out


def _tasks_percolation(opts):
    return [partial(_task_percolation, d, opts) for d in range(opts.samples or 20)]


# tetrahedron family -------------------------------------------------------------

def _task_lyb(k, opts):
    rng = np.random.default_rng([opts.seed, k, 13])
    t = tuple(float(x) for x in rng.uniform(1.05, 10.0, 3))
    out = [_rec_num(f"sample {k} lyb", tt.verify_lyb(t), _tol(opts, "lyb"), {"t": t})]
    if k < 20:
        out.append(_rec_num(f"sample {k} closed form", tt.closed_form_residual(t),
                            _tol(opts, "closed-form"), {"t": t}))
    z = complex(*rng.uniform(-2, 2, 2)) + 2.5
    r = max(tt.orthogonality_residual(dim, plane, z)
            for dim, plane in ((3, (0, 1)), (3, (0, 2)), (4, (1, 3))))
    out.append(_rec_num(f"sample {k} orthogonality", r, _tol(opts, "orthogonality"), {"t": str(z)}))
    return out


def _tasks_lyb(opts):
    return [partial(_task_lyb, k, opts) for k in range(opts.samples or 100)]


def _task_tetra_equation(opts):
    samples = opts.samples or 100
    rep = tt.verify_tetrahedron(samples, opts.seed)
    tol = _tol(opts, "tetrahedron")
    out = [_rec_num(f"form {form} over {rep.accepted} samples ({rep.rejected} rejected)",
                    r, tol) for form, r in rep.per_equation.items()]
    if rep.accepted < samples:
        out.append({"instance": "accepted sample count", "exact": True, "residual": str(samples - rep.accepted),
                    "tol": 0.0, "passed": False})
    return out


def _task_tetra_sample(k, opts):
    rng = np.random.default_rng([opts.seed, k, 17])
    t6 = tt.sample_tuple(rng)
    tol = _tol(opts)
    out = []
    drift = max(tt.run_sequence(t6, seq)[1] for seq in (tt.SEQUENCE_FORWARD, tt.SEQUENCE_BACKWARD))
    out.append(_rec_num(f"sample {k} six-R drift", drift, _tol(opts, "six-r"), {"t": t6}))
    out.append(_rec_num(f"sample {k} sequences agree", tt.sequences_agree(t6), _tol(opts, "six-r"),
                        {"t": t6}))
    out.append(_rec_num(f"sample {k} element identities",
                        max(tt.element_identities(t6).values()), tol, {"t": t6}))
    t3 = t6[:3]
    back = st.f_map(st.f_inverse(t3))
    out.append(_rec_num(f"sample {k} involution lemma",
                        max(abs(a - b) for a, b in zip(back, t3)), tol, {"t": t3}))
    u = tt.tetra_map(145, t6, "forward", "phi")
    v = tt.tetra_map(145, u, "inverse", "phi")
    out.append(_rec_num(f"sample {k} phi roundtrip",
                        max(abs(a - b) for a, b in zip(v, t6)), tol, {"t": t6}))
    return out


def _tasks_tetrahedron(opts):
    return ([partial(_task_tetra_equation, opts)]
            + [partial(_task_tetra_sample, k, opts) for k in range(opts.samples or 100)])


def _task_reconstruction(k, opts):
    rng = np.random.default_rng([opts.seed, k, 19])
    while True:
        t = tt.sample_tuple(rng, 0.25, 4.0)
        if abs(math.log(t[0])) > 1e-6 and abs(math.log(t[1])) > 1e-6:
            break
    exact = tuple(Fraction(x) for x in t)
    want = tt.canonical_gauge(t)
    bv = tt.boundary_values(exact)
    tol = _tol(opts)
    ops = {"t": t}
    try:
        got = tt.reconstruct_from_boundary(bv)
        scaled = tt.reconstruct_from_boundary({A: Fraction(73, 10) * z for A, z in bv.items()})
    except tt.TetraError as exc:
        return [_rec_error(f"tuple {k}", exc, False, tol, ops)]
    return [_rec_num(f"tuple {k} roundtrip", max(abs(a - b) for a, b in zip(got, want)), tol, ops),
            _rec_num(f"tuple {k} scale", max(abs(a - b) for a, b in zip(got, scaled)), tol, ops)]


def _tasks_reconstruction(opts):
    return [partial(_task_reconstruction, k, opts) for k in range(opts.samples or 50)]


def _task_fourteen(name, extra, opts):
    tol = _tol(opts)
    amb = bg.star_ambient(extra)
    inst = bg.build_14_term_instance(amb, seed=opts.seed)
    ops = {"ambient": _graph_desc(amb), "root": inst.root,
           "m1": [list(w) for w in inst.m1.weights], "m2": [list(w) for w in inst.m2.weights]}
    return [_rec_num(f"{name} constraint", inst.constraint_residual, _tol(opts, "constraint"), ops),
            _rec_num(f"{name} relation", bg.verify_14_term(inst.m1, inst.m2, inst.centre), tol, ops)]


def _tasks_fourteen(opts):
    return [partial(_task_fourteen, "base", (), opts),
            partial(_task_fourteen, "pendant", ((0, 4),), opts),
            partial(_task_fourteen, "chord", ((0, 4), (4, 1)), opts)]


_BUILDERS = {
    "partition-identities": _tasks_partition,
    "biggs": partial(_tasks_corpus, _task_biggs),
    "matiyasevich": partial(_tasks_corpus, _task_matiyasevich),
    "four-formulas": partial(_tasks_corpus, _task_four),
    "shift-product": partial(_tasks_corpus, partial(_task_shift, "shift-product"), small=True),
    "shift-sum": partial(_tasks_corpus, partial(_task_shift, "shift-sum"), small=True),
    "vertex-convolution": partial(_tasks_corpus, partial(_task_shift, "vertex-convolution"),
                                  small=True),
    "star-triangle": _tasks_star_triangle,
    "general-n": _tasks_general,
    "percolation": _tasks_percolation,
    "lyb": _tasks_lyb,
    "tetrahedron": _tasks_tetrahedron,
    "reconstruction": _tasks_reconstruction,
    "fourteen-term": _tasks_fourteen,
}


def workers():
    cap = os.environ.get("POTTSKIT_THREADS")
    n = os.cpu_count() or 1
    return max(1, min(int(cap), n)) if cap else n


def _guard(name, task):
    try:
        return task()
    except Exception as exc:  # a crashing instance is a failed instance
        return [_rec_error(f"{name} task", exc, False, DEFAULT_TOL)]


def run_suite(name, opts=None) -> VerificationReport:
    if name not in _BUILDERS:
        raise UnknownSuite(name)
    opts = opts or Options()
    if opts.max_edges is None and name in DEFAULT_MAX_EDGES:
        opts = Options(DEFAULT_MAX_EDGES[name], opts.samples, opts.seed, opts.tol, opts.budget)
    start = time.perf_counter()
    tasks = _BUILDERS[name](opts)
    nw = min(workers(), len(tasks))
    if nw > 1:
        with ProcessPoolExecutor(nw) as ex:
            chunks = list(ex.map(partial(_guard, name), tasks, chunksize=max(1, len(tasks) // (4 * nw))))
    else:
        chunks = [_guard(name, t) for t in tasks]
    rep = VerificationReport(name, opts.seed, opts.tol if opts.tol is not None else DEFAULT_TOL)
    rep.instances = [r for c in chunks for r in c]
    rep.elapsed = time.perf_counter() - start
    return rep


def run_all(opts=None):
    return [run_suite(name, opts) for name in SUITES]
