"""Star-triangle transformations.

Conventions: in a star the edge ``i`` joins the centre to leaf ``v_i``; in
the matching triangle the edge ``i`` is the one opposite ``v_i``.  Unprimed
reduced weights ``t`` live on the star, primed ones ``t'`` on the triangle.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .graph import GraphError, Multigraph
from .partition import (BoundarySpec, ModelError, PottsModel, boundary_partition,
                        dlogZ_dt, partition_cluster, partition_enumerate, prod)


class StarTriangleError(ValueError):
    pass


@dataclass(frozen=True)
class StarTriangleResult:
    t: tuple
    beta_product: object

    @property
    def ratio(self):
        return self.beta_product


def _real_or_complex(x):
    if isinstance(x, complex) and x.imag == 0:
        return x.real
    return x


def _sqrt(x):
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.sqrt(x)
    if isinstance(x, (int, float, Fraction)) and x >= 0:
        return math.sqrt(x)
    return cmath.sqrt(x)


def _factors(t):
    t1, t2, t3 = t
    A = t1 + t2 * t3
    B = t2 + t1 * t3
    C = t3 + t1 * t2
    D = t1 * t2 * t3 + 1
    if B == 0 or C == 0 or A == 0:
        raise StarTriangleError("zero denominator in the star-triangle map")
    return A, B, C, D


def f_map(t):
    """Star weights to triangle weights for the Ising case.

    ``t'_1`` is the principal root of ``A D / (B C)``; ``t'_2`` and ``t'_3``
    are then fixed by the product relations ``t'_1 t'_2 = D/C`` and
    ``t'_1 t'_3 = D/B`` so that the three roots lie on one sheet.  On the
    positive cone this is the positive branch of every radical.
    """
    A, B, C, D = _factors(t)
    x1 = _sqrt(A * D / (B * C))
    if x1 == 0:
        raise StarTriangleError("degenerate point: t'_1 = 0")
    return (x1, D / (C * x1), D / (B * x1))


def f_map_with_beta(t, beta_product=1):
    """``f_map`` together with ``beta' = beta sqrt(ABC/D)`` on the same sheet."""
    tp = f_map(t)
    A = _factors(t)[0]
    return StarTriangleResult(tp, beta_product * A / tp[0])


def beta_ratio(t):
    """``beta'/beta`` for the star weights ``t``."""
    return f_map_with_beta(t, 1).beta_product


def s_involution(t):
    """``S(t) = (t-1)/(t+1)``.  Note ``S(S(t)) = -1/t``."""
    if t == -1:
        raise StarTriangleError("S has a pole at t = -1")
    return (t - 1) / (t + 1)


def s_inverse(s):
    if s == 1:
        raise StarTriangleError("S^-1 has a pole at 1")
    return (1 + s) / (1 - s)


def sigma(t):
    """Kramers-Wannier duality ``(t+1)/(t-1) = 1/S(t)``, an honest involution."""
    if t == 1:
        raise StarTriangleError("duality has a pole at t = 1")
    return (t + 1) / (t - 1)


def f_inverse(t):
    """``S x S x S o F o S x S x S``; a right inverse: ``f_map(f_inverse(t)) = t``."""
    return tuple(s_involution(x) for x in f_map(tuple(s_involution(x) for x in t)))


def f_inverse_dual(t):
    """``sigma^3 o F o sigma^3``, a two-sided inverse of ``f_map`` on the
    ferromagnetic cone ``t_i > 1`` (which it preserves)."""
    return tuple(sigma(x) for x in f_map(tuple(sigma(x) for x in t)))


def product_residuals(t, tp):
    """Squared-free product relations ``t'_i t'_j (t_k + t_i t_j) = t1 t2 t3 + 1``."""
    t1, t2, t3 = t
    D = t1 * t2 * t3 + 1
    return (abs(tp[0] * tp[1] * (t3 + t1 * t2) - D),
            abs(tp[1] * tp[2] * (t1 + t2 * t3) - D),
            abs(tp[0] * tp[2] * (t2 + t1 * t3) - D))


def ising_system_residuals(t, tp, beta, beta_p):
    """The four Ising star-triangle equations in reduced form."""
    t1, t2, t3 = t
    return (abs(beta * (t1 + t2 * t3) - beta_p * tp[0]),
            abs(beta * (t2 + t1 * t3) - beta_p * tp[1]),
            abs(beta * (t3 + t1 * t2) - beta_p * tp[2]),
            abs(beta * (t1 * t2 * t3 + 1) - beta_p * tp[0] * tp[1] * tp[2]))


# n >= 3 ----------------------------------------------------------------------

def condition_residual(t, n):
    """``t1t2t3 - (t1t2+t2t3+t3t1) - (n-1)(t1+t2+t3) - (n^2-3n+1)``."""
    t1, t2, t3 = t
    return (t1 * t2 * t3 - (t1 * t2 + t2 * t3 + t3 * t1)
            - (n - 1) * (t1 + t2 + t3) - (n * n - 3 * n + 1))


def star_triangle_general(t, n, tol=1e-10):
    """Solve the ``n >= 3`` star-triangle system, or reject.

    The system is solvable only on the surface ``condition_residual = 0``;
    off it a ``StarTriangleError`` carrying the residual is raised.  Exact
    inputs give exact outputs.
    """
    if n < 3:
        raise StarTriangleError("the general map needs n >= 3")
    res = condition_residual(t, n)
    if abs(res) > tol:
        raise StarTriangleError(f"condition violated, residual {res}")
    t1, t2, t3 = t
    D = t1 + t2 + t3 + n - 3
    if D == 0:
        raise StarTriangleError("zero denominator t1+t2+t3+n-3")
    tp = ((t1 + t2 * t3 + n - 2) / D, (t2 + t1 * t3 + n - 2) / D, (t3 + t1 * t2 + n - 2) / D)
    return StarTriangleResult(tp, D)


def general_system_residuals(t, tp, ratio, n):
    """The five ``n >= 3`` equations with ``beta = 1`` and ``beta' = ratio``."""
    t1, t2, t3 = t
    return (abs((t1 + t2 * t3 + n - 2) - ratio * tp[0]),
            abs((t2 + t1 * t3 + n - 2) - ratio * tp[1]),
            abs((t3 + t1 * t2 + n - 2) - ratio * tp[2]),
            abs((t1 * t2 * t3 + n - 1) - ratio * tp[0] * tp[1] * tp[2]),
            abs((t1 + t2 + t3 + n - 3) - ratio))


def quartic_residual(t, n):
    """``(t1t2t3+n-1) D^2 - prod (t_i + t_j t_k + n - 2)`` with ``D = t1+t2+t3+n-3``."""
    t1, t2, t3 = t
    D = t1 + t2 + t3 + n - 3
    return ((t1 * t2 * t3 + n - 1) * D * D
            - (t1 + t2 * t3 + n - 2) * (t2 + t1 * t3 + n - 2) * (t3 + t1 * t2 + n - 2))


def jones_point(s):
    """Star weights ``(-1/s, -s, -s)`` and ``n = s + 1/s + 2``."""
    return (-1 / s, -s, -s), s + 1 / s + 2


# percolation -----------------------------------------------------------------

def percolation_constraint(p):
    p1, p2, p3 = p
    return p1 + p2 + p3 - 1 - p1 * p2 * p3


def percolation_star_triangle(p1, p2, p3, tol=1e-10):
    """Bond-percolation star-triangle: ``p_i + p_j p_k - p1p2p3 = p'_j p'_k``."""
    p = (p1, p2, p3)
    if not all(0 < x < 1 for x in p):
        raise StarTriangleError("probabilities must lie in (0, 1)")
    res = percolation_constraint(p)
    if abs(res) > tol:
        raise StarTriangleError(f"percolation constraint violated, residual {res}")
    P = p1 * p2 * p3
    c1, c2, c3 = p1 + p2 * p3 - P, p2 + p1 * p3 - P, p3 + p1 * p2 - P
    return (_sqrt(c2 * c3 / c1), _sqrt(c1 * c3 / c2), _sqrt(c1 * c2 / c3))


def percolation_relations(p, pp):
    p1, p2, p3 = p
    P = p1 * p2 * p3
    return (abs(p1 + p2 * p3 - P - pp[1] * pp[2]),
            abs(p2 + p1 * p3 - P - pp[0] * pp[2]),
            abs(p3 + p1 * p2 - P - pp[0] * pp[1]))


def percolation_reduction(p, pp, alpha, alpha_p):
    """Substitute ``t = 1/p``, ``t' = 1/p'``, ``beta_i = alpha_i p_i`` and
    ``n = 1`` into the first four general equations and the condition.

    Returns pairs ``(general, percolation)`` that must agree identically: the
    general residuals of the four lines, and ``p1p2p3`` times the condition
    residual, against the percolation residuals written with the alphas.
    """
    p1, p2, p3 = p
    q1, q2, q3 = pp
    t = (1 / p1, 1 / p2, 1 / p3)
    tp = (1 / q1, 1 / q2, 1 / q3)
    a, ap = prod(alpha), prod(alpha_p)
    beta = a * p1 * p2 * p3
    beta_p = ap * q1 * q2 * q3
    n = 1
    t1, t2, t3 = t
    general = (beta * (t1 + t2 * t3 + n - 2) - beta_p * tp[0],
               beta * (t2 + t1 * t3 + n - 2) - beta_p * tp[1],
               beta * (t3 + t1 * t2 + n - 2) - beta_p * tp[2],
               beta * (t1 * t2 * t3 + n - 1) - beta_p * tp[0] * tp[1] * tp[2],
               p1 * p2 * p3 * condition_residual(t, n))
    P = p1 * p2 * p3
    perc = ((p1 + p2 * p3 - P) * a - q2 * q3 * ap,
            (p2 + p1 * p3 - P) * a - q1 * q3 * ap,
            (p3 + p1 * p2 - P) * a - q1 * q2 * ap,
            a - ap,
            -percolation_constraint(p))
    return general, perc


# graph surgery -----------------------------------------------------------------

def _cube_root(x):
    if isinstance(x, (int, float, Fraction)) and x > 0:
        return float(x) ** (1.0 / 3.0)
    return complex(x) ** (1.0 / 3.0)


def _star_of(g: Multigraph, c):
    inc = [(i, eid, u, w) for i, (eid, u, w) in enumerate(g.edges) if c in (u, w)]
    if len(inc) != 3 or any(u == w for _, _, u, w in inc):
        raise GraphError(f"vertex {c} is not the centre of a star of three edges")
    leaves = [w if u == c else u for _, _, u, w in inc]
    if len(set(leaves)) != 3:
        raise GraphError(f"star at {c} has repeated leaves")
    return [i for i, _, _, _ in inc], leaves


def _triangle_of(g: Multigraph, ids):
    idx = [g.index_of(e) for e in ids]
    ends = [set(g.edges[i][1:]) for i in idx]
    verts = set().union(*ends)
    if len(verts) != 3 or any(len(e) != 2 for e in ends) or len({frozenset(e) for e in ends}) != 3:
        raise GraphError("edges do not form a triangle")
    opposite = [(verts - e).pop() for e in ends]
    return idx, opposite


def star_to_triangle(m: PottsModel, centre, weights_map=None):
    """Replace the star at ``centre`` by a triangle.

    Returns ``(model', vertex_map)`` where ``vertex_map`` sends surviving
    vertices of ``m`` to their ids in ``model'``.  The triangle edge opposite
    leaf ``v_i`` reuses the id of the star edge ending at ``v_i``.
    """
    g = m.graph
    idx, leaves = _star_of(g, centre)
    t = [m.weights[i][0] / m.weights[i][1] for i in idx]
    betas = [m.weights[i][1] for i in idx]
    if m.n == 2:
        res = f_map_with_beta(tuple(t), 1)
    else:
        res = star_triangle_general(tuple(t), m.n)
    scale = _cube_root(res.beta_product) if weights_map is None else None
    vmap = {x: (x if x < centre else x - 1) for x in g.vertices if x != centre}
    edges, weights = [], []
    tri = {}
    for k, i in enumerate(idx):
        others = [leaves[j] for j in range(3) if j != k]
        b = betas[k] * scale if scale is not None else weights_map[k][1]
        tri[i] = ((g.edges[i][0], vmap[others[0]], vmap[others[1]]), (res.t[k] * b, b))
    for i, (eid, u, w) in enumerate(g.edges):
        if i in tri:
            edges.append(tri[i][0])
            weights.append(tri[i][1])
        else:
            edges.append((eid, vmap[u], vmap[w]))
            weights.append(m.weights[i])
    return PottsModel(Multigraph(g.num_vertices - 1, tuple(edges)), m.n, tuple(weights)), vmap


def triangle_to_star(m: PottsModel, ids):
    """Replace the triangle on edge ids ``ids`` by a star on a new vertex
    (appended last).  Ising only; the star weights are ``f_inverse`` of the
    triangle weights.  Triangles outside the image of the positive cone get
    complex star weights, and near the branch locus (star ``t`` close to 1)
    about ``log10(1/|t-1|)`` digits are lost."""
    if m.n != 2:
        raise StarTriangleError("triangle to star is implemented for n = 2")
    g = m.graph
    idx, opposite = _triangle_of(g, ids)
    tp = tuple(m.weights[i][0] / m.weights[i][1] for i in idx)
    t = f_inverse(tp)
    ratio = beta_ratio(t)
    scale = 1 / _cube_root(ratio)
    c = g.num_vertices
    edges, weights = [], []
    pos = {i: k for k, i in enumerate(idx)}
    for i, (eid, u, w) in enumerate(g.edges):
        if i in pos:
            k = pos[i]
            b = m.weights[i][1] * scale
            edges.append((eid, c, opposite[k]))
            weights.append((t[k] * b, b))
        else:
            edges.append((eid, u, w))
            weights.append(m.weights[i])
    vmap = {x: x for x in g.vertices}
    return PottsModel(Multigraph(c + 1, tuple(edges)), m.n, tuple(weights)), vmap


def _rel(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def verify_invariance(m: PottsModel, star_center=None, triangle=None, boundary=True,
                      derivatives=True, budget=None):
    """Residuals of the star-triangle invariants.

    Keys: ``Z`` (relative difference of the partition functions),
    ``boundary`` (max over every vertex subset ``S`` outside the star centre
    and every ``A`` of ``|Z_S(A)/Z - Z'_S(A)/Z'|``) and ``dlogZ`` (max over
    edges outside the transformed piece).  ``max`` is the largest of them.
    """
    if (star_center is None) == (triangle is None):
        raise ValueError("give exactly one of star_center or triangle")
    if star_center is not None:
        m2, vmap = star_to_triangle(m, star_center)
        local = set(m.graph.edge_ids[i] for i in _star_of(m.graph, star_center)[0])
    else:
        m2, vmap = triangle_to_star(m, triangle)
        local = set(triangle)
    z1 = partition_enumerate(m, budget)
    z2 = partition_enumerate(m2, budget)
    out = {"Z": _rel(z1, z2), "boundary": 0.0, "dlogZ": 0.0}
    if boundary:
        shared = sorted(vmap)
        for k in range(1, len(shared) + 1):
            for S in itertools.combinations(shared, k):
                for A in itertools.product(range(m.n), repeat=k):
                    r1 = boundary_partition(m, BoundarySpec(S, A), budget) / z1
                    r2 = boundary_partition(m2, BoundarySpec(tuple(vmap[x] for x in S), A), budget) / z2
                    out["boundary"] = max(out["boundary"], abs(r1 - r2))
    if derivatives:
        for eid in m.graph.edge_ids:
            if eid not in local:
                d1 = dlogZ_dt(m, eid, budget)
                d2 = dlogZ_dt(m2, eid, budget)
                out["dlogZ"] = max(out["dlogZ"], abs(d1 - d2))
    out["max"] = max(out["Z"], out["boundary"], out["dlogZ"])
    return out


def cluster_invariance(graph: Multigraph, weights, n, star_center):
    """``Z(G) - Z(G')`` through the random-cluster form, valid for any real
    or complex ``n``; ``weights`` are ``(alpha, beta)`` pairs in edge order.

    Uses the exact closed-form map with the resolution ``beta'_1 = beta_1
    beta'/beta``, ``beta'_2 = beta_2``, ``beta'_3 = beta_3`` so that exact
    inputs stay exact.
    """
    idx, leaves = _star_of(graph, star_center)
    t = tuple(weights[i][0] / weights[i][1] for i in idx)
    res = star_triangle_general(t, n)
    vmap = {x: (x if x < star_center else x - 1) for x in graph.vertices if x != star_center}
    edges, ws = [], []
    for i, (eid, u, w) in enumerate(graph.edges):
        if i in idx:
            k = idx.index(i)
            others = [leaves[j] for j in range(3) if j != k]
            b = weights[i][1] * (res.beta_product if k == 0 else 1)
            edges.append((eid, vmap[others[0]], vmap[others[1]]))
            ws.append((res.t[k] * b, b))
        else:
            edges.append((eid, vmap[u], vmap[w]))
            ws.append(weights[i])
    g2 = Multigraph(graph.num_vertices - 1, tuple(edges))
    return partition_cluster(graph, n, weights) - partition_cluster(g2, n, ws)
