"""The Biggs convolution and the identities built on it.

Every check returns ``lhs - rhs``.  Identities are evaluated in exact
arithmetic except the fourteen-term relation, where square roots from the
star-triangle map force floating point.  Wherever the textbook form divides
by a ``q_e`` the sum is taken in cleared form
``prod_{e not in A} q_e prod_{e in A} p_e``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from scipy.optimize import brentq

from .graph import GraphError, Multigraph, vertex_induced
from .invariants import chromatic, flow
from .partition import (ModelError, PottsModel, partition_enumerate, prod,
                        spanning_partitions)
from .startriangle import StarTriangleError, f_map_with_beta, star_to_triangle


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class BiggsCoeffs:
    p: tuple
    q: tuple


def _popcount(x):
    return bin(x).count("1")


def _submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _exact(x):
    return isinstance(x, (int, Fraction))


def _pq(w1, w2):
    (a1, b1), (a2, b2) = w1, w2
    if all(_exact(x) for x in (a1, b1, a2, b2)):
        a1, b1, a2, b2 = map(Fraction, (a1, b1, a2, b2))
    d = a2 - b2
    if d == 0:
        raise PreconditionError("second model has alpha = beta on an edge")
    return (a1 - b1) / d, (a2 * b1 - a1 * b2) / d


def biggs_coeffs(m1: PottsModel, m2: PottsModel) -> BiggsCoeffs:
    """Per-edge ``p_e, q_e`` with ``i^1_e = p_e i^2_e + q_e`` at both spin
    relations (equal: ``alpha``, different: ``beta``)."""
    if m1.graph != m2.graph or m1.n != m2.n:
        raise ModelError("Biggs coefficients need the same graph and n")
    pq = [_pq(w1, w2) for w1, w2 in zip(m1.weights, m2.weights)]
    return BiggsCoeffs(tuple(p for p, _ in pq), tuple(q for _, q in pq))


def subset_coefficient(c: BiggsCoeffs, mask):
    """``prod_{e not in A} q_e prod_{e in A} p_e``."""
    return prod(c.p[i] if mask >> i & 1 else c.q[i] for i in range(len(c.p)))


def biggs_rhs(m1: PottsModel, m2: PottsModel, budget=None):
    """``sum_A prod_{e not in A} q_e prod_{e in A} p_e Z^2(A)``, unnormalised."""
    c = biggs_coeffs(m1, m2)
    z2 = spanning_partitions(m2, budget)
    return sum(subset_coefficient(c, A) * z2[A] for A in range(len(z2)))


def verify_biggs(m1: PottsModel, m2: PottsModel, budget=None):
    """``Z~^1(G) - sum_A prod q prod p Z~^2(A)`` (normalised by ``n^v``)."""
    norm = Fraction(m1.n) ** m1.graph.num_vertices
    return (partition_enumerate(m1, budget) - biggs_rhs(m1, m2, budget)) / norm


def chromatic_values(g: Multigraph, n, budget=None):
    """``chi_A(n)`` for every spanning subgraph ``A`` (proper colourings)."""
    return spanning_partitions(PottsModel.isotropic(g, n, 0, 1), budget)


def flow_values(g: Multigraph, n):
    """``C_A(n)`` for every spanning subgraph ``A`` from its Tutte polynomial."""
    out = []
    for A in range(1 << len(g.edges)):
        out.append(flow(g.edge_mask_subgraph(A)).evaluate(Fraction(n)))
    return out


def verify_matiyasevich(g: Multigraph, n, budget=None):
    """``chi_G(n) - (n-1)^e / n^(e-v) sum_A C_A(n) / (1-n)^e(A)``."""
    if n < 2:
        raise ValueError("needs n >= 2")
    n = Fraction(n)
    e, v = len(g.edges), g.num_vertices
    C = flow_values(g, n)
    rhs = sum(C[A] / (1 - n) ** _popcount(A) for A in range(len(C)))
    rhs = (n - 1) ** e / n ** (e - v) * rhs
    return chromatic_values(g, int(n), budget)[-1] - rhs


def verify_four_formulas(g: Multigraph, n, alpha, beta, budget=None):
    """Residuals of the four expansions linking ``Z``, ``chi`` and ``C``.

    1. ``Z = sum_A alpha^(e-|A|) (beta-alpha)^|A| chi_A``
    2. ``C_G = sum_A (-1)^|A| (n-1)^(e-|A|) n^(|A|-v) chi_A``
    3. ``Z / n^v = sum_A q1^(e-|A|) (-p1)^|A| C_A`` with
       ``p1 = (beta-alpha)/n``, ``q1 = (alpha+(n-1)beta)/n``
    4. ``(-1)^e C_G = sum_A q2^(e-|A|) p2^|A| Z(A) / n^v`` with
       ``p2 = n/(beta-alpha)``, ``q2 = (alpha+(n-1)beta)/(alpha-beta)``,
       multiplied through by ``(beta-alpha)^e`` when ``alpha = beta``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    N = Fraction(n)
    e, v = len(g.edges), g.num_vertices
    full = (1 << e) - 1
    chi = chromatic_values(g, n, budget)
    C = flow_values(g, n)
    Z = spanning_partitions(PottsModel.isotropic(g, n, alpha, beta), budget)
    sizes = [_popcount(A) for A in range(1 << e)]

    r1 = Z[full] - sum(alpha ** (e - k) * (beta - alpha) ** k * chi[A]
                       for A, k in enumerate(sizes))
    r2 = C[full] - sum((-1) ** k * (N - 1) ** (e - k) * N ** (k - v) * chi[A]
                       for A, k in enumerate(sizes))
    p1, q1 = (beta - alpha) / N, (alpha + (N - 1) * beta) / N
    r3 = Z[full] / N ** v - sum(q1 ** (e - k) * (-p1) ** k * C[A]
                                for A, k in enumerate(sizes))
    # cleared by (beta-alpha)^e: q2 -> -(alpha+(n-1)beta), p2 -> n
    s = alpha + (N - 1) * beta
    r4 = ((-1) ** e * C[full] * (beta - alpha) ** e
          - sum((-s) ** (e - k) * N ** k * Z[A] / N ** v for A, k in enumerate(sizes)))
    return (r1, r2, r3, r4)


def _shift_coeffs(alpha, beta, n):
    # p2, q2 of the flow expansion at modulus n
    return n / (beta - alpha), (alpha + (n - 1) * beta) / (alpha - beta)


def verify_order_shift_product(g: Multigraph, n1, n2, alpha, beta, budget=None):
    """``Z_{n1 n2}(G) - sum_{D, D'} eta_{D D'} Z_{n1}(D) Z_{n2}(D')``.

    The ``eta`` table is assembled along the chain: expand ``Z_N`` in flow
    polynomials, each flow polynomial in complete-flow monomials, split
    ``FC(N) = FC(n1) FC(n2)``, resum each factor into flow polynomials and
    expand those back into partition functions at ``n1`` and ``n2``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == beta:
        raise PreconditionError("the chain divides by alpha - beta")
    n1, n2 = Fraction(n1), Fraction(n2)
    N = n1 * n2
    e, v = len(g.edges), g.num_vertices
    size = 1 << e
    full = size - 1
    pc = [_popcount(A) for A in range(size)]
    p1, q1 = (beta - alpha) / N, (alpha + (N - 1) * beta) / N
    lam = [N ** v * q1 ** (e - pc[A]) * p1 ** pc[A] * (-1) ** pc[A] for A in range(size)]
    # C_A = sum_{A' in A} (-1)^{|A|-|A'|} FC_{A'}
    omega = [0] * size
    for A in range(size):
        for Ap in _submasks(A):
            omega[Ap] += lam[A] * (-1) ** (pc[A] - pc[Ap])
    # FC_{A'}(n1) FC_{A'}(n2) = sum_{B, C in A'} C_B(n1) C_C(n2)
    # mu_{B,C} depends on B | C only: superset sums of omega
    sup = [0] * size
    for X in range(size):
        for Ap in _submasks(full ^ X):
            sup[X] += omega[X | Ap]

    def delta(n):
        p2, q2 = _shift_coeffs(alpha, beta, n)
        table = {}
        for B in range(size):
            for D in _submasks(B):
                table[B, D] = (-1) ** pc[B] * n ** (-v) * q2 ** (pc[B] - pc[D]) * p2 ** pc[D]
        return table

    d1, d2 = delta(n1), delta(n2)
    eta = {}
    for B in range(size):
        for C in range(size):
            mu = sup[B | C]
            if mu == 0:
                continue
            for D in _submasks(B):
                x = d1[B, D] * mu
                for Dp in _submasks(C):
                    eta[D, Dp] = eta.get((D, Dp), 0) + x * d2[C, Dp]
    z1 = spanning_partitions(PottsModel.isotropic(g, int(n1), alpha, beta), budget)
    z2 = spanning_partitions(PottsModel.isotropic(g, int(n2), alpha, beta), budget)
    zN = partition_enumerate(PottsModel.isotropic(g, int(N), alpha, beta), budget)
    return zN - sum(c * z1[D] * z2[Dp] for (D, Dp), c in eta.items())


def _vertex_subsets(v):
    for mask in range(1 << v):
        yield [x for x in range(v) if mask >> x & 1]


def verify_tutte_vertex_convolution(g: Multigraph, n1, n2, max_vertices=12):
    """``chi_G(n1+n2) - sum_B chi_{G|B}(n1) chi_{G|B^c}(n2)``."""
    v = g.num_vertices
    if v > max_vertices:
        raise ValueError(f"{v} vertices exceed the limit {max_vertices}")
    lhs = chromatic(g).evaluate(Fraction(n1 + n2))
    rhs = 0
    for B in _vertex_subsets(v):
        Bc = [x for x in range(v) if x not in B]
        rhs += (chromatic(vertex_induced(g, B)).evaluate(Fraction(n1))
                * chromatic(vertex_induced(g, Bc)).evaluate(Fraction(n2)))
    return lhs - rhs


def verify_order_shift_sum(g: Multigraph, n1, n2, alpha, beta, budget=None):
    """``Z_{n1+n2}(G) - sum_{D, D'} eta_{D D'} Z_{n1}(D) Z_{n2}(D')``.

    Chain: expand ``Z_N`` in chromatic polynomials, split each by the vertex
    convolution, and expand every ``chi_{A|B}(n)`` back into partition
    functions of spanning subgraphs of ``A|B`` (weights ``p' = 1/(beta-alpha)``,
    ``q' = alpha/(alpha-beta)``), lifted to all of ``V`` by ``n^(v-|B|)``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == beta:
        raise PreconditionError("the chain divides by alpha - beta")
    n1, n2 = Fraction(n1), Fraction(n2)
    N = n1 + n2
    e, v = len(g.edges), g.num_vertices
    size = 1 << e
    pc = [_popcount(A) for A in range(size)]
    pp, qq = 1 / (beta - alpha), alpha / (alpha - beta)
    inside = []
    for B in range(1 << v):
        m = 0
        for i, (_, a, b) in enumerate(g.edges):
            if B >> a & 1 and B >> b & 1:
                m |= 1 << i
        inside.append(m)
    eta = {}
    for A in range(size):
        lam = alpha ** (e - pc[A]) * (beta - alpha) ** pc[A]
        for B in range(1 << v):
            nb = _popcount(B)
            E1 = A & inside[B]
            E2 = A & inside[((1 << v) - 1) ^ B]
            scale = lam / (n1 ** (v - nb) * n2 ** nb)
            for D1 in _submasks(E1):
                c1 = qq ** (pc[E1] - pc[D1]) * pp ** pc[D1]
                for D2 in _submasks(E2):
                    c2 = qq ** (pc[E2] - pc[D2]) * pp ** pc[D2]
                    eta[D1, D2] = eta.get((D1, D2), 0) + scale * c1 * c2
    z1 = spanning_partitions(PottsModel.isotropic(g, int(n1), alpha, beta), budget)
    z2 = spanning_partitions(PottsModel.isotropic(g, int(n2), alpha, beta), budget)
    zN = partition_enumerate(PottsModel.isotropic(g, int(N), alpha, beta), budget)
    return zN - sum(c * z1[D] * z2[Dp] for (D, Dp), c in eta.items())


# fourteen-term relation --------------------------------------------------------

STAR_SUBSETS = [S for k in range(3) for S in itertools.combinations(range(3), k)]


def _local_side(m1: PottsModel, m2: PottsModel, local, budget):
    # sum over proper subsets S of the local edges, all other edges kept
    idx = [m2.graph.index_of(eid) for eid in local]
    pq = [_pq(m1.weights[i], m2.weights[i]) for i in idx]
    if any(q == 0 for _, q in pq):
        raise PreconditionError("q vanishes on a local edge (M1 = M2 there)")
    z = spanning_partitions(m2, budget)
    full = (1 << len(m2.weights)) - 1
    total = 0
    for S in STAR_SUBSETS:
        mask = full
        coef = 1
        for k in range(3):
            if k in S:
                coef *= pq[k][0]
            else:
                coef *= pq[k][1]
                mask &= ~(1 << idx[k])
        total += coef * z[mask]
    return total, prod(p for p, _ in pq)


def fourteen_term_sides(m1: PottsModel, m2: PottsModel, centre, budget=None):
    """Both sides of the fourteen-term relation for star-side models.

    ``m1`` and ``m2`` live on the same graph with a star at ``centre``; the
    triangle-side models are their star-triangle images with the cube-root
    gauge.  Only the star weights of ``m1`` enter.  Returns
    ``(triangle_side, star_side, triangle_p_product, star_p_product)``.
    """
    t1, vmap = star_to_triangle(m1, centre)
    t2, _ = star_to_triangle(m2, centre)
    star_ids = [eid for eid, u, w in m2.graph.edges if centre in (u, w)]
    star, ps = _local_side(m1, m2, star_ids, budget)
    tri, pt = _local_side(t1, t2, star_ids, budget)
    return tri, star, pt, ps


def verify_14_term(m1: PottsModel, m2: PottsModel, centre, tol=1e-10, budget=None):
    """Relative residual of the fourteen-term relation.

    Raises ``PreconditionError`` when ``p1p2p3`` differs between the star and
    triangle sides by more than ``tol`` (relative) or when some ``q`` is 0.
    """
    tri, star, pt, ps = fourteen_term_sides(m1, m2, centre, budget)
    gap = abs(pt - ps) / max(abs(pt), abs(ps))
    if gap > tol:
        raise PreconditionError(f"p-product constraint violated by {gap:.3e}")
    return abs(tri - star) / max(abs(tri), abs(star))


@dataclass(frozen=True)
class FourteenTermInstance:
    m1: PottsModel
    m2: PottsModel
    centre: int
    root: float
    constraint_residual: float


def _h(t):
    # p-product ratio (triangle over star) for beta_i = 1 on the star
    res = f_map_with_beta(tuple(t), 1)
    num = prod(x - 1 for x in res.t)
    return res.beta_product * num / prod(x - 1 for x in t)


def star_ambient(extra=()):
    """Star with centre 3 and leaves 0, 1, 2 plus extra edges ``(u, w)``;
    vertices beyond 3 are created as needed."""
    pairs = [(3, 0), (3, 1), (3, 2)] + list(extra)
    nv = max([3] + [max(p) for p in pairs]) + 1
    return Multigraph.from_pairs(nv, pairs)


def build_14_term_instance(ambient: Multigraph = None, centre=3, seed=0, tries=50,
                           extra_weights=None):
    """Construct ``(M1, M2)`` on ``ambient`` satisfying the p-constraint.

    ``M2`` star weights are drawn in ``(1.2, 3)``; ``M1`` takes two random
    star weights and a free third one, found by bracketing on a log grid
    over ``[0.02, 200]`` and ``brentq`` to ``1e-14``.  Weights off the star
    are shared by both models.
    """
    g = ambient if ambient is not None else star_ambient()
    rng = random.Random(seed)
    star_idx = [i for i, (_, u, w) in enumerate(g.edges) if centre in (u, w)]
    if len(star_idx) != 3:
        raise GraphError("ambient graph has no star at the given centre")
    grid = [math.exp(math.log(0.02) + k * (math.log(200) - math.log(0.02)) / 1999)
            for k in range(2000)]
    for _ in range(tries):
        t2 = [rng.uniform(1.2, 3.0) for _ in range(3)]
        a, b = rng.uniform(1.2, 4.0), rng.uniform(1.2, 4.0)
        target = _h(t2)

        def f(x):
            return _h((a, b, x)) - target

        vals = []
        for x in grid:
            try:
                vals.append(f(x) if abs(x - 1) > 1e-6 else None)
            except (StarTriangleError, ZeroDivisionError, ValueError):
                vals.append(None)
        root = None
        for k in range(len(grid) - 1):
            u, w = vals[k], vals[k + 1]
            if u is None or w is None or u * w > 0:
                continue
            if grid[k] < 1 < grid[k + 1]:
                continue  # sign change across the pole at 1
            r = brentq(f, grid[k], grid[k + 1], xtol=1e-14, rtol=1e-15)
            if abs(r - t2[2]) < 1e-6 and abs(a - t2[0]) < 1e-6:
                continue
            root = r
            break
        if root is None:
            continue
        other = extra_weights or {}
        w1, w2 = [], []
        for i, (eid, _, _) in enumerate(g.edges):
            if i in star_idx:
                k = star_idx.index(i)
                w1.append(((a, b, root)[k], 1.0))
                w2.append((t2[k], 1.0))
            else:
                w = other.get(eid, (rng.uniform(0.5, 3.0), rng.uniform(0.5, 1.5)))
                w1.append(w)
                w2.append(w)
        m1 = PottsModel(g, 2, tuple(w1))
        m2 = PottsModel(g, 2, tuple(w2))
        _, _, pt, ps = fourteen_term_sides(m1, m2, centre)
        resid = abs(pt - ps) / max(abs(pt), abs(ps))
        if resid < 1e-12:
            return FourteenTermInstance(m1, m2, centre, root, resid)
    raise PreconditionError("no root of the p-constraint found")
