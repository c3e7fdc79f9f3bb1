"""Tutte polynomial and the invariants it specialises to."""

from __future__ import annotations

import threading
from fractions import Fraction

from .graph import (Multigraph, canonical_form, component_count, components,
                    contract_edge, delete_edge, from_canonical, stats,
                    vertex_induced)
from .kernels import agreement_histogram, count_flows
from .partition import PottsModel, check_budget, partition_enumerate
from .poly import BiPoly, UniPoly

_X, _Y = BiPoly.gens()
_ONE = BiPoly.constant(1)

_memo = {}
_memo_lock = threading.Lock()


def clear_tutte_cache():
    with _memo_lock:
        _memo.clear()


def tutte_cache_size():
    return len(_memo)


def _tutte_connected(h: Multigraph):
    key = canonical_form(h)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    h = from_canonical(key)
    loops = sum(1 for _, u, w in h.edges if u == w)
    rest = Multigraph(h.num_vertices, tuple(e for e in h.edges if e[1] != e[2]))
    if not rest.edges:
        out = _Y ** loops
    else:
        _, a, b = rest.edges[0]
        par = [f for f, u, w in rest.edges if {u, w} == {a, b}]
        m = len(par)
        without = rest
        for f in par[1:]:
            without = delete_edge(without, f)
        # contracting one copy turns the other m-1 copies into loops
        shrunk = contract_edge(without, par[0])
        ys = _ONE
        for i in range(1, m):
            ys = ys + _Y ** i
        cut = delete_edge(without, par[0])
        if component_count(cut.num_vertices, cut.pairs) > 1:
            out = (_X + ys - _ONE) * _tutte_any(shrunk)
        else:
            out = _tutte_any(cut) + ys * _tutte_any(shrunk)
        out = out * _Y ** loops
    with _memo_lock:
        _memo[key] = out
    return out


def _tutte_any(g: Multigraph):
    out = _ONE
    for comp in components(g):
        if len(comp) == 1 and not any(u == comp[0] for _, u, _w in g.edges):
            continue
        out = out * _tutte_connected(vertex_induced(g, comp))
    return out


def tutte(g: Multigraph) -> BiPoly:
    """Tutte polynomial ``T_G(x, y)`` by memoised deletion-contraction.

    Parallel classes are removed in one step and components are handled
    separately; the memo is keyed on the canonical form of each connected
    piece.
    """
    return _tutte_any(g)


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def z_from_tutte(g: Multigraph, n, alpha, beta):
    """``n^k beta^c (alpha-beta)^r T_G((alpha+(n-1)beta)/(alpha-beta), alpha/beta)``.

    Falls back to enumeration at ``alpha == beta`` or ``beta == 0`` where the
    evaluation point is undefined.
    """
    alpha, beta = _q(alpha), _q(beta)
    if alpha == beta or beta == 0:
        return partition_enumerate(PottsModel.isotropic(g, n, alpha, beta))
    s = stats(g)
    x = (alpha + (n - 1) * beta) / (alpha - beta)
    y = alpha / beta
    return Fraction(n) ** s.k * beta ** s.c * (alpha - beta) ** s.r * tutte(g).evaluate(x, y)


def _as_uni(p):
    return p if isinstance(p, UniPoly) else UniPoly([p])


def chromatic(g: Multigraph) -> UniPoly:
    """``(-1)^(v-k) n^k T_G(1-n, 0)``."""
    s = stats(g)
    n = UniPoly.x()
    val = _as_uni(tutte(g).evaluate(1 - n, 0))
    return (-1) ** s.r * n ** s.k * val


def flow(g: Multigraph) -> UniPoly:
    """``(-1)^(e+v+k) T_G(0, 1-n)``, the nowhere-zero flow polynomial."""
    s = stats(g)
    n = UniPoly.x()
    val = _as_uni(tutte(g).evaluate(0, 1 - n))
    return (-1) ** (s.e + s.v + s.k) * val


def complete_flow(g: Multigraph) -> UniPoly:
    """``n^(e-v+k)``, the number of all flows."""
    return UniPoly.monomial(stats(g).c)


def flow_count_oracle(g: Multigraph, n, nowhere_zero, reverse=False, budget=None):
    """Brute-force count of ``Z_n``-flows over all ``n^e`` edge functions.

    Edges are oriented from the smaller to the larger endpoint (reversed when
    ``reverse``); loops impose no condition.
    """
    check_budget(n ** len(g.edges), budget)
    return count_flows(n, g.num_vertices, g.pairs, nowhere_zero, reverse)


def proper_colorings(g: Multigraph, n, budget=None):
    """Brute-force count of proper ``n``-colourings."""
    check_budget(n ** g.num_vertices, budget)
    return int(agreement_histogram(n, g.num_vertices, g.pairs)[0])


def bad_coloring(g: Multigraph) -> BiPoly:
    """``B_G(n, t)``: colourings counted with ``t`` per bad edge.

    Expanded over spanning subgraphs as ``sum_A (t-1)^|A| n^k(A)``.
    """
    vars = ("n", "t")
    n, t = BiPoly.gens(vars)
    out = BiPoly({}, vars)
    pairs = g.pairs
    for mask in range(1 << len(pairs)):
        sub = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        out = out + (t - 1) ** len(sub) * n ** component_count(g.num_vertices, sub)
    return out


def bad_coloring_from_tutte(g: Multigraph) -> BiPoly:
    """``n^k (t-1)^r T_G((t-1+n)/(t-1), t)`` with the denominator cleared."""
    s = stats(g)
    vars = ("n", "t")
    n, t = BiPoly.gens(vars)
    out = BiPoly({}, vars)
    for (i, j), c in tutte(g).terms.items():
        out = out + c * (t - 1 + n) ** i * (t - 1) ** (s.r - i) * t ** j
    return out * n ** s.k


def contract_set(g: Multigraph, ids):
    """``G/A``: contract every edge of ``A``; edges of ``A`` that are or
    become loops are deleted."""
    h = g
    for f in ids:
        u, w = h.endpoints(f)
        h = delete_edge(h, f) if u == w else contract_edge(h, f)
    return h


def verify_convolution_formula(g: Multigraph, max_edges=12) -> BiPoly:
    """``T_G(x,y) - sum_A T_{G|A}(0,y) T_{G/A}(x,0)`` over all edge subsets."""
    if len(g.edges) > max_edges:
        raise ValueError(f"{len(g.edges)} edges exceed the limit {max_edges}")
    rhs = BiPoly({})
    ids = g.edge_ids
    for mask in range(1 << len(ids)):
        A = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        restricted = tutte(g.with_edges(A)).substitute("x", 0)
        contracted = tutte(contract_set(g, A)).substitute("y", 0)
        rhs = rhs + restricted * contracted
    return tutte(g) - rhs
