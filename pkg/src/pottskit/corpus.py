"""Deterministic graph corpora and named fixtures."""

from __future__ import annotations

from functools import lru_cache

from .graph import Multigraph, canonical_form, disjoint_union, from_canonical

MAX_CORPUS_EDGES = 6


@lru_cache(maxsize=None)
def connected_multigraphs(max_edges):
    """Canonical keys of connected multigraphs (loops allowed) by edge count.

    Every connected graph with ``e`` edges arises from one with ``e - 1``
    edges by adding a loop, an edge between existing vertices, or a pendant
    edge to a new vertex, so layered augmentation is exhaustive.
    """
    levels = [[canonical_form(Multigraph(1))]]
    for _ in range(max_edges):
        seen = set()
        for key in levels[-1]:
            g = from_canonical(key)
            n = g.num_vertices
            cands = [(n, g.pairs + [(u, u)]) for u in range(n)]
            cands += [(n, g.pairs + [(u, w)]) for u in range(n) for w in range(u + 1, n)]
            cands += [(n + 1, g.pairs + [(u, n)]) for u in range(n)]
            for nv, pairs in cands:
                seen.add(canonical_form(Multigraph.from_pairs(nv, pairs)))
        levels.append(sorted(seen))
    return tuple(tuple(level) for level in levels)


def _partitions(total, parts_from):
    # multisets of (edges, index) component choices with non-increasing order
    if total == 0:
        yield []
        return
    for size, idx in parts_from:
        if size <= total:
            rest = [(s, i) for s, i in parts_from if (s, i) <= (size, idx)]
            for tail in _partitions(total - size, rest):
                yield [(size, idx)] + tail


def multigraph_corpus(max_edges=MAX_CORPUS_EDGES):
    """All multigraphs without isolated vertices and at most ``max_edges``
    edges, one per isomorphism class, in a fixed order (by edge count, then
    by canonical key).  The empty graph is included."""
    if max_edges > MAX_CORPUS_EDGES:
        raise ValueError(f"corpus bound is {MAX_CORPUS_EDGES} edges")
    levels = connected_multigraphs(max_edges)
    choices = [(e, i) for e in range(1, max_edges + 1) for i in range(len(levels[e]))]
    out = []
    for e in range(max_edges + 1):
        keys = []
        for combo in _partitions(e, [c for c in choices if c[0] <= e]):
            g = Multigraph(0)
            for size, idx in combo:
                g = disjoint_union(g, from_canonical(levels[size][idx]))
            keys.append(canonical_form(g))
        for key in sorted(set(keys)):
            out.append(from_canonical(key))
    return out


# named fixtures ------------------------------------------------------------

def k3():
    return Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])


def star3():
    """Three edges from centre 3 to leaves 0, 1, 2 (edge i ends at leaf i)."""
    return Multigraph.from_pairs(4, [(3, 0), (3, 1), (3, 2)])


def triangle3():
    """Edge i is opposite vertex i: edges (1,2), (0,2), (0,1)."""
    return Multigraph.from_pairs(3, [(1, 2), (0, 2), (0, 1)])


def triangle_with_pendant():
    return Multigraph.from_pairs(4, [(1, 2), (0, 2), (0, 1), (0, 3)])


def triangle_fixtures():
    """Small graphs containing a triangle on vertices 0, 1, 2 whose edges are
    the first three edges, listed opposite vertices 0, 1, 2."""
    base = [(1, 2), (0, 2), (0, 1)]
    return {
        "triangle": Multigraph.from_pairs(3, base),
        "triangle-pendant": Multigraph.from_pairs(4, base + [(0, 3)]),
        "triangle-two-pendants": Multigraph.from_pairs(5, base + [(0, 3), (1, 4)]),
        "triangle-loop": Multigraph.from_pairs(3, base + [(2, 2)]),
        "triangle-double": Multigraph.from_pairs(3, base + [(0, 1)]),
        "diamond": Multigraph.from_pairs(4, base + [(1, 3), (2, 3)]),
        "k4": Multigraph.from_pairs(4, base + [(0, 3), (1, 3), (2, 3)]),
        "bowtie": Multigraph.from_pairs(5, base + [(2, 3), (3, 4), (2, 4)]),
        "triangle-path": Multigraph.from_pairs(5, base + [(0, 3), (3, 4), (4, 1)]),
    }
