"""Multigraphs with loops and parallel edges.

Vertices are the dense integers ``0..v-1``.  Edges carry an integer id that
survives deletion and contraction, so weights attached to an edge id stay
attached while the graph is mutated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class GraphStats:
    v: int
    e: int
    k: int
    r: int
    c: int


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph.

    ``edges`` is a tuple of ``(edge_id, u, w)``; ``u == w`` is a loop.  The
    position of an edge in this tuple is its bit in subset masks.
    """

    num_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        ids = set()
        for eid, u, w in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= w < self.num_vertices):
                raise GraphError(f"edge {eid} references a missing vertex")
            if eid in ids:
                raise GraphError(f"duplicate edge id {eid}")
            ids.add(eid)

    @classmethod
    def from_pairs(cls, num_vertices, pairs):
        """Build a graph whose edge ids are the positions in ``pairs``."""
        return cls(num_vertices, tuple((i, int(u), int(w)) for i, (u, w) in enumerate(pairs)))

    @property
    def vertices(self):
        return range(self.num_vertices)

    @property
    def edge_ids(self):
        return tuple(e[0] for e in self.edges)

    @property
    def pairs(self):
        return [(u, w) for _, u, w in self.edges]

    def __len__(self):
        return len(self.edges)

    def index_of(self, eid):
        for i, e in enumerate(self.edges):
            if e[0] == eid:
                return i
        raise GraphError(f"unknown edge id {eid}")

    def endpoints(self, eid):
        return self.edges[self.index_of(eid)][1:]

    def is_loop(self, eid):
        u, w = self.endpoints(eid)
        return u == w

    def degree(self, x):
        d = 0
        for _, u, w in self.edges:
            d += (u == x) + (w == x)
        return d

    def with_edges(self, subset):
        """Spanning subgraph keeping the edges whose ids are in ``subset``."""
        keep = set(subset)
        return Multigraph(self.num_vertices, tuple(e for e in self.edges if e[0] in keep))

    def edge_mask_subgraph(self, mask):
        return Multigraph(self.num_vertices,
                          tuple(e for i, e in enumerate(self.edges) if mask >> i & 1))

    def to_json(self):
        return {"vertices": self.num_vertices, "edges": [[u, w] for _, u, w in self.edges]}

    def __str__(self):
        return f"Multigraph(v={self.num_vertices}, edges={self.pairs})"


def graph_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        nv = int(data["vertices"])
        pairs = [(int(e[0]), int(e[1])) for e in data["edges"]]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise GraphError(f"malformed graph: {exc}") from None
    return Multigraph.from_pairs(nv, pairs)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def component_count(num_vertices, pairs):
    dsu = _DSU(num_vertices)
    k = num_vertices
    for u, w in pairs:
        if dsu.union(u, w):
            k -= 1
    return k


def components(g: Multigraph):
    """Vertex sets of the connected components, ordered by smallest vertex."""
    dsu = _DSU(g.num_vertices)
    for _, u, w in g.edges:
        dsu.union(u, w)
    groups = {}
    for x in g.vertices:
        groups.setdefault(dsu.find(x), []).append(x)
    return [groups[r] for r in sorted(groups)]


def stats(g: Multigraph) -> GraphStats:
    v, e = g.num_vertices, len(g.edges)
    k = component_count(v, g.pairs)
    return GraphStats(v, e, k, v - k, e - (v - k))


def delete_edge(g: Multigraph, eid) -> Multigraph:
    i = g.index_of(eid)
    return Multigraph(g.num_vertices, g.edges[:i] + g.edges[i + 1:])


def contract_edge(g: Multigraph, eid) -> Multigraph:
    """Merge the endpoints of ``eid``; the smaller id survives and the
    vertices above the removed one shift down by one."""
    i = g.index_of(eid)
    _, a, b = g.edges[i]
    if a == b:
        raise GraphError(f"edge {eid} is a loop and cannot be contracted")
    keep, gone = min(a, b), max(a, b)

    def rel(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((f, rel(u), rel(w)) for f, u, w in g.edges[:i] + g.edges[i + 1:])
    return Multigraph(g.num_vertices - 1, edges)


def is_bridge(g: Multigraph, eid) -> bool:
    i = g.index_of(eid)
    _, a, b = g.edges[i]
    if a == b:
        return False
    dsu = _DSU(g.num_vertices)
    for j, (_, u, w) in enumerate(g.edges):
        if j != i:
            dsu.union(u, w)
    return dsu.find(a) != dsu.find(b)


def spanning_subgraphs(g: Multigraph) -> Iterator[Multigraph]:
    """All ``2^e`` spanning subgraphs, in ascending edge-subset bitmask order."""
    for mask in range(1 << len(g.edges)):
        yield g.edge_mask_subgraph(mask)


def vertex_induced(g: Multigraph, B: Iterable[int]) -> Multigraph:
    """Restriction to ``B``; the kept vertices are renumbered in sorted order."""
    keep = sorted(set(B))
    for x in keep:
        if not 0 <= x < g.num_vertices:
            raise GraphError(f"unknown vertex {x}")
    pos = {x: i for i, x in enumerate(keep)}
    edges = tuple((f, pos[u], pos[w]) for f, u, w in g.edges if u in pos and w in pos)
    return Multigraph(len(keep), edges)


def glue_with_map(g1: Multigraph, g2: Multigraph, S):
    """Glue ``g2`` onto ``g1`` along the identification ``S``.

    ``S`` maps vertices of ``g1`` to vertices of ``g2`` (a dict or a list of
    pairs).  The vertices of ``g1`` keep their ids, the free vertices of
    ``g2`` follow in order.  Edge ids of ``g2`` are shifted past those of
    ``g1``.  Returns the glued graph, the vertex map of ``g2`` and the edge
    id offset.
    """
    S = dict(S)
    if len(set(S.values())) != len(S):
        raise GraphError("identification is not injective")
    for a, b in S.items():
        if not (0 <= a < g1.num_vertices and 0 <= b < g2.num_vertices):
            raise GraphError("identification references a missing vertex")
    back = {b: a for a, b in S.items()}
    vmap = {}
    nxt = g1.num_vertices
    for x in g2.vertices:
        if x in back:
            vmap[x] = back[x]
        else:
            vmap[x] = nxt
            nxt += 1
    offset = max(g1.edge_ids, default=-1) + 1
    edges = g1.edges + tuple((f + offset, vmap[u], vmap[w]) for f, u, w in g2.edges)
    return Multigraph(nxt, edges), vmap, offset


def glue(g1: Multigraph, g2: Multigraph, S) -> Multigraph:
    return glue_with_map(g1, g2, S)[0]


def disjoint_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
    return glue(g1, g2, {})


def one_point_join(g1: Multigraph, g2: Multigraph, u1=0, u2=0) -> Multigraph:
    return glue(g1, g2, {u1: u2})


def relabel_edges(g: Multigraph) -> Multigraph:
    """Same graph with edge ids replaced by their positions."""
    return Multigraph(g.num_vertices, tuple((i, u, w) for i, (_, u, w) in enumerate(g.edges)))


def drop_isolated(g: Multigraph) -> Multigraph:
    used = sorted({x for _, u, w in g.edges for x in (u, w)})
    if len(used) == g.num_vertices:
        return g
    return vertex_induced(g, used)


# canonical form ----------------------------------------------------------

def _refine(adj, colors):
    # colour refinement on multigraph adjacency counts
    n = len(colors)
    while True:
        sig = [(colors[x], tuple(sorted((colors[y], m) for y, m in adj[x].items())))
               for x in range(n)]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _encode(n, edge_list, colors):
    pos = sorted(range(n), key=lambda x: colors[x])
    rank = {x: i for i, x in enumerate(pos)}
    enc = sorted((min(rank[u], rank[w]), max(rank[u], rank[w])) for u, w in edge_list)
    return tuple(enc)


def _connected_form(g: Multigraph):
    n = g.num_vertices
    pairs = g.pairs
    adj = [dict() for _ in range(n)]
    loops = [0] * n
    for u, w in pairs:
        if u == w:
            loops[u] += 1
        else:
            adj[u][w] = adj[u].get(w, 0) + 1
            adj[w][u] = adj[w].get(u, 0) + 1
    start = _refine(adj, [(loops[x], sum(adj[x].values())) for x in range(n)])
    best = None
    stack = [start]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == n:
            enc = _encode(n, pairs, colors)
            if best is None or enc < best:
                best = enc
            continue
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, m in counts.items() if m > 1)
        for x in range(n):
            if colors[x] == target:
                # individualise x by splitting it off its cell
                c2 = [2 * c + (1 if c == target and y != x else 0) for y, c in enumerate(colors)]
                stack.append(_refine(adj, c2))
    return (n, best)


def canonical_form(g: Multigraph):
    """Isomorphism-invariant key ``(v, sorted edge pairs)``.

    Each component is put in canonical form by colour refinement plus
    individualisation (least encoding over all leaves); components are then
    concatenated in sorted order, so equal keys mean isomorphic graphs.
    """
    parts = []
    for comp in components(g):
        parts.append(_connected_form(vertex_induced(g, comp)))
    parts.sort(key=lambda p: (-p[0], p[1]))
    enc = []
    base = 0
    for n, e in parts:
        enc.extend((u + base, w + base) for u, w in e)
        base += n
    return (g.num_vertices, tuple(enc))


def from_canonical(key) -> Multigraph:
    n, enc = key
    return Multigraph.from_pairs(n, enc)
