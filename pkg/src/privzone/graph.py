"""Undirected graph core: construction, BFS layers, centrality, generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

__all__ = [
    "GraphValidityError",
    "Graph",
    "DistanceLayers",
    "GeoGraph",
    "build_graph",
    "bfs_layers",
    "diameter",
    "induced_diameter",
    "betweenness",
    "gen_rgg",
    "line_graph",
]


class GraphValidityError(ValueError):
    """Raised when a graph (or a node/edge argument) violates a structural requirement."""


class Graph:
    """Immutable undirected graph with contiguous node ids 0..node_count-1.

    Adjacency lists are sorted, edges are deduplicated and stored as (i, j)
    with i < j. Distance data is computed lazily and cached; all public
    operations treat the graph as read-only, so instances are safe to share
    across threads.
    """

    __slots__ = ("node_count", "edges", "adjacency", "_csr", "_dist", "_unreachable")

    def __init__(self, node_count: int, edges: tuple[tuple[int, int], ...]):
        if node_count < 1:
            raise GraphValidityError("graph needs at least one node")
        for i, j in edges:
            if i == j:
                raise GraphValidityError(f"self-loop at node {i} is not allowed")
            if not (0 <= i < node_count and 0 <= j < node_count):
                raise GraphValidityError(f"edge ({i}, {j}) references a node outside 0..{node_count - 1}")
        canonical = sorted({(min(i, j), max(i, j)) for i, j in edges})
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for i, j in canonical:
            adj[i].append(j)
            adj[j].append(i)
        self.node_count: int = node_count
        self.edges: tuple[tuple[int, int], ...] = tuple(canonical)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._csr = None
        self._dist = None
        self._unreachable = -1  # lazily computed witness; -1 unknown, node_count means none

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_node(self, v: int) -> None:
        if not (0 <= v < self.node_count):
            raise GraphValidityError(f"node {v} outside 0..{self.node_count - 1}")

    def csr(self) -> csr_matrix:
        """Sparse adjacency matrix (cached)."""
        if self._csr is None:
            rows = []
            cols = []
            for i, j in self.edges:
                rows.extend((i, j))
                cols.extend((j, i))
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix(
                (data, (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
                shape=(self.node_count, self.node_count),
            )
        return self._csr

    def distance_matrix(self) -> np.ndarray:
        """All-pairs shortest-path hop counts, shape (n, n), dtype int32.

        Requires a connected graph.
        """
        if self._dist is None:
            self.ensure_connected()
            if self.node_count == 1:
                self._dist = np.zeros((1, 1), dtype=np.int32)
            else:
                dist = dijkstra(self.csr(), directed=False, unweighted=True)
                self._dist = dist.astype(np.int32)
        return self._dist

    def unreachable_from_zero(self) -> int | None:
        """Smallest node unreachable from node 0, or None if connected."""
        if self._unreachable == -1:
            seen = [False] * self.node_count
            seen[0] = True
            queue = deque([0])
            count = 1
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        count += 1
                        queue.append(w)
            if count == self.node_count:
                self._unreachable = self.node_count
            else:
                self._unreachable = seen.index(False)
        return None if self._unreachable == self.node_count else self._unreachable

    def is_connected(self) -> bool:
        return self.unreachable_from_zero() is None

    def ensure_connected(self) -> None:
        witness = self.unreachable_from_zero()
        if witness is not None:
            raise GraphValidityError(f"graph is disconnected: node {witness} is unreachable from node 0")


@dataclass(frozen=True)
class DistanceLayers:
    """Nodes of a connected graph grouped by hop distance from one source.

    layers[d] is the set of nodes at distance exactly d; layers[0] == {source};
    the last layer index equals the source's eccentricity.
    """

    source: int
    layers: tuple[frozenset[int], ...]

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1

    def distance(self, v: int) -> int:
        for d, layer in enumerate(self.layers):
            if v in layer:
                return d
        raise KeyError(v)


@dataclass(frozen=True, eq=False)
class GeoGraph:
    """Graph embedded in the unit square.

    positions[v] = (x, y) for each kept node. When the raw point set was
    disconnected, only the largest component is kept (relabelled to contiguous
    ids, original coordinates preserved) and `discarded` records how many
    points were dropped.
    """

    graph: Graph
    positions: np.ndarray
    discarded: int = 0

    def __post_init__(self):
        if self.positions.shape != (self.graph.node_count, 2):
            raise GraphValidityError("positions must have one (x, y) row per node")


def build_graph(edge_list) -> Graph:
    """Build an undirected graph from (i, j) pairs.

    Duplicate edges (in either orientation) collapse to one. Node count is
    max id + 1. Self-loops and an empty edge list are rejected.
    """
    edges = [(int(i), int(j)) for i, j in edge_list]
    if not edges:
        raise GraphValidityError("edge list is empty")
    for i, j in edges:
        if i < 0 or j < 0:
            raise GraphValidityError(f"edge ({i}, {j}) has a negative node id")
        if i == j:
            raise GraphValidityError(f"self-loop at node {i} is not allowed")
    node_count = max(max(i, j) for i, j in edges) + 1
    return Graph(node_count, tuple(edges))


def bfs_layers(g: Graph, source: int) -> DistanceLayers:
    """Group all nodes by hop distance from `source` via breadth-first search.

    Raises GraphValidityError naming an unreachable node if the graph is
    disconnected.
    """
    g.check_node(source)
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    layers: list[list[int]] = [[source]]
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in g.adjacency[u]:
            if dist[w] == -1:
                dist[w] = du + 1
                if len(layers) == du + 1:
                    layers.append([])
                layers[du + 1].append(w)
                queue.append(w)
    if -1 in dist:
        raise GraphValidityError(
            f"graph is disconnected: node {dist.index(-1)} is unreachable from node {source}"
        )
    return DistanceLayers(source=source, layers=tuple(frozenset(layer) for layer in layers))


def diameter(g: Graph) -> int:
    """Longest shortest path in a connected graph."""
    return int(g.distance_matrix().max())


def induced_diameter(g: Graph, nodes) -> int:
    """Diameter of the subgraph induced by `nodes`, using distances inside the subgraph.

    The induced subgraph must be nonempty and connected.
    """
    node_set = set(nodes)
    if not node_set:
        raise GraphValidityError("induced node set is empty")
    for v in node_set:
        g.check_node(v)
    if len(node_set) == 1:
        return 0
    if len(node_set) > 64:
        return _induced_diameter_sparse(g, node_set)
    best = 0
    for s in node_set:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in node_set and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) != len(node_set):
            missing = min(node_set - dist.keys())
            raise GraphValidityError(
                f"induced subgraph is disconnected: node {missing} is unreachable from node {s}"
            )
        best = max(best, max(dist.values()))
    return best


def _induced_diameter_sparse(g: Graph, node_set: set[int]) -> int:
    sel = np.fromiter(sorted(node_set), dtype=np.int64)
    sub = g.csr()[sel][:, sel]
    dist = dijkstra(sub, directed=False, unweighted=True)
    if np.isinf(dist).any():
        i, j = np.argwhere(np.isinf(dist))[0]
        raise GraphValidityError(
            f"induced subgraph is disconnected: node {int(sel[j])} is unreachable from node {int(sel[i])}"
        )
    return int(dist.max())


def betweenness(g: Graph) -> np.ndarray:
    """Shortest-path betweenness of every node, as a fraction in [0, 1].

    For node v the value is the number of shortest paths through v (over
    ordered source-target pairs with both endpoints distinct from v, counting
    path multiplicity) divided by the total number of shortest paths over the
    same pairs. Computed with per-source BFS and reverse accumulation of
    path counts, not all-pairs enumeration.
    """
    g.ensure_connected()
    n = g.node_count
    indptr = g.csr().indptr
    indices = g.csr().indices.astype(np.int64)
    through = np.zeros(n, dtype=np.float64)  # sum over sources of sigma[v] * psi[v]
    paths_from = np.zeros(n, dtype=np.float64)  # S_v = total shortest paths with source v

    for s in range(n):
        dist = np.full(n, -1, dtype=np.int32)
        dist[s] = 0
        sigma = np.zeros(n, dtype=np.float64)
        sigma[s] = 1.0
        frontier = np.array([s], dtype=np.int64)
        level_edges: list[tuple[np.ndarray, np.ndarray]] = []
        level = 0
        while frontier.size:
            srcs, nbrs = _frontier_edges(frontier, indptr, indices)
            fresh = dist[nbrs] == -1
            dist[nbrs[fresh]] = level + 1
            down = dist[nbrs] == level + 1  # DAG edges level -> level+1
            u_e, w_e = srcs[down], nbrs[down]
            np.add.at(sigma, w_e, sigma[u_e])
            level_edges.append((u_e, w_e))
            frontier = np.unique(nbrs[fresh])
            level += 1

        # psi[v] = number of shortest paths from v to all strict DAG descendants
        psi = np.zeros(n, dtype=np.float64)
        for u_e, w_e in reversed(level_edges):
            np.add.at(psi, u_e, 1.0 + psi[w_e])
        contrib = sigma * psi
        paths_from[s] = contrib[s]  # psi at the source counts every shortest path from s
        contrib[s] = 0.0
        through += contrib

    total = paths_from.sum()
    denom = total - 2.0 * paths_from  # drop ordered pairs having v as an endpoint
    out = np.zeros(n, dtype=np.float64)
    nonzero = denom > 0
    out[nonzero] = through[nonzero] / denom[nonzero]
    return out


def _frontier_edges(frontier: np.ndarray, indptr: np.ndarray, indices: np.ndarray):
    """All (u, neighbor-of-u) pairs for u in frontier, fully vectorized."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    offsets = np.repeat(np.cumsum(counts) - counts, counts)
    flat = np.arange(total, dtype=np.int64) - offsets + np.repeat(starts, counts)
    return np.repeat(frontier, counts), indices[flat]


def gen_rgg(n: int, radius: float, seed: int) -> GeoGraph:
    """Random geometric graph: n uniform points in the unit square, edge iff
    Euclidean distance <= radius.

    Deterministic for a fixed seed. If the raw graph is disconnected, the
    largest component is returned (relabelled, original coordinates kept) and
    the number of dropped points is recorded on the result.

    Args:
        n: number of points, at least 2.
        radius: connection radius, in (0, sqrt(2)].
        seed: PRNG seed.
    """
    if n < 2:
        raise GraphValidityError("gen_rgg needs n >= 2")
    if not (0.0 < radius <= float(np.sqrt(2.0))):
        raise GraphValidityError("gen_rgg needs 0 < radius <= sqrt(2)")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", diff, diff)
    close = dist2 <= radius * radius
    ii, jj = np.nonzero(np.triu(close, k=1))
    edges = tuple((int(a), int(b)) for a, b in zip(ii, jj))
    g = Graph(n, edges)
    if g.is_connected():
        return GeoGraph(graph=g, positions=pts, discarded=0)

    keep = _largest_component(g)
    if len(keep) < 2:
        raise GraphValidityError("largest connected component has fewer than 2 nodes")
    relabel = {old: new for new, old in enumerate(keep)}
    kept_edges = tuple(
        (relabel[i], relabel[j]) for i, j in g.edges if i in relabel and j in relabel
    )
    sub = Graph(len(keep), kept_edges)
    return GeoGraph(graph=sub, positions=pts[keep], discarded=n - len(keep))


def _largest_component(g: Graph) -> list[int]:
    seen = [False] * g.node_count
    best: list[int] = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        if len(comp) > len(best):
            best = comp
    return sorted(best)


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Edge-to-vertex dual: one node per edge of g, adjacent iff the edges share
    an endpoint.

    Returns the dual graph and the mapping from dual node id to the original
    edge it represents.
    """
    if not g.edges:
        raise GraphValidityError("line graph of an edgeless graph is undefined")
    edge_id = {e: k for k, e in enumerate(g.edges)}
    incident: list[list[int]] = [[] for _ in range(g.node_count)]
    for e, k in edge_id.items():
        incident[e[0]].append(k)
        incident[e[1]].append(k)
    dual_edges: set[tuple[int, int]] = set()
    for ids in incident:
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                x, y = ids[a], ids[b]
                dual_edges.add((min(x, y), max(x, y)))
    dual = Graph(len(g.edges), tuple(dual_edges))
    return dual, g.edges
