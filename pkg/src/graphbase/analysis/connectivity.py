"""Exact vertex connectivity via unit-capacity max-flow.

Each vertex is split into an in/out pair joined by a capacity-1 arc; every
undirected edge becomes two infinite arcs.  The minimum s-t vertex cut then
equals the max flow between s_out and t_in.  Pair selection follows the
minimum-degree strategy: a vertex v of minimum degree bounds the answer by
deg(v); flows are computed from v to each non-neighbor and between
non-adjacent neighbor pairs of v, with flows cut off at the best bound so
far.  Complete graphs are n-1 by convention.
"""

from __future__ import annotations

import time
from itertools import combinations

from ..errors import TimeBudgetExceeded
from ..model import Graph


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int):
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s: int, t: int, cutoff: int) -> int:
        flow = 0
        while flow < cutoff:
            level = self._levels(s, t)
            if level is None:
                break
            it = [0] * self.n
            while flow < cutoff:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                flow += pushed
        return flow

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for to, cap, _rev in self.adj[v]:
                    if cap > 0 and level[to] == -1:
                        level[to] = level[v] + 1
                        nxt.append(to)
            frontier = nxt
        return level if level[t] != -1 else None

    def _augment(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        # one augmenting path by iterative DFS over the level graph
        path: list[tuple[int, int]] = []  # (vertex, edge index taken)
        v = s
        while True:
            if v == t:
                bottleneck = min(self.adj[u][i][1] for u, i in path)
                for u, i in path:
                    edge = self.adj[u][i]
                    edge[1] -= bottleneck
                    self.adj[edge[0]][edge[2]][1] += bottleneck
                return bottleneck
            advanced = False
            while it[v] < len(self.adj[v]):
                to, cap, _rev = self.adj[v][it[v]]
                if cap > 0 and level[to] == level[v] + 1:
                    path.append((v, it[v]))
                    v = to
                    advanced = True
                    break
                it[v] += 1
            if advanced:
                continue
            if not path:
                return 0
            level[v] = -1  # dead end: prune
            v, _ = path.pop()


def vertex_connectivity(g: Graph, deadline: float | None = None) -> int:
    """Minimum number of vertex removals disconnecting the simple view.

    Returns n-1 for complete graphs (nothing to disconnect) and 0 for
    disconnected or trivial graphs.  ``deadline`` (time.monotonic value)
    aborts long computations with :class:`TimeBudgetExceeded`.
    """
    ids = [n.id for n in g.nodes]
    n = len(ids)
    if n <= 1:
        return 0
    index = {v: i for i, v in enumerate(ids)}
    neighbor_sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in g.simple_undirected_edges():
        neighbor_sets[index[u]].add(index[v])
        neighbor_sets[index[v]].add(index[u])

    # connectivity check
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in neighbor_sets[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(seen) < n:
        return 0

    m = sum(len(s) for s in neighbor_sets) // 2
    if m == n * (n - 1) // 2:
        return n - 1

    v_min = min(range(n), key=lambda v: len(neighbor_sets[v]))
    best = len(neighbor_sets[v_min])
    if best <= 1:
        return 1  # connected non-complete graph with a degree-1 vertex

    inf = n

    def local_connectivity(s: int, t: int, cutoff: int) -> int:
        dinic = _Dinic(2 * n)
        for x in range(n):
            dinic.add_edge(2 * x, 2 * x + 1, 1)  # x_in -> x_out
        for x in range(n):
            for y in neighbor_sets[x]:
                dinic.add_edge(2 * x + 1, 2 * y, inf)  # x_out -> y_in
        return dinic.max_flow(2 * s + 1, 2 * t, cutoff)

    def check_deadline():
        if deadline is not None and time.monotonic() > deadline:
            raise TimeBudgetExceeded(None)

    for w in range(n):
        if w == v_min or w in neighbor_sets[v_min]:
            continue
        check_deadline()
        best = min(best, local_connectivity(v_min, w, best))
        if best <= 1:
            return best
    for x, y in combinations(sorted(neighbor_sets[v_min]), 2):
        if y in neighbor_sets[x]:
            continue
        check_deadline()
        best = min(best, local_connectivity(x, y, best))
        if best <= 1:
            return best
    return best
