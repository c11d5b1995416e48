"""Linear-time planarity testing via the left-right criterion.

The test runs on the simple undirected view (loops and parallel edges never
affect planarity).  It orients the graph by a DFS, computing low points and
a nesting order for the outgoing edges, then runs a second DFS that
maintains a stack of conflict pairs of back-edge intervals; the graph is
planar exactly when every bipartition constraint between same-side and
opposite-side back edges remains satisfiable.  Both passes are iterative.
"""

from __future__ import annotations

from ..model import Graph

Edge = tuple[str, str]


class _Interval:
    __slots__ = ("low", "high")

    def __init__(self, low: Edge | None = None, high: Edge | None = None):
        self.low = low
        self.high = high

    def empty(self) -> bool:
        return self.low is None and self.high is None


class _ConflictPair:
    __slots__ = ("left", "right")

    def __init__(self, left: _Interval | None = None,
                 right: _Interval | None = None):
        self.left = left or _Interval()
        self.right = right or _Interval()

    def swap(self):
        self.left, self.right = self.right, self.left


class _Nonplanar(Exception):
    pass


def is_planar(g: Graph) -> bool:
    """True iff the graph has a planar embedding."""
    nodes = [n.id for n in g.nodes]
    edges = g.simple_undirected_edges()
    n, m = len(nodes), len(edges)
    if n <= 4:
        return True
    if m > 3 * n - 6:
        return False
    adj: dict[str, list[str]] = {v: [] for v in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    try:
        _LRTest(nodes, adj).run()
    except _Nonplanar:
        return False
    return True


class _LRTest:
    def __init__(self, nodes: list[str], adj: dict[str, list[str]]):
        self.nodes = nodes
        self.adj = adj
        self.height: dict[str, int] = {}
        self.parent_edge: dict[str, Edge | None] = {v: None for v in nodes}
        self.lowpt: dict[Edge, int] = {}
        self.lowpt2: dict[Edge, int] = {}
        self.nesting_depth: dict[Edge, int] = {}
        self.oriented: dict[str, list[Edge]] = {v: [] for v in nodes}
        self.roots: list[str] = []
        # testing phase state
        self.S: list[_ConflictPair] = []
        self.stack_bottom: dict[Edge, int] = {}
        self.lowpt_edge: dict[Edge, Edge] = {}
        self.ref: dict[Edge | None, Edge | None] = {}

    def run(self):
        for s in self.nodes:
            if s not in self.height:
                self.height[s] = 0
                self.roots.append(s)
                self._dfs_orient(s)
        order = {v: [] for v in self.nodes}
        for v in self.nodes:
            order[v] = sorted(self.oriented[v],
                              key=lambda e: self.nesting_depth[e])
        self.order = order
        for s in self.roots:
            self._dfs_test(s)

    # --- phase 1: orientation -------------------------------------------

    def _finish_edge(self, e: Edge, v: str):
        """Set nesting depth of e=(v,w) and fold its low points into the
        parent edge of v."""
        self.nesting_depth[e] = 2 * self.lowpt[e]
        if self.lowpt2[e] < self.height[v]:  # chordal: nest inward
            self.nesting_depth[e] += 1
        pe = self.parent_edge[v]
        if pe is not None:
            if self.lowpt[e] < self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt[pe], self.lowpt2[e])
                self.lowpt[pe] = self.lowpt[e]
            elif self.lowpt[e] > self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt[e])
            else:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt2[e])

    def _dfs_orient(self, s: str):
        visited_edges: set[Edge] = set()
        # frame: [v, neighbor iterator, tree edge awaiting finish]
        stack = [[s, iter(self.adj[s]), None]]
        while stack:
            frame = stack[-1]
            v = frame[0]
            if frame[2] is not None:
                self._finish_edge(frame[2], v)
                frame[2] = None
            descended = False
            for w in frame[1]:
                key = (v, w) if v <= w else (w, v)
                if key in visited_edges:
                    continue
                visited_edges.add(key)
                e = (v, w)
                self.oriented[v].append(e)
                self.lowpt[e] = self.height[v]
                self.lowpt2[e] = self.height[v]
                if w not in self.height:  # tree edge
                    self.parent_edge[w] = e
                    self.height[w] = self.height[v] + 1
                    frame[2] = e
                    stack.append([w, iter(self.adj[w]), None])
                    descended = True
                    break
                self.lowpt[e] = self.height[w]  # back edge
                self._finish_edge(e, v)
            if not descended:
                stack.pop()

    # --- phase 2: testing --------------------------------------------------

    def _top(self) -> _ConflictPair | None:
        return self.S[-1] if self.S else None

    def _conflicting(self, interval: _Interval, b: Edge) -> bool:
        return (not interval.empty()
                and self.lowpt[interval.high] > self.lowpt[b])

    def _lowest(self, pair: _ConflictPair) -> int:
        if pair.left.empty():
            return self.lowpt[pair.right.low]
        if pair.right.empty():
            return self.lowpt[pair.left.low]
        return min(self.lowpt[pair.left.low], self.lowpt[pair.right.low])

    def _dfs_test(self, s: str):
        # frame: [v, edge list, index, edge awaiting post-processing]
        stack = [[s, self.order[s], 0, None]]
        while stack:
            frame = stack[-1]
            v = frame[0]
            if frame[3] is not None:
                self._integrate(frame[3], v, frame[1])
                frame[3] = None
            if frame[2] < len(frame[1]):
                ei = frame[1][frame[2]]
                frame[2] += 1
                w = ei[1]
                self.stack_bottom[ei] = len(self.S)
                if ei == self.parent_edge[w]:  # tree edge: descend first
                    frame[3] = ei
                    stack.append([w, self.order[w], 0, None])
                    continue
                # back edge
                self.lowpt_edge[ei] = ei
                self.S.append(_ConflictPair(right=_Interval(ei, ei)))
                self._integrate(ei, v, frame[1])
                continue
            # all outgoing edges handled: leave v
            stack.pop()
            e = self.parent_edge[v]
            if e is not None:
                u = e[0]
                self._trim_back_edges(u)
                # ref(e): the highest remaining return edge decides e's side
                if self.lowpt[e] < self.height[u] and self.S:
                    hl = self.S[-1].left.high
                    hr = self.S[-1].right.high
                    if hl is not None and (hr is None
                                           or self.lowpt[hl] > self.lowpt[hr]):
                        self.ref[e] = hl
                    else:
                        self.ref[e] = hr

    def _integrate(self, ei: Edge, v: str, ordered: list[Edge]):
        """After ei (tree or back) is explored: bubble its constraints up."""
        if self.lowpt[ei] >= self.height[v]:
            return  # no return edge below v
        e = self.parent_edge[v]
        if ei == ordered[0]:
            if e is not None:
                self.lowpt_edge[e] = self.lowpt_edge[ei]
            return
        self._add_constraints(ei, e)

    def _add_constraints(self, ei: Edge, e: Edge):
        pair = _ConflictPair()
        # merge return edges of ei into pair.right
        while True:
            q = self.S.pop()
            if not q.left.empty():
                q.swap()
            if not q.left.empty():
                raise _Nonplanar
            if self.lowpt[q.right.low] > self.lowpt[e]:
                if pair.right.empty():
                    pair.right.high = q.right.high
                else:
                    self.ref[pair.right.low] = q.right.high
                pair.right.low = q.right.low
            else:
                # only returns to lowpt(e): align under the parent edge
                self.ref[q.right.low] = self.lowpt_edge[e]
            if len(self.S) == self.stack_bottom[ei]:
                break
        # merge conflicting return edges of earlier siblings into pair.left
        while (self._conflicting(self.S[-1].left, ei)
               or self._conflicting(self.S[-1].right, ei)):
            q = self.S.pop()
            if self._conflicting(q.right, ei):
                q.swap()
            if self._conflicting(q.right, ei):
                raise _Nonplanar
            # interval below lowpt(ei) chains under pair.right
            self.ref[pair.right.low] = q.right.high
            if q.right.low is not None:
                pair.right.low = q.right.low
            if pair.left.empty():
                pair.left.high = q.left.high
            else:
                self.ref[pair.left.low] = q.left.high
            pair.left.low = q.left.low
        if not (pair.left.empty() and pair.right.empty()):
            self.S.append(pair)

    def _trim_back_edges(self, u: str):
        """Drop back edges that end at the parent u when leaving its child."""
        hu = self.height[u]
        while self.S and self._lowest(self.S[-1]) == hu:
            self.S.pop()
        if not self.S:
            return
        pair = self.S.pop()
        while pair.left.high is not None and pair.left.high[1] == u:
            pair.left.high = self.ref.get(pair.left.high)
        if pair.left.high is None and pair.left.low is not None:
            # left interval just emptied
            self.ref[pair.left.low] = pair.right.low
            pair.left.low = None
        while pair.right.high is not None and pair.right.high[1] == u:
            pair.right.high = self.ref.get(pair.right.high)
        if pair.right.high is None and pair.right.low is not None:
            self.ref[pair.right.low] = pair.left.low
            pair.right.low = None
        self.S.append(pair)
