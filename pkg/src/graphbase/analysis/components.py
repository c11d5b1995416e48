"""Connectivity decompositions: connected and biconnected components.

All traversals are iterative so graphs close to the analysis size threshold
never hit the interpreter recursion limit.  Directed graphs are handled via
their underlying undirected structure (weak connectivity).
"""

from __future__ import annotations

from ..model import Graph


def connected_components(g: Graph) -> list[set[str]]:
    """Partition of the node set into weakly connected components.

    Components come out in order of their first node in the graph's node
    list, so the result is deterministic.
    """
    adj = g.adjacency()
    seen: set[str] = set()
    components: list[set[str]] = []
    for node in g.nodes:
        if node.id in seen:
            continue
        comp = {node.id}
        seen.add(node.id)
        queue = [node.id]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        components.append(comp)
    return components


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def biconnected_components(g: Graph) -> list[frozenset[tuple[str, str]]]:
    """Biconnected components of the simple undirected view, as edge sets.

    Every simple-view edge lands in exactly one component; bridges form
    singleton components; isolated vertices contribute nothing.
    """
    comps, _ = _biconnected(g)
    return comps


def articulation_points(g: Graph) -> set[str]:
    _, points = _biconnected(g)
    return points


def _biconnected(g: Graph):
    edges = g.simple_undirected_edges()
    adj: dict[str, list[str]] = {n.id: [] for n in g.nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    counter = 0
    edge_stack: list[tuple[str, str]] = []
    components: list[frozenset[tuple[str, str]]] = []
    cut_vertices: set[str] = set()

    for root in g.nodes:
        r = root.id
        if r in disc:
            continue
        disc[r] = low[r] = counter
        counter += 1
        root_children = 0
        # frame: (vertex, parent, iterator over neighbors)
        stack = [(r, None, iter(adj[r]))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if w == parent:
                    continue  # simple view: the tree edge appears once
                if w not in disc:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == r:
                        root_children += 1
                    stack.append((w, v, iter(adj[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if descended:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
                if low[v] >= disc[pv]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e if e[0] <= e[1] else (e[1], e[0]))
                        if e == (pv, v):
                            break
                    components.append(frozenset(comp))
                    if pv != r:
                        cut_vertices.add(pv)
        if root_children > 1:
            cut_vertices.add(r)
    return components, cut_vertices
