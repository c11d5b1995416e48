"""Reproducible benchmark-collection generators.

Two construction pipelines ship with the archive:

* a mutation generator that grows a collection from small seed graphs by
  applying rounds of random primitive operations (vertex insert, low-degree
  vertex removal with re-stitching, edge insert, non-bridge edge removal,
  edge subdivision), filtering each round's candidate by a structural
  suitability predicate and re-weighting the operation probabilities
  between rounds;

* a sanitization pipeline for collections of directed graphs that keeps one
  representative per labeled-isomorphism class, connects the survivors with
  a minimal set of random edges, and inverts a heuristically chosen set of
  edges to remove cycles.

Everything is a deterministic function of its inputs and an explicit seed,
so generated collections can be reproduced from their provenance documents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .analysis import is_acyclic
from .analysis.components import connected_components
from .errors import FilterExhausted
from .model import EdgeRecord, Graph, NodeRecord, build_graph, labeled_signature

MUTATION_OPS = ("insert_vertex", "remove_vertex", "insert_edge",
                "remove_edge", "split_edge")


@dataclass(frozen=True)
class SuitabilityFilter:
    require_connected: bool = True
    density_bounds: tuple[float, float] = (0.0, 1.0)
    max_degree_seq_distance: float = 2.0  # L1 over normalized histograms

    def __post_init__(self):
        low, high = self.density_bounds
        if low > high:
            raise ValueError("density_bounds low must be <= high")


@dataclass(frozen=True)
class MutationConfig:
    rounds: int = 10
    ops_per_round: int = 5
    op_probabilities: tuple[float, ...] = (0.2, 0.2, 0.2, 0.2, 0.2)
    perturbation: float = 0.02  # +-epsilon applied per round
    size_bounds: tuple[int, int] = (10, 100)
    rng_seed: int = 0
    filter: SuitabilityFilter = field(default_factory=SuitabilityFilter)
    max_retries: int = 50

    def __post_init__(self):
        if len(self.op_probabilities) != len(MUTATION_OPS):
            raise ValueError(f"need {len(MUTATION_OPS)} probabilities")
        if any(p < 0 for p in self.op_probabilities):
            raise ValueError("probabilities must be non-negative")
        if abs(sum(self.op_probabilities) - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1")
        if self.size_bounds[0] < 1 or self.size_bounds[0] > self.size_bounds[1]:
            raise ValueError("bad size_bounds")


class _SimpleGraph:
    """Mutable simple undirected graph used while mutating.

    Tracks the originating node/edge records so untouched parts keep their
    labels and attributes when converted back to a Graph.
    """

    def __init__(self, ids: list[str], edges: set[tuple[str, str]],
                 node_records: dict[str, NodeRecord],
                 edge_records: dict[tuple[str, str], EdgeRecord]):
        self.ids = list(ids)
        self.present = set(ids)
        self.edges = set(edges)
        self.node_records = node_records
        self.edge_records = edge_records
        self.fresh = 0

    @classmethod
    def from_graph(cls, g: Graph) -> "_SimpleGraph":
        edge_records: dict[tuple[str, str], EdgeRecord] = {}
        for e in g.edges:
            if e.source != e.target:
                edge_records.setdefault(e.key(False), e)
        return cls([n.id for n in g.nodes], set(edge_records),
                   {n.id: n for n in g.nodes}, edge_records)

    def copy(self) -> "_SimpleGraph":
        c = _SimpleGraph(self.ids, self.edges, self.node_records,
                         self.edge_records)
        c.fresh = self.fresh
        return c

    def norm(self, u: str, v: str) -> tuple[str, str]:
        return (u, v) if u <= v else (v, u)

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v in self.ids}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self, v: str) -> list[str]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def new_id(self) -> str:
        while True:
            candidate = f"m{self.fresh}"
            self.fresh += 1
            if candidate not in self.present:
                return candidate

    def connected(self) -> bool:
        if not self.ids:
            return True
        adj: dict[str, list[str]] = {v: [] for v in self.ids}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {self.ids[0]}
        stack = [self.ids[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.ids)

    def to_graph(self) -> Graph:
        nodes = [self.node_records.get(v, NodeRecord(id=v)) for v in self.ids]
        edges = [self.edge_records.get(pair, EdgeRecord(*pair))
                 for pair in sorted(self.edges)]
        return build_graph(False, nodes, edges)


def _apply_op(state: _SimpleGraph, op: str, rng: random.Random,
              size_bounds: tuple[int, int]) -> None:
    """Apply one primitive operation in place; impossible ops are no-ops."""
    min_n, max_n = size_bounds
    n = len(state.ids)
    if op == "insert_vertex":
        if n == 0 or n >= max_n:
            return
        anchor = rng.choice(state.ids)
        nid = state.new_id()
        state.ids.append(nid)
        state.present.add(nid)
        state.edges.add(state.norm(anchor, nid))
    elif op == "remove_vertex":
        if n <= min_n:
            return
        degs = state.degrees()
        candidates = [v for v in state.ids if degs[v] <= 2]
        if not candidates:
            return
        victim = rng.choice(candidates)
        nbrs = state.neighbors(victim)
        state.ids.remove(victim)
        state.present.discard(victim)
        state.edges = {e for e in state.edges if victim not in e}
        if len(nbrs) == 2 and nbrs[0] != nbrs[1]:
            state.edges.add(state.norm(nbrs[0], nbrs[1]))  # re-stitch
    elif op == "insert_edge":
        if n < 2:
            return
        for _ in range(10):
            u, v = rng.choice(state.ids), rng.choice(state.ids)
            if u != v and state.norm(u, v) not in state.edges:
                state.edges.add(state.norm(u, v))
                return
    elif op == "remove_edge":
        if not state.edges:
            return
        pool = sorted(state.edges)
        for _ in range(10):
            edge = pool[rng.randrange(len(pool))]
            state.edges.discard(edge)
            if state.connected():
                return  # not a bridge
            state.edges.add(edge)
    elif op == "split_edge":
        if not state.edges or n >= max_n:
            return
        pool = sorted(state.edges)
        u, v = pool[rng.randrange(len(pool))]
        state.edges.discard((u, v))
        nid = state.new_id()
        state.ids.append(nid)
        state.present.add(nid)
        state.edges.add(state.norm(u, nid))
        state.edges.add(state.norm(nid, v))
    else:  # pragma: no cover
        raise ValueError(f"unknown op {op!r}")


def _degree_histogram(g_degrees: list[int]) -> dict[int, float]:
    total = len(g_degrees) or 1
    hist: dict[int, float] = {}
    for d in g_degrees:
        hist[d] = hist.get(d, 0.0) + 1.0 / total
    return hist


def _histogram_distance(a: list[int], b: list[int]) -> float:
    ha, hb = _degree_histogram(a), _degree_histogram(b)
    keys = set(ha) | set(hb)
    return sum(abs(ha.get(k, 0.0) - hb.get(k, 0.0)) for k in keys)


def _passes_filter(state: _SimpleGraph, seed_degrees: list[int],
                   cfg: MutationConfig) -> bool:
    n = len(state.ids)
    if not cfg.size_bounds[0] <= n <= cfg.size_bounds[1]:
        return False
    f = cfg.filter
    if f.require_connected and not state.connected():
        return False
    d = (2 * len(state.edges) / (n * (n - 1))) if n >= 2 else 0.0
    if not f.density_bounds[0] <= d <= f.density_bounds[1]:
        return False
    degs = sorted(state.degrees().values())
    if _histogram_distance(degs, seed_degrees) > f.max_degree_seq_distance:
        return False
    return True


def mutate_rome(seed_graph: Graph, cfg: MutationConfig) -> list[Graph]:
    """Grow a collection by rounds of random primitive operations.

    Each round mutates the previous round's survivor with
    ``cfg.ops_per_round`` operations sampled from the (per-round perturbed)
    probability vector, retrying with fresh randomness until the candidate
    passes the suitability filter and the size bounds.  One graph is emitted
    per round; the run is a pure function of the seed graph and
    ``cfg.rng_seed``.
    """
    if seed_graph.directed:
        raise ValueError("seed graph must be undirected")
    base = _SimpleGraph.from_graph(seed_graph)
    if not base.connected():
        raise ValueError("seed graph must be connected")
    seed_degrees = sorted(base.degrees().values())

    rng = random.Random(cfg.rng_seed)
    probabilities = list(cfg.op_probabilities)
    outputs: list[Graph] = []
    for round_index in range(cfg.rounds):
        accepted = None
        for _attempt in range(cfg.max_retries):
            candidate = base.copy()
            for _ in range(cfg.ops_per_round):
                op = rng.choices(MUTATION_OPS, weights=probabilities)[0]
                _apply_op(candidate, op, rng, cfg.size_bounds)
            if _passes_filter(candidate, seed_degrees, cfg):
                accepted = candidate
                break
        if accepted is None:
            raise FilterExhausted(round_index, cfg.max_retries)
        outputs.append(accepted.to_graph())
        base = accepted
        probabilities = _perturb(probabilities, cfg.perturbation, rng)
    return outputs


def _perturb(probabilities: list[float], epsilon: float,
             rng: random.Random) -> list[float]:
    noisy = [max(0.0, p + rng.uniform(-epsilon, epsilon))
             for p in probabilities]
    total = sum(noisy)
    if total <= 0:
        return [1.0 / len(probabilities)] * len(probabilities)
    return [p / total for p in noisy]


def dedup_labeled(graphs: list[Graph]) -> list[Graph]:
    """Keep the first representative of each labeled-isomorphism class."""
    seen: set[bytes] = set()
    kept: list[Graph] = []
    for g in graphs:
        sig = labeled_signature(g)
        if sig not in seen:
            seen.add(sig)
            kept.append(g)
    return kept


def connect_randomly(g: Graph, rng_seed: int = 0
                     ) -> tuple[Graph, list[tuple[str, str]]]:
    """Add exactly component_count - 1 random edges to connect the graph.

    Each added edge joins two distinct components through uniformly chosen
    endpoints (uniform over component pairs, then over members).
    """
    rng = random.Random(rng_seed)
    comps = [sorted(c) for c in connected_components(g)]
    added: list[tuple[str, str]] = []
    while len(comps) > 1:
        i, j = rng.sample(range(len(comps)), 2)
        u = rng.choice(comps[i])
        v = rng.choice(comps[j])
        if g.directed and rng.random() < 0.5:
            u, v = v, u
        added.append((u, v))
        keep = min(i, j)
        drop = max(i, j)
        comps[keep] = comps[keep] + comps[drop]
        del comps[drop]
    if not added:
        return g, []
    new_edges = g.edges + tuple(EdgeRecord(source=u, target=v)
                                for u, v in added)
    return replace(g, edges=new_edges), added


def eliminate_cycles(g: Graph) -> tuple[Graph, list[tuple[str, str]]]:
    """Invert a heuristically chosen set of edges to make the digraph acyclic.

    Uses the greedy source/sink-peeling vertex ordering (removing sinks to
    the back, sources to the front, and otherwise the vertex maximizing
    outdegree minus indegree); edges pointing backwards in that order form
    the feedback set and are inverted.  Self-loops cannot be fixed by
    inversion and are dropped.  The underlying undirected edge multiset is
    otherwise preserved.
    """
    if not g.directed:
        raise ValueError("eliminate_cycles expects a directed graph")
    order = _greedy_vertex_order(g)
    pos = {v: i for i, v in enumerate(order)}
    inverted: list[tuple[str, str]] = []
    new_edges: list[EdgeRecord] = []
    for e in g.edges:
        if e.source == e.target:
            continue  # dropped: a self-loop can never become acyclic
        if pos[e.target] < pos[e.source]:
            inverted.append((e.source, e.target))
            new_edges.append(replace(e, source=e.target, target=e.source))
        else:
            new_edges.append(e)
    result = replace(g, edges=tuple(new_edges))
    assert is_acyclic(result)
    return result, inverted


def _greedy_vertex_order(g: Graph) -> list[str]:
    ids = [n.id for n in g.nodes]
    outdeg = {v: 0 for v in ids}
    indeg = {v: 0 for v in ids}
    out_adj: dict[str, list[str]] = {v: [] for v in ids}
    in_adj: dict[str, list[str]] = {v: [] for v in ids}
    for e in g.edges:
        if e.source == e.target:
            continue
        outdeg[e.source] += 1
        indeg[e.target] += 1
        out_adj[e.source].append(e.target)
        in_adj[e.target].append(e.source)

    alive = set(ids)
    s1: list[str] = []
    s2_rev: list[str] = []

    def remove(v: str):
        alive.discard(v)
        for w in out_adj[v]:
            if w in alive:
                indeg[w] -= 1
        for w in in_adj[v]:
            if w in alive:
                outdeg[w] -= 1

    while alive:
        changed = True
        while changed:
            changed = False
            for v in ids:  # deterministic scan order
                if v in alive and outdeg[v] == 0:
                    remove(v)
                    s2_rev.append(v)
                    changed = True
            for v in ids:
                if v in alive and indeg[v] == 0:
                    remove(v)
                    s1.append(v)
                    changed = True
        if alive:
            best = max((v for v in ids if v in alive),
                       key=lambda v: (outdeg[v] - indeg[v], -ids.index(v)))
            remove(best)
            s1.append(best)
    return s1 + list(reversed(s2_rev))


def sanitize_north(graphs: list[Graph], rng_seed: int = 0) -> list[Graph]:
    """Dedup by labeled signature, connect randomly, eliminate cycles.

    Every output is acyclic and weakly connected, and no two outputs share
    a labeled signature.
    """
    rng = random.Random(rng_seed)
    outputs: list[Graph] = []
    for g in dedup_labeled(graphs):
        per_graph_seed = rng.getrandbits(32)
        connected, _added = connect_randomly(g, per_graph_seed)
        dag, _inverted = eliminate_cycles(connected)
        outputs.append(dag)
    return dedup_labeled(outputs)


def rome_provenance(seed_name: str, cfg: MutationConfig) -> str:
    """Human-readable recipe stored as the creation-method metadata."""
    return (
        "generated by graphbase mutation generator: "
        f"seed graph {seed_name!r}, {cfg.rounds} rounds x "
        f"{cfg.ops_per_round} ops, op probabilities "
        f"{tuple(round(p, 4) for p in cfg.op_probabilities)} perturbed by "
        f"+-{cfg.perturbation} per round, size bounds {cfg.size_bounds}, "
        f"connected={cfg.filter.require_connected}, "
        f"density in {cfg.filter.density_bounds}, "
        f"max degree-histogram distance {cfg.filter.max_degree_seq_distance}, "
        f"rng seed {cfg.rng_seed}")


def north_provenance(count: int, rng_seed: int) -> str:
    return (
        "generated by graphbase sanitization pipeline: deduplicated by "
        "labeled signature, connected with minimal random edge sets, cycles "
        f"removed by greedy edge inversion; {count} input digraphs, "
        f"rng seed {rng_seed}")
