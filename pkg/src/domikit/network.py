"""Two-terminal flow networks as multistate systems.

Each edge is a component whose state is its current capacity, and the
structure value of a state vector is the max flow it admits from source
to sink.  Undirected edges carry flow either way within one shared
capacity.  The level-k cuts of such a system reduce, through the
associated binary structure, to plain two-terminal connectivity exactly
when every minimal cut set is tight at full capacity, which is what
makes the directed closed forms below applicable.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from functools import lru_cache

from .errors import (
    CoherenceError,
    ComplexityGuardError,
    DomainError,
    GraphError,
)
from .domination import BinaryStructure, associated_binary
from .poset import Vector
from .systems import MultistateSystem, StateSpace


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str
    directed: bool
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    """Node and edge lists with two distinguished terminals.

    Edge ids must be exactly 1..n so that edge i is component i - 1 of
    the derived system.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    sink: str

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("duplicate node names")
        nodeset = set(self.nodes)
        if self.source not in nodeset or self.sink not in nodeset:
            raise GraphError(f"terminals {self.source!r}, {self.sink!r} must be nodes")
        if self.source == self.sink:
            raise GraphError("source and sink coincide")
        ids = sorted(e.id for e in self.edges)
        if ids != list(range(1, len(self.edges) + 1)):
            raise GraphError(f"edge ids must be exactly 1..{len(self.edges)}, got {ids}")
        for e in self.edges:
            if e.tail not in nodeset or e.head not in nodeset:
                raise GraphError(f"edge {e.id} endpoint outside node list")
            if e.capacity < 1:
                raise GraphError(f"edge {e.id} max capacity must be >= 1")
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @property
    def max_states(self) -> tuple[int, ...]:
        return tuple(e.capacity for e in self.edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)


def network(
    nodes,
    edges,
    source,
    sink,
) -> FlowNetwork:
    """Build a FlowNetwork from (id, tail, head, directed, capacity) tuples."""
    return FlowNetwork(
        nodes=tuple(nodes),
        edges=tuple(Edge(*e) for e in edges),
        source=source,
        sink=sink,
    )


def max_flow(net: FlowNetwork, x: Vector) -> int:
    """Max source-to-sink flow under edge capacities x (integers).

    Breadth-first augmenting paths on the residual graph; an undirected
    edge becomes a pair of opposed arcs acting as each other's residuals,
    which is the standard reduction.
    """
    ms = net.max_states
    if len(x) != len(ms):
        raise DomainError(f"capacity vector of length {len(ms)} expected, got {x}")
    if any(a < 0 or a > m for a, m in zip(x, ms)):
        raise DomainError(f"capacity vector {x} outside 0..{ms}")
    idx = {v: i for i, v in enumerate(net.nodes)}
    adj: list[list[int]] = [[] for _ in net.nodes]
    cap: list[int] = []
    to: list[int] = []

    def arc(u: int, v: int, c: int, c_rev: int):
        adj[u].append(len(cap))
        to.append(v)
        cap.append(c)
        adj[v].append(len(cap))
        to.append(u)
        cap.append(c_rev)

    for e, xe in zip(net.edges, x):
        u, v = idx[e.tail], idx[e.head]
        arc(u, v, xe, xe if not e.directed else 0)
    s, t = idx[net.source], idx[net.sink]
    flow = 0
    while True:
        prev_arc = [-1] * len(net.nodes)
        prev_arc[s] = -2
        queue = deque([s])
        while queue and prev_arc[t] == -1:
            u = queue.popleft()
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and prev_arc[v] == -1:
                    prev_arc[v] = a
                    queue.append(v)
        if prev_arc[t] == -1:
            return flow
        bottleneck = None
        v = t
        while v != s:
            a = prev_arc[v]
            bottleneck = cap[a] if bottleneck is None else min(bottleneck, cap[a])
            v = to[a ^ 1]
        v = t
        while v != s:
            a = prev_arc[v]
            cap[a] -= bottleneck
            cap[a ^ 1] += bottleneck
            v = to[a ^ 1]
        flow += bottleneck


def _connects(net: FlowNetwork, removed: frozenset[int]) -> bool:
    """Can the sink be reached from the source avoiding `removed` edges?"""
    idx = {v: i for i, v in enumerate(net.nodes)}
    adj: list[list[int]] = [[] for _ in net.nodes]
    for e in net.edges:
        if e.id in removed:
            continue
        adj[idx[e.tail]].append(idx[e.head])
        if not e.directed:
            adj[idx[e.head]].append(idx[e.tail])
    s, t = idx[net.source], idx[net.sink]
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == t:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def minimal_cut_sets(net: FlowNetwork, *, guard: int = 25) -> tuple[tuple[int, ...], ...]:
    """Minimal edge sets whose removal disconnects sink from source.

    Enumerated by ascending size, skipping supersets of cuts already
    found, so the result is exactly the minimal ones; listed in
    lexicographic order of sorted id tuples.
    """
    n = len(net.edges)
    if n > guard:
        raise ComplexityGuardError(f"{n} edges exceed the cut enumeration guard ({guard})")
    ids = net.edge_ids
    found: list[frozenset[int]] = []
    for size in range(0, n + 1):
        for combo in combinations(ids, size):
            k = frozenset(combo)
            if any(c <= k for c in found):
                continue
            if not _connects(net, k):
                found.append(k)
    return tuple(sorted(tuple(sorted(k)) for k in found))


def structure_min_cut(net: FlowNetwork, x: Vector, *, guard: int = 25) -> int:
    """Max flow as the minimum over cut sets of their capacity under x.

    Exists as an independent cross-check of the augmenting-path value
    (max-flow min-cut); same guard as the cut enumeration.
    """
    cuts = minimal_cut_sets(net, guard=guard)
    ms = net.max_states
    if len(x) != len(ms) or any(a < 0 or a > m for a, m in zip(x, ms)):
        raise DomainError(f"capacity vector {x} outside 0..{ms}")
    # disconnected terminals admit the empty cut set, so cuts is never empty
    return min(sum(x[i - 1] for i in cut) for cut in cuts)


def network_system(net: FlowNetwork) -> MultistateSystem:
    """The multistate system of a network: phi(x) = max flow under x.

    The top system level is the max flow at full capacity; a network
    whose terminals cannot be connected at all yields the degenerate
    constant-0 system, flagged with a warning.
    """
    ms = net.max_states
    system_max = max_flow(net, ms)
    if system_max == 0:
        warnings.warn(
            "terminals are disconnected at full capacity; the system is constant 0",
            stacklevel=2,
        )

    @lru_cache(maxsize=None)
    def phi(x: Vector) -> int:
        return max_flow(net, x)

    space = StateSpace(max_states=ms, system_max=system_max)
    return MultistateSystem(space=space, kind="network", _func=phi)


def associated_binary_network(net: FlowNetwork, k: int) -> BinaryStructure:
    """Associated binary structure of the level-k flow system.

    Slot i up means edge i+1 at full capacity, down means one unit below.
    When every minimal cut set is tight at level k (see
    reduces_to_connectivity) this structure is plain two-terminal
    connectivity of the graph.
    """
    return associated_binary(network_system(net).level(k))


def connectivity_thresholds(net: FlowNetwork, k: int) -> dict[tuple[int, ...], int]:
    """Per-cut threshold t(K) = k - sum_{i in K} (m_i - 1).

    The level-k associated binary structure is plain two-terminal
    connectivity iff t(K) = 1 for every minimal cut set.
    """
    cuts = minimal_cut_sets(net)
    ms = net.max_states
    return {cut: k - sum(ms[i - 1] - 1 for i in cut) for cut in cuts}


def reduces_to_connectivity(net: FlowNetwork, k: int) -> bool:
    """True iff the level-k associated binary structure is connectivity."""
    return all(t == 1 for t in connectivity_thresholds(net, k).values())


def simple_path_sets(net: FlowNetwork, *, guard: int = 25) -> tuple[frozenset[int], ...]:
    """Edge sets of simple source-to-sink paths (the minimal path sets
    of the two-terminal connectivity structure)."""
    if len(net.edges) > guard:
        raise ComplexityGuardError(f"{len(net.edges)} edges exceed the path guard ({guard})")
    idx = {v: i for i, v in enumerate(net.nodes)}
    out_arcs: list[list[tuple[int, int]]] = [[] for _ in net.nodes]
    for e in net.edges:
        u, v = idx[e.tail], idx[e.head]
        out_arcs[u].append((v, e.id))
        if not e.directed:
            out_arcs[v].append((u, e.id))
    s, t = idx[net.source], idx[net.sink]
    found: set[frozenset[int]] = set()
    path_nodes = [s]
    path_edges: list[int] = []

    def walk(u: int):
        if u == t:
            found.add(frozenset(path_edges))
            return
        for v, eid in out_arcs[u]:
            if v in path_nodes:
                continue
            path_nodes.append(v)
            path_edges.append(eid)
            walk(v)
            path_nodes.pop()
            path_edges.pop()

    walk(s)
    return tuple(sorted(found, key=sorted))


def relevant_edges(net: FlowNetwork, *, guard: int = 25) -> frozenset[int]:
    """Edges lying on at least one simple source-to-sink path."""
    paths = simple_path_sets(net, guard=guard)
    rel: set[int] = set()
    for p in paths:
        rel |= p
    return frozenset(rel)


def find_directed_cycle(net: FlowNetwork, within: frozenset[int] | None = None) -> tuple[int, ...] | None:
    """A directed cycle among `within` edges (default all), or None.

    Depth-first search with an on-stack marking; returns the edge ids of
    the first cycle closed, in traversal order.
    """
    idx = {v: i for i, v in enumerate(net.nodes)}
    arcs: list[list[tuple[int, int]]] = [[] for _ in net.nodes]
    for e in net.edges:
        if within is not None and e.id not in within:
            continue
        if not e.directed:
            raise DomainError(f"edge {e.id} is undirected; cycle search needs a digraph")
        arcs[idx[e.tail]].append((idx[e.head], e.id))
    color = [0] * len(net.nodes)  # 0 fresh, 1 on stack, 2 done
    stack_nodes: list[int] = []
    stack_edges: list[int] = []

    def visit(u: int) -> tuple[int, ...] | None:
        color[u] = 1
        stack_nodes.append(u)
        for v, eid in arcs[u]:
            if color[v] == 1:
                at = stack_nodes.index(v)
                return tuple(stack_edges[at:] + [eid])
            if color[v] == 0:
                stack_edges.append(eid)
                cyc = visit(v)
                if cyc is not None:
                    return cyc
                stack_edges.pop()
        color[u] = 2
        stack_nodes.pop()
        return None

    for u in range(len(net.nodes)):
        if color[u] == 0:
            cyc = visit(u)
            if cyc is not None:
                return cyc
    return None


def _graph_rank(net: FlowNetwork, edge_ids: frozenset[int], with_terminal_link: bool) -> int:
    """Rank of the edge subset in the cycle matroid of the underlying
    undirected graph, optionally with an extra source-sink link."""
    parent: dict[str, str] = {}

    def find(a: str) -> str:
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rank = 0
    links = [(e.tail, e.head) for e in net.edges if e.id in edge_ids]
    if with_terminal_link:
        links.append((net.source, net.sink))
    for u, v in links:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


def directed_network_domination(
    net: FlowNetwork,
    *,
    require_coherent: bool = False,
    scope: str = "full",
) -> int:
    """Signed domination of the two-terminal connectivity structure of a
    directed network, by closed form.

    If the edges carrying the structure contain a directed cycle the
    value is 0; otherwise the structure is coherent on those edges and
    the value is (-1)^(|E| - rank), rank being that of the edge set plus
    a source-sink link in the cycle matroid of the underlying graph.

    scope selects which edges carry the structure: "full" means all of
    them, so any irrelevant edge (one on no simple source-sink path)
    already forces the value 0; "relevant" first discards irrelevant
    edges and evaluates the reduced, coherent system.  With
    require_coherent=True an irrelevant edge raises instead.
    """
    if scope not in ("full", "relevant"):
        raise DomainError(f"scope must be 'full' or 'relevant', got {scope!r}")
    for e in net.edges:
        if not e.directed:
            raise DomainError(f"edge {e.id} is undirected; closed form needs a digraph")
    rel = relevant_edges(net)
    all_ids = frozenset(net.edge_ids)
    if require_coherent and rel != all_ids:
        missing = sorted(all_ids - rel)
        raise CoherenceError(f"edges {missing} lie on no source-sink path")
    if scope == "full":
        if rel != all_ids:
            return 0
        used = all_ids
    else:
        used = rel
        if not used:
            return 0
    if find_directed_cycle(net, within=used) is not None:
        return 0
    sign_exp = len(used) - _graph_rank(net, used, with_terminal_link=True)
    return 1 if sign_exp % 2 == 0 else -1
