"""Distributed topology-control algorithms.

All algorithms reduce the max-power graph to a sparse symmetric topology
in synchronous phases: every node broadcasts its id and residual energy,
computes weights for its incident edges, broadcasts those so neighbors
can assemble a two-hop local view, runs a local minimum-spanning-forest
reduction (DLSS) over that view, exchanges the retained neighbor sets,
and finally drops any edge that was not retained by both endpoints. Per
node the surviving edges determine its assigned transmit power.

EBTC weights edges by energy-balanced link cost, WDTC by link power
scaled by both endpoints' energy depletion, and the static DLSS baseline
by link power alone. DRNG instead drops an edge whenever a relay node
offers two strictly cheaper hops.

Weight comparisons everywhere use the same total order (weight, then the
larger node id, then the smaller), so independent local decisions stay
globally consistent; without that, tie cases could disconnect the union.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linkcost import LinkCostInputs, edge_weight
from .radio import energy_recv, energy_send
from .world import World, min_link_power

Edge = tuple[int, int]


class WeightMismatchError(RuntimeError):
    """Two reports disagree about a shared edge weight: a protocol bug."""


@dataclass(frozen=True)
class NeighborReport:
    """What one node broadcasts during data collection."""

    sender: int
    residual_energy: float
    neighbor_list: tuple[int, ...]
    weight_list: dict[int, float]


@dataclass
class WeightedLocalGraph:
    """A node's two-hop view: its neighbors, their neighbors, and all
    reported edges among them with weights."""

    owner: int
    vertices: set[int]
    edges: dict[Edge, float]


@dataclass(frozen=True)
class MessageCount:
    broadcasts: int
    payload_entries: int


@dataclass(frozen=True)
class TopologySnapshot:
    round: int
    adjacency: frozenset[Edge]
    node_powers: dict[int, float]
    message_counts: dict[int, MessageCount]


def _edge_key(w: float, a: int, b: int) -> tuple[float, int, int]:
    # Global tie-break: ties in weight resolve by node ids the same way
    # at every node.
    return (w, max(a, b), min(a, b))


def adjacency_lists(edges) -> dict[int, list[int]]:
    """Normalized undirected edge set -> sorted neighbor lists."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for neighbors in adj.values():
        neighbors.sort()
    return adj


def is_connected(node_ids, edges) -> bool:
    """True when every node in node_ids is reachable from the first one."""
    ids = list(node_ids)
    if len(ids) <= 1:
        return True
    adj = adjacency_lists(edges)
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return all(i in seen for i in ids)


class _DisjointSets:
    __slots__ = ("parent", "size")

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


# --- edge weight flavors -------------------------------------------------

def link_cost_inputs(world: World, i: int, j: int) -> LinkCostInputs:
    """Assemble the energy terms of edge (i, j) from current world state."""
    cfg = world.config
    d = float(world.distances[i, j])
    return LinkCostInputs(
        s_i=world.nodes[i].residual_energy,
        s_j=world.nodes[j].residual_energy,
        e_send_ij_m=energy_send(cfg.radio, cfg.packet_bits, d),
        e_send_ji_m=energy_send(cfg.radio, cfg.packet_bits, d),
        e_send_ij_mp=energy_send(cfg.radio, cfg.ack_bits, d),
        e_send_ji_mp=energy_send(cfg.radio, cfg.ack_bits, d),
        e_recv_m=energy_recv(cfg.radio, cfg.packet_bits),
        e_recv_mp=energy_recv(cfg.radio, cfg.ack_bits),
    )


def balanced_edge_weight(world: World, i: int, j: int) -> float:
    """EBTC weight: worst directed depletion rate of the edge."""
    return edge_weight(link_cost_inputs(world, i, j)).w


def power_edge_weight(world: World, i: int, j: int) -> float:
    """Static DLSS weight: minimum link power, energy-blind."""
    return min_link_power(world, i, j)


def wdtc_edge_weight(world: World, i: int, j: int) -> float:
    """WDTC weight: link power scaled by both endpoints' depletion.

    Equals 2x the power ordering on a fresh network and blows up as
    either endpoint drains.
    """
    s0 = world.config.initial_energy
    s_i = world.nodes[i].residual_energy
    s_j = world.nodes[j].residual_energy
    if s_i <= 0.0 or s_j <= 0.0:
        raise ValueError(f"WDTC weight undefined for drained endpoint on edge ({i}, {j})")
    return min_link_power(world, i, j) * (s0 / s_i + s0 / s_j)


# --- synchronous phases ---------------------------------------------------

def collect_data(world: World, graph, weight_fn=balanced_edge_weight) -> dict[int, NeighborReport]:
    """Phase 1: every alive node learns its neighbors and weights its edges.

    Costs each node two broadcasts (id + energy, then weights + neighbor
    list); the snapshot assembly credits them.
    """
    adj = adjacency_lists(graph)
    reports: dict[int, NeighborReport] = {}
    for node in world.nodes:
        if not node.alive:
            continue
        neighbors = tuple(adj.get(node.id, ()))
        weights = {j: weight_fn(world, node.id, j) for j in neighbors}
        reports[node.id] = NeighborReport(
            sender=node.id,
            residual_energy=node.residual_energy,
            neighbor_list=neighbors,
            weight_list=weights,
        )
    return reports


def construct_local_graph(owner: int, reports: dict[int, NeighborReport]) -> WeightedLocalGraph:
    """Phase 2: assemble the owner's two-hop view from neighbor reports.

    Vertices beyond one hop enter only through edges their neighbors
    reported. An edge reported twice must carry the same weight.
    """
    own = reports[owner]
    vertices = {owner, *own.neighbor_list}
    edges: dict[Edge, float] = {}

    def add(a: int, b: int, w: float) -> None:
        key = (a, b) if a < b else (b, a)
        prev = edges.get(key)
        if prev is None:
            edges[key] = w
        elif abs(prev - w) > 1e-9 * max(abs(prev), abs(w)):
            raise WeightMismatchError(
                f"edge {key} reported with inconsistent weights {prev!r} vs {w!r}")

    for j in own.neighbor_list:
        add(owner, j, own.weight_list[j])
    for j in own.neighbor_list:
        for k, w in reports[j].weight_list.items():
            vertices.add(k)
            add(j, k, w)
    return WeightedLocalGraph(owner=owner, vertices=vertices, edges=edges)


def dlss_reduce(local: WeightedLocalGraph) -> tuple[set[int], set[Edge]]:
    """Phase 3: minimum-spanning-forest reduction of the local view.

    Grows a forest in ascending edge order (union-find) and stops as soon
    as the owner's component contains every one-hop neighbor; returns the
    retained neighbor set and the owner-incident edges of the forest.
    Direct edges guarantee every one-hop neighbor is reachable.
    """
    owner = local.owner
    direct = {a if b == owner else b for (a, b) in local.edges if owner in (a, b)}
    dsu = _DisjointSets(local.vertices)
    kept: set[Edge] = set()
    remaining = set(direct)
    for (a, b), w in sorted(local.edges.items(), key=lambda item: _edge_key(item[1], *item[0])):
        if not remaining:
            break
        if dsu.union(a, b):
            if owner in (a, b):
                kept.add((a, b) if a < b else (b, a))
            owner_root = dsu.find(owner)
            remaining = {j for j in remaining if dsu.find(j) != owner_root}
    y = {a if b == owner else b for (a, b) in kept}
    return y, kept


def symmetric_prune(retained: dict[int, set[int]]) -> frozenset[Edge]:
    """Phase 5: keep edge (i, j) only when each endpoint retained the other."""
    edges = set()
    for i, neighbors in retained.items():
        for j in neighbors:
            if i < j and i in retained.get(j, ()):
                edges.add((i, j))
    return frozenset(edges)


def _assemble_snapshot(world: World, graph_adj: dict[int, list[int]],
                       retained: dict[int, set[int]], round_no: int) -> TopologySnapshot:
    pruned = symmetric_prune(retained)
    pruned_adj = adjacency_lists(pruned)
    powers: dict[int, float] = {}
    counts: dict[int, MessageCount] = {}
    for i in retained:
        powers[i] = max((min_link_power(world, i, j) for j in pruned_adj.get(i, ())),
                        default=0.0)
        degree = len(graph_adj.get(i, ()))
        counts[i] = MessageCount(broadcasts=3,
                                 payload_entries=1 + 2 * degree + len(retained[i]))
    return TopologySnapshot(round=round_no, adjacency=pruned,
                            node_powers=powers, message_counts=counts)


def _spanning_round(world: World, graph, weight_fn, round_no: int) -> TopologySnapshot:
    reports = collect_data(world, graph, weight_fn)
    graph_adj = adjacency_lists(graph)
    retained = {i: dlss_reduce(construct_local_graph(i, reports))[0] for i in reports}
    return _assemble_snapshot(world, graph_adj, retained, round_no)


# --- the algorithms -------------------------------------------------------

def ebtc_round(world: World, graph, round_no: int = 1) -> TopologySnapshot:
    """One EBTC round over the current residual energies."""
    return _spanning_round(world, graph, balanced_edge_weight, round_no)


def wdtc_round(world: World, graph, round_no: int = 1) -> TopologySnapshot:
    """One WDTC round: same pipeline, energy-scaled power weights."""
    return _spanning_round(world, graph, wdtc_edge_weight, round_no)


def dlss_topology(world: World, graph, round_no: int = 1) -> TopologySnapshot:
    """Static DLSS baseline: the pipeline on pure power weights."""
    return _spanning_round(world, graph, power_edge_weight, round_no)


def drng_topology(world: World, graph, round_no: int = 1) -> TopologySnapshot:
    """Static DRNG baseline.

    Edge (i, j) is dropped when some relay k makes both hops cheaper
    than the direct link, under the same global tie-break order used by
    the spanning algorithms. The retained sets are mutually symmetric by
    construction, but flow through the shared pruning phase regardless.
    """
    graph_adj = adjacency_lists(graph)
    alive = [n.id for n in world.nodes if n.alive]
    retained: dict[int, set[int]] = {i: set() for i in alive}
    for i in alive:
        for j in graph_adj.get(i, ()):
            key_ij = _edge_key(min_link_power(world, i, j), i, j)
            witnessed = False
            for k in graph_adj.get(i, ()):
                if k == j:
                    continue
                if (_edge_key(min_link_power(world, i, k), i, k) < key_ij
                        and _edge_key(min_link_power(world, k, j), k, j) < key_ij):
                    witnessed = True
                    break
            if not witnessed:
                retained[i].add(j)
    return _assemble_snapshot(world, graph_adj, retained, round_no)
