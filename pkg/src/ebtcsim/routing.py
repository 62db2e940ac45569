"""Minimum-energy routing and the per-round all-pairs traffic workload.

Every round, each node sends one data packet to every other node along
the path that minimizes total drained energy. A hop from u to v debits
the sender for the data transmission plus the received ACK, and the
receiver for the received data plus the transmitted ACK. Hop costs
depend only on geometry and packet sizes, never on residual energy, so
routes are a pure function of the topology snapshot.

Ties between equal-energy routes resolve to the lexicographically
smallest node-id sequence. Dijkstra labels therefore carry (cost, path)
pairs: the first time a node is popped, its label is minimal in that
combined order, and prefixes of minimal labels are themselves minimal,
so the per-source routes form a tree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush

from .topology import TopologySnapshot, adjacency_lists
from .world import World
from .radio import energy_recv, energy_send


@dataclass(frozen=True)
class HopCost:
    sender_debit: float    # data out + ACK in
    receiver_debit: float  # data in + ACK out
    total: float


@dataclass(frozen=True)
class RouteResult:
    path: tuple[int, ...]
    total_energy: float
    found: bool


@dataclass(frozen=True)
class TrafficReport:
    first_dead: int | None
    deaths: tuple[int, ...]
    energy_spent: dict[int, float]
    total_route_energy: float
    unreachable_pairs: int
    deficits: dict[int, float]


@dataclass
class RoundRoutes:
    """All-pairs routing state for one snapshot: per-source parent trees,
    per-edge hop costs, and the per-node debit of a full traffic round."""

    alive: tuple[int, ...]
    parents: dict[int, dict[int, int | None]]
    hop_costs: dict[tuple[int, int], HopCost]
    debits: dict[int, float]
    total_route_energy: float
    reachable_pairs: int
    unreachable_pairs: int
    avg_path_cost: float


def hop_cost(world: World, i: int, j: int) -> HopCost:
    """Energy drained on both ends by one data packet over hop i -> j."""
    cfg = world.config
    d = float(world.distances[i, j])
    sender = energy_send(cfg.radio, cfg.packet_bits, d) + energy_recv(cfg.radio, cfg.ack_bits)
    receiver = energy_recv(cfg.radio, cfg.packet_bits) + energy_send(cfg.radio, cfg.ack_bits, d)
    return HopCost(sender_debit=sender, receiver_debit=receiver, total=sender + receiver)


def _snapshot_hop_costs(world: World, snapshot: TopologySnapshot) -> dict[tuple[int, int], HopCost]:
    costs: dict[tuple[int, int], HopCost] = {}
    for a, b in snapshot.adjacency:
        c = hop_cost(world, a, b)
        costs[(a, b)] = c
        costs[(b, a)] = c  # same distance and sizes in both directions
    return costs


def _sssp(adj, costs, source):
    """Dijkstra with (cost, path) labels; returns dist, parent, pop order."""
    dist: dict[int, float] = {}
    parent: dict[int, int | None] = {}
    order: list[int] = []
    heap: list[tuple[float, tuple[int, ...], int]] = [(0.0, (source,), source)]
    while heap:
        d, path, u = heappop(heap)
        if u in dist:
            continue
        dist[u] = d
        parent[u] = path[-2] if len(path) > 1 else None
        order.append(u)
        for v in adj.get(u, ()):
            if v not in dist:
                heappush(heap, (d + costs[(u, v)].total, path + (v,), v))
    return dist, parent, order


def min_energy_path(snapshot: TopologySnapshot, source: int, dest: int,
                    world: World) -> RouteResult:
    """Cheapest route from source to dest on the snapshot.

    found is False exactly when dest is unreachable.
    """
    if source == dest:
        raise ValueError(f"source and destination must differ, both are {source}")
    for node_id in (source, dest):
        if not world.nodes[node_id].alive:
            raise ValueError(f"node {node_id} is dead; no route involves it")
    adj = adjacency_lists(snapshot.adjacency)
    costs = _snapshot_hop_costs(world, snapshot)
    seen: set[int] = set()
    heap: list[tuple[float, tuple[int, ...], int]] = [(0.0, (source,), source)]
    while heap:
        d, path, u = heappop(heap)
        if u in seen:
            continue
        if u == dest:
            return RouteResult(path=path, total_energy=d, found=True)
        seen.add(u)
        for v in adj.get(u, ()):
            if v not in seen:
                heappush(heap, (d + costs[(u, v)].total, path + (v,), v))
    return RouteResult(path=(), total_energy=math.inf, found=False)


def compute_round_routes(world: World, snapshot: TopologySnapshot) -> RoundRoutes:
    """Route the full round's traffic once: trees, pair costs, node debits.

    Per source, the number of packets crossing a tree edge equals the
    number of destinations in the subtree below it, which turns the
    all-pairs workload into one subtree count per edge. Debits accumulate
    in ascending source order.
    """
    alive = tuple(sorted(world.alive_ids()))
    adj = adjacency_lists(snapshot.adjacency)
    costs = _snapshot_hop_costs(world, snapshot)
    debits = {i: 0.0 for i in alive}
    parents: dict[int, dict[int, int | None]] = {}
    total = 0.0
    reachable = 0
    unreachable = 0
    for s in alive:
        dist, parent, order = _sssp(adj, costs, s)
        parents[s] = parent
        count = {u: 1 for u in order}
        for u in reversed(order):
            if u == s:
                continue
            p = parent[u]
            hop = costs[(p, u)]
            debits[p] += count[u] * hop.sender_debit
            debits[u] += count[u] * hop.receiver_debit
            if p != s:
                count[p] += count[u]
        total += sum(dist.values())
        reachable += len(dist) - 1
        unreachable += len(alive) - len(dist)
    avg = total / reachable if reachable else 0.0
    return RoundRoutes(alive=alive, parents=parents, hop_costs=costs, debits=debits,
                       total_route_energy=total, reachable_pairs=reachable,
                       unreachable_pairs=unreachable, avg_path_cost=avg)


def apply_round_traffic(world: World, snapshot: TopologySnapshot,
                        routes: RoundRoutes | None = None) -> TrafficReport:
    """Send one packet per ordered alive pair and debit both ends of every hop.

    Routes come from the snapshot as it stood at the start of the round
    and are never recomputed mid-round. In the common case no node dies
    and each node's accumulated round debit is applied in one step. When
    the round is fatal, the pairs are replayed hop by hop in ascending
    (source, destination) order to attribute which node died first;
    deaths clamp residual energy at zero and the pre-clamp deficit is
    reported. Unreachable pairs are counted, not routed.
    """
    if routes is None:
        routes = compute_round_routes(world, snapshot)
    alive = routes.alive
    fatal = any(world.nodes[i].residual_energy - routes.debits[i] <= 0.0 for i in alive)
    if not fatal:
        for i in alive:
            world.nodes[i].residual_energy -= routes.debits[i]
        return TrafficReport(first_dead=None, deaths=(), energy_spent=dict(routes.debits),
                             total_route_energy=routes.total_route_energy,
                             unreachable_pairs=routes.unreachable_pairs, deficits={})

    residual = {i: world.nodes[i].residual_energy for i in alive}
    spent = {i: 0.0 for i in alive}
    death_order: list[int] = []
    dead: set[int] = set()

    def debit(node: int, amount: float) -> None:
        residual[node] -= amount
        spent[node] += amount
        if residual[node] <= 0.0 and node not in dead:
            dead.add(node)
            death_order.append(node)

    for s in alive:
        parent = routes.parents[s]
        for t in alive:
            if t == s or t not in parent:
                continue
            rev = [t]
            while rev[-1] != s:
                rev.append(parent[rev[-1]])
            for idx in range(len(rev) - 1, 0, -1):
                a, b = rev[idx], rev[idx - 1]
                hop = routes.hop_costs[(a, b)]
                debit(a, hop.sender_debit)
                debit(b, hop.receiver_debit)

    deficits: dict[int, float] = {}
    for i in alive:
        node = world.nodes[i]
        node.residual_energy = max(residual[i], 0.0)
        if i in dead:
            node.alive = False
            deficits[i] = -min(residual[i], 0.0)
    return TrafficReport(first_dead=death_order[0] if death_order else None,
                         deaths=tuple(death_order), energy_spent=spent,
                         total_route_energy=routes.total_route_energy,
                         unreachable_pairs=routes.unreachable_pairs, deficits=deficits)
