"""Random geometric deployments and the max-power neighbor graph.

A world is a set of sensor nodes placed uniformly at random in a square
region. Every node shares the same maximum transmission radius r_max
(a fraction of the region width); the edges within that radius form the
max-power graph G that all topology-control algorithms reduce.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .radio import RadioParams, send_energy_per_bit


@dataclass(frozen=True)
class WorldConfig:
    region_width: float = 1000.0
    node_count: int = 200
    initial_energy: float = 10.0
    max_radius_fraction: float = 0.2
    seed: int = 0
    radio: RadioParams = field(default_factory=RadioParams)
    packet_bytes: int = 32
    ack_bytes: int = 11

    def __post_init__(self) -> None:
        if not self.region_width > 0.0:
            raise ValueError(f"region_width must be > 0, got {self.region_width!r}")
        if self.node_count < 2:
            raise ValueError(f"node_count must be >= 2, got {self.node_count!r}")
        if not self.initial_energy > 0.0:
            raise ValueError(f"initial_energy must be > 0, got {self.initial_energy!r}")
        if not (0.0 < self.max_radius_fraction <= 1.0):
            raise ValueError(
                f"max_radius_fraction must be in (0, 1], got {self.max_radius_fraction!r}")
        if self.packet_bytes <= 0:
            raise ValueError(f"packet_bytes must be > 0, got {self.packet_bytes!r}")
        if self.ack_bytes <= 0:
            raise ValueError(f"ack_bytes must be > 0, got {self.ack_bytes!r}")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def packet_bits(self) -> int:
        return 8 * self.packet_bytes

    @property
    def ack_bits(self) -> int:
        return 8 * self.ack_bytes


@dataclass
class NodeState:
    """One sensor node: position is fixed, energy and power are mutable."""

    id: int
    position: tuple[float, float]
    residual_energy: float
    assigned_power: float = 0.0
    alive: bool = True


@dataclass(eq=False)
class World:
    config: WorldConfig
    nodes: list[NodeState]
    positions: np.ndarray   # shape (n, 2), row i == nodes[i].position
    distances: np.ndarray   # symmetric, zero diagonal
    r_max: float
    p_max: float

    def alive_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.alive]


def generate_world(config: WorldConfig) -> World:
    """Place node_count nodes uniformly at random in the region square.

    Deterministic for a fixed config: the same seed always yields the
    same positions, all at full initial energy.
    """
    rng = np.random.default_rng(config.seed)
    positions = rng.uniform(0.0, config.region_width, size=(config.node_count, 2))
    deltas = positions[:, None, :] - positions[None, :, :]
    distances = np.sqrt((deltas * deltas).sum(axis=-1))
    nodes = [
        NodeState(id=i, position=(float(x), float(y)), residual_energy=config.initial_energy)
        for i, (x, y) in enumerate(positions)
    ]
    r_max = config.max_radius_fraction * config.region_width
    p_max = send_energy_per_bit(config.radio, r_max)
    return World(config=config, nodes=nodes, positions=positions,
                 distances=distances, r_max=r_max, p_max=p_max)


def min_link_power(world: World, i: int, j: int) -> float:
    """Minimum per-bit transmit power for i and j to talk directly.

    Defined as the per-bit transmit energy at their distance, so power
    ordering and energy ordering over links always agree. Symmetric.
    """
    if i == j:
        raise ValueError(f"min_link_power needs two distinct nodes, got i == j == {i}")
    return send_energy_per_bit(world.config.radio, float(world.distances[i, j]))


def max_power_graph(world: World) -> set[tuple[int, int]]:
    """Edges reachable at maximum power: all pairs with d <= r_max.

    Edges are normalized (i < j) tuples; distance exactly r_max is in.
    """
    i_idx, j_idx = np.nonzero(np.triu(world.distances <= world.r_max, k=1))
    return {(int(a), int(b)) for a, b in zip(i_idx, j_idx)}


def world_checksum(world: World) -> str:
    """Short digest of the deployment, used to assert paired-seed runs."""
    h = hashlib.sha256()
    h.update(world.positions.tobytes())
    h.update(repr((world.config.region_width, world.config.initial_energy)).encode())
    return h.hexdigest()[:16]
