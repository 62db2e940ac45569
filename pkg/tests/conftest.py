"""Shared helpers for building worlds with hand-placed geometry."""
from __future__ import annotations

import numpy as np

from ebtcsim.radio import RadioParams, send_energy_per_bit
from ebtcsim.world import NodeState, World, WorldConfig


def make_world(positions, *, region_width=1000.0, initial_energy=10.0,
               max_radius_fraction=0.2, packet_bytes=32, ack_bytes=11,
               radio=None, energies=None) -> World:
    """World with explicit node positions instead of random placement."""
    positions = np.asarray(positions, dtype=float)
    config = WorldConfig(region_width=region_width, node_count=len(positions),
                         initial_energy=initial_energy,
                         max_radius_fraction=max_radius_fraction, seed=0,
                         radio=radio or RadioParams(),
                         packet_bytes=packet_bytes, ack_bytes=ack_bytes)
    deltas = positions[:, None, :] - positions[None, :, :]
    distances = np.sqrt((deltas * deltas).sum(axis=-1))
    if energies is None:
        energies = [initial_energy] * len(positions)
    nodes = [NodeState(id=i, position=(float(x), float(y)), residual_energy=float(e))
             for i, ((x, y), e) in enumerate(zip(positions, energies))]
    r_max = config.max_radius_fraction * config.region_width
    return World(config=config, nodes=nodes, positions=positions, distances=distances,
                 r_max=r_max, p_max=send_energy_per_bit(config.radio, r_max))
