"""Discrete-round WSN simulator with energy-balanced topology control."""

from .engine import AlgorithmChoice, BatchResult, RunRecord, batch_means_ci, run_batch, run_simulation
from .linkcost import EdgeWeight, LinkCostInputs, directed_cost, edge_weight, link_lifetime
from .radio import RadioParams, energy_recv, energy_send
from .routing import HopCost, RouteResult, apply_round_traffic, hop_cost, min_energy_path
from .topology import (
    TopologySnapshot,
    WeightedLocalGraph,
    collect_data,
    construct_local_graph,
    dlss_reduce,
    dlss_topology,
    drng_topology,
    ebtc_round,
    symmetric_prune,
    wdtc_round,
)
from .world import NodeState, World, WorldConfig, generate_world, max_power_graph, min_link_power

__all__ = [
    "AlgorithmChoice", "BatchResult", "RunRecord", "batch_means_ci", "run_batch",
    "run_simulation", "EdgeWeight", "LinkCostInputs", "directed_cost", "edge_weight",
    "link_lifetime", "RadioParams", "energy_recv", "energy_send", "HopCost",
    "RouteResult", "apply_round_traffic", "hop_cost", "min_energy_path",
    "TopologySnapshot", "WeightedLocalGraph", "collect_data", "construct_local_graph",
    "dlss_reduce", "dlss_topology", "drng_topology", "ebtc_round", "symmetric_prune",
    "wdtc_round", "NodeState", "World", "WorldConfig", "generate_world",
    "max_power_graph", "min_link_power",
]

__version__ = "0.1.0"
