"""Round-driven simulation runs, seeded batches, and output statistics.

A run drives one deployment to network death: each round the topology is
rebuilt (dynamic algorithms) or reused (static ones), per-round metrics
are recorded pre-traffic, and the all-pairs workload is applied. The run
ends at the first round in which any node's residual energy reaches
zero; that fatal round counts toward the lifetime (1-based).
"""
from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy import stats

from .radio import energy_send
from .routing import apply_round_traffic, compute_round_routes
from .topology import (dlss_topology, drng_topology, ebtc_round, is_connected,
                       wdtc_round)
from .world import World, WorldConfig, generate_world, max_power_graph, world_checksum


class AlgorithmChoice(Enum):
    EBTC = "ebtc"
    WDTC = "wdtc"
    DLSS = "dlss"
    DRNG = "drng"

    @property
    def dynamic(self) -> bool:
        """Dynamic algorithms recompute topology every round."""
        return self in (AlgorithmChoice.EBTC, AlgorithmChoice.WDTC)

    @classmethod
    def parse(cls, name: str) -> "AlgorithmChoice":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown algorithm {name!r}; expected one of: {valid}") from None


_TOPOLOGY_FN = {
    AlgorithmChoice.EBTC: ebtc_round,
    AlgorithmChoice.WDTC: wdtc_round,
    AlgorithmChoice.DLSS: dlss_topology,
    AlgorithmChoice.DRNG: drng_topology,
}


@dataclass
class RunRecord:
    algorithm: str
    seed: int
    lifetime_rounds: int
    avg_tx_power: list[float]
    avg_path_cost: list[float]
    alive_count: list[int]
    discarded_disconnected_seeds: int
    world_checksum: str
    first_dead_node: int | None
    max_conservation_gap: float
    control_energy_per_round: float


@dataclass
class BatchResult:
    runs: list[RunRecord]
    survival_curve: list[float]
    ci_halfwidth: dict[str, float]


def _redraw_seed(base_seed: int, attempt: int) -> int:
    return int(np.random.SeedSequence((base_seed, attempt)).generate_state(1, np.uint64)[0])


def build_connected_world(config: WorldConfig, max_redraws: int = 1000):
    """Generate a world, redrawing deterministically until G is connected.

    Returns (world, max-power edge set, number of discarded seeds).
    """
    for attempt in range(max_redraws + 1):
        cfg = config if attempt == 0 else replace(config, seed=_redraw_seed(config.seed, attempt))
        world = generate_world(cfg)
        graph = max_power_graph(world)
        if is_connected(range(cfg.node_count), graph):
            return world, graph, attempt
    raise RuntimeError(
        f"no connected deployment within {max_redraws} redraws of seed {config.seed}")


def run_simulation(config: WorldConfig, algorithm: AlgorithmChoice, seed: int, *,
                   debit_control_energy: bool = False,
                   snapshot_hook=None) -> RunRecord:
    """Drive one seeded deployment to network death.

    Fully deterministic for a given (config, algorithm, seed). The
    optional snapshot_hook(round_no, snapshot, world) fires after each
    round's topology is in place, before traffic.
    """
    base = replace(config, seed=seed)
    world, graph, discarded = build_connected_world(base)
    checksum = world_checksum(world)
    topology_fn = _TOPOLOGY_FN[algorithm]

    control_cost = 0.0
    if debit_control_energy:
        # Three control broadcasts per node per round, sent at max power.
        control_cost = 3.0 * energy_send(config.radio, config.packet_bits, world.r_max)

    avg_tx_power: list[float] = []
    avg_path_cost: list[float] = []
    alive_count: list[int] = []
    snapshot = None
    routes = None
    routed_edges = None
    max_gap = 0.0
    round_no = 0
    while True:
        round_no += 1
        if snapshot is None or algorithm.dynamic:
            snapshot = topology_fn(world, graph, round_no)
            for i, p in snapshot.node_powers.items():
                world.nodes[i].assigned_power = p
        if snapshot_hook is not None:
            snapshot_hook(round_no, snapshot, world)
        if routed_edges != snapshot.adjacency:
            # Hop costs ignore residual energy, so routes only change
            # when the adjacency does.
            routes = compute_round_routes(world, snapshot)
            routed_edges = snapshot.adjacency

        alive = world.alive_ids()
        avg_tx_power.append(sum(snapshot.node_powers[i] for i in alive) / len(alive))
        avg_path_cost.append(routes.avg_path_cost)
        alive_count.append(len(alive))

        control_deaths: list[int] = []
        if control_cost:
            for i in alive:
                node = world.nodes[i]
                node.residual_energy -= control_cost
                if node.residual_energy <= 0.0:
                    node.residual_energy = 0.0
                    node.alive = False
                    control_deaths.append(i)

        report = apply_round_traffic(world, snapshot, routes)
        drained = sum(report.energy_spent.values())
        if report.total_route_energy > 0.0:
            max_gap = max(max_gap, abs(drained - report.total_route_energy)
                          / report.total_route_energy)

        deaths = control_deaths + [d for d in report.deaths if d not in control_deaths]
        if deaths:
            return RunRecord(
                algorithm=algorithm.value, seed=seed, lifetime_rounds=round_no,
                avg_tx_power=avg_tx_power, avg_path_cost=avg_path_cost,
                alive_count=alive_count, discarded_disconnected_seeds=discarded,
                world_checksum=checksum, first_dead_node=deaths[0],
                max_conservation_gap=max_gap, control_energy_per_round=control_cost)


def _run_for_batch(args) -> RunRecord:
    config, algorithm, seed, debit = args
    try:
        return run_simulation(config, algorithm, seed, debit_control_energy=debit)
    except Exception as exc:
        raise RuntimeError(f"run failed for seed {seed}: {exc}") from exc


def run_batch(config: WorldConfig, algorithm: AlgorithmChoice, seeds, *,
              batch_count: int | None = None, workers: int = 1,
              debit_control_energy: bool = False) -> BatchResult:
    """Independent runs over a seed list, merged in seed order.

    The result is identical whether runs execute serially or across
    worker processes. Confidence intervals (relative halfwidths) are
    computed per statistic when batch_count is given and the seed count
    splits evenly into batches of at least two runs.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("run_batch needs at least one seed")
    jobs = [(config, algorithm, s, debit_control_energy) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_for_batch, jobs))
    else:
        runs = [_run_for_batch(job) for job in jobs]

    curve = survival_curve([r.lifetime_rounds for r in runs])
    ci: dict[str, float] = {}
    if batch_count is not None:
        series = {
            "lifetime_rounds": [float(r.lifetime_rounds) for r in runs],
            "avg_tx_power": [statistics.fmean(r.avg_tx_power) for r in runs],
            "avg_path_cost": [statistics.fmean(r.avg_path_cost) for r in runs],
        }
        for name, values in series.items():
            mean, halfwidth = batch_means_ci(values, batch_count)
            ci[name] = halfwidth / abs(mean) if mean else math.inf
    return BatchResult(runs=runs, survival_curve=curve, ci_halfwidth=ci)


def survival_curve(lifetimes) -> list[float]:
    """Fraction of runs with lifetime > r, for r = 0 .. max lifetime."""
    lifetimes = list(lifetimes)
    horizon = max(lifetimes)
    n = len(lifetimes)
    return [sum(1 for life in lifetimes if life > r) / n for r in range(horizon + 1)]


def batch_means_ci(samples, batch_count: int) -> tuple[float, float]:
    """95% t-interval over consecutive-batch means.

    Samples are split in order into batch_count equal batches of at
    least two; the halfwidth uses batch_count - 1 degrees of freedom.
    """
    samples = list(samples)
    n = len(samples)
    if batch_count < 2:
        raise ValueError(f"batch_count must be >= 2, got {batch_count}")
    if n % batch_count != 0 or n // batch_count < 2:
        raise ValueError(
            f"{n} samples do not divide into {batch_count} batches of >= 2 samples")
    size = n // batch_count
    means = [statistics.fmean(samples[k * size:(k + 1) * size]) for k in range(batch_count)]
    grand = statistics.fmean(means)
    sd = statistics.stdev(means)
    halfwidth = float(stats.t.ppf(0.975, batch_count - 1)) * sd / math.sqrt(batch_count)
    return grand, halfwidth
