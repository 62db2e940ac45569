"""Acceptance suite: quantitative exit criteria at desk scale.

Runs the full paired-seed experiment (50 nodes, 500 m, radius fraction
0.2, 10 J, 32-byte packets, 20 seeds) plus the invariant sweeps, and
prints one PASS/FAIL line per criterion. The desk-scale CSV outputs are
left in tests/_artifacts/acceptance for the figure frontend's smoke
test.
"""
import statistics
from pathlib import Path

import numpy as np
import pytest

from conftest import make_world
from ebtcsim.cli import write_outputs
from ebtcsim.engine import (AlgorithmChoice, build_connected_world, run_batch,
                            run_simulation)
from ebtcsim.linkcost import I_TO_J, J_TO_I, LinkCostInputs, directed_cost, link_lifetime
from ebtcsim.routing import hop_cost, min_energy_path
from ebtcsim.topology import (adjacency_lists, collect_data, construct_local_graph,
                              dlss_reduce, dlss_topology, ebtc_round, is_connected)
from ebtcsim.world import WorldConfig

DESK = WorldConfig(region_width=500.0, node_count=50, initial_energy=10.0,
                   max_radius_fraction=0.2, packet_bytes=32, ack_bytes=11)
SEEDS = list(range(1, 21))
ARTIFACTS = Path(__file__).parent / "_artifacts" / "acceptance"


def report(number, passed, detail):
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
    return passed


@pytest.fixture(scope="module")
def desk_batches():
    batches = {}
    for algorithm in AlgorithmChoice:
        batches[algorithm.value] = run_batch(DESK, algorithm, SEEDS, batch_count=10,
                                             workers=2)
    write_outputs(ARTIFACTS, batches)
    return batches


@pytest.fixture(scope="module")
def desk_medians(desk_batches):
    return {name: statistics.median(r.lifetime_rounds for r in batch.runs)
            for name, batch in desk_batches.items()}


@pytest.fixture(scope="module")
def invariant_sweep():
    """100 random connected 10-30 node instances, every algorithm run to
    death, every per-round snapshot checked."""
    rng = np.random.default_rng(1234)
    violations = []
    snapshots_seen = 0
    records = []

    for _ in range(100):
        n = int(rng.integers(10, 31))
        cfg = WorldConfig(node_count=n, region_width=400.0, max_radius_fraction=0.3,
                          initial_energy=0.02, seed=int(rng.integers(0, 2**32)))
        # the engine rebuilds this world deterministically per algorithm
        _, substrate, _ = build_connected_world(cfg)
        substrate_adj = adjacency_lists(substrate)

        for algorithm in AlgorithmChoice:

            def check(round_no, snapshot, world,
                      n=n, algorithm=algorithm, substrate_adj=substrate_adj):
                nonlocal snapshots_seen
                snapshots_seen += 1
                if not all(a < b for a, b in snapshot.adjacency):
                    violations.append((algorithm.value, round_no, "not normalized"))
                if not is_connected(range(n), snapshot.adjacency):
                    violations.append((algorithm.value, round_no, "disconnected"))
                for i in range(n):
                    counts = snapshot.message_counts[i]
                    degree = len(substrate_adj.get(i, ()))
                    if counts.broadcasts != 3:
                        violations.append((algorithm.value, round_no, "broadcasts"))
                    if counts.payload_entries > 1 + 3 * degree + degree * degree:
                        violations.append((algorithm.value, round_no, "payload"))

            record = run_simulation(cfg, algorithm, cfg.seed, snapshot_hook=check)
            records.append(record)
    return {"violations": violations, "snapshots": snapshots_seen, "records": records}


def test_criterion_1_lifetime_vs_static_baselines(desk_medians):
    ratio_dlss = desk_medians["ebtc"] / desk_medians["dlss"]
    ratio_drng = desk_medians["ebtc"] / desk_medians["drng"]
    ok = ratio_dlss >= 1.5 and ratio_drng >= 1.5
    report(1, ok, f"median EBTC/DLSS = {ratio_dlss:.3f}, EBTC/DRNG = {ratio_drng:.3f} "
                  f"(threshold 1.5; medians {desk_medians})")
    assert ok, (
        f"EBTC/DLSS = {ratio_dlss:.3f} and EBTC/DRNG = {ratio_drng:.3f}; "
        "the 1.5x margin does not hold at this benchmark scale (see notes in README)")


def test_criterion_2_lifetime_vs_wdtc(desk_medians):
    ratio = desk_medians["ebtc"] / desk_medians["wdtc"]
    ok = ratio >= 1.2
    report(2, ok, f"median EBTC/WDTC = {ratio:.3f} (threshold 1.2)")
    assert ok, (
        f"EBTC/WDTC = {ratio:.3f}; the reconstructed WDTC weight balances "
        "as well as EBTC under this energy model (see notes in README)")


def test_criterion_3_connectivity_invariant_suite(invariant_sweep):
    structural = [v for v in invariant_sweep["violations"]
                  if v[2] in ("disconnected", "not normalized")]
    ok = not structural and invariant_sweep["snapshots"] > 0
    report(3, ok, f"{invariant_sweep['snapshots']} snapshots over 100 instances x 4 "
                  f"algorithms, {len(structural)} violations")
    assert ok, structural[:10]


def test_criterion_4_oracle_equivalences():
    rng = np.random.default_rng(9)

    # (a) min-energy routing vs exhaustive enumeration on <= 10-node snapshots
    from test_routing import exhaustive_best_route
    queries = 0
    for _ in range(50):
        n = int(rng.integers(5, 11))
        cfg = WorldConfig(node_count=n, region_width=350.0, max_radius_fraction=0.4,
                          seed=int(rng.integers(0, 2**32)))
        world, graph, _ = build_connected_world(cfg)
        snapshot = ebtc_round(world, graph)
        for _ in range(10):
            s, t = (int(v) for v in rng.choice(n, size=2, replace=False))
            result = min_energy_path(snapshot, s, t, world)
            energy, path = exhaustive_best_route(world, snapshot, s, t)
            assert result.total_energy == pytest.approx(energy, rel=1e-12)
            assert result.path == path
            queries += 1

    # (b) local reduction vs an independent spanning-forest oracle
    from test_topology import kruskal_oracle
    local_checked = 0
    while local_checked < 200:
        n = int(rng.integers(6, 16))
        positions = rng.uniform(0, 300, size=(n, 2))
        world = make_world(positions, region_width=300.0, max_radius_fraction=0.5)
        from ebtcsim.world import max_power_graph
        graph = max_power_graph(world)
        reports = collect_data(world, graph)
        owner = int(rng.choice(sorted(reports)))
        local = construct_local_graph(owner, reports)
        weights = list(local.edges.values())
        if len(set(weights)) != len(weights):
            continue
        assert dlss_reduce(local)[1] == kruskal_oracle(local)
        local_checked += 1

    # (c) cost/lifetime reciprocity at 1e-12 over 10 000 random inputs
    worst = 0.0
    for _ in range(10_000):
        inputs = LinkCostInputs(
            s_i=float(rng.uniform(1e-3, 10.0)), s_j=float(rng.uniform(1e-3, 10.0)),
            e_send_ij_m=float(rng.uniform(1e-6, 1e-4)),
            e_send_ji_m=float(rng.uniform(1e-6, 1e-4)),
            e_send_ij_mp=float(rng.uniform(1e-7, 1e-5)),
            e_send_ji_mp=float(rng.uniform(1e-7, 1e-5)),
            e_recv_m=float(rng.uniform(1e-6, 1e-4)),
            e_recv_mp=float(rng.uniform(1e-7, 1e-5)))
        for direction in (I_TO_J, J_TO_I):
            product = directed_cost(inputs, direction) * link_lifetime(inputs, direction)
            worst = max(worst, abs(product - 1.0))
    assert worst < 1e-12

    report(4, True, f"routing oracle: {queries} queries; local reduction: "
                    f"{local_checked} graphs; reciprocity worst error {worst:.2e}")


def test_criterion_5_equal_energy_degeneracy():
    rng = np.random.default_rng(55)
    mismatches = 0
    for _ in range(50):
        n = int(rng.integers(10, 26))
        cfg = WorldConfig(node_count=n, region_width=450.0, max_radius_fraction=0.3,
                          packet_bytes=32, ack_bytes=32,
                          seed=int(rng.integers(0, 2**32)))
        world, graph, _ = build_connected_world(cfg)
        if ebtc_round(world, graph).adjacency != dlss_topology(world, graph).adjacency:
            mismatches += 1
    ok = mismatches == 0
    report(5, ok, f"50 fresh m == m' instances, {mismatches} edge-set mismatches")
    assert ok


def test_criterion_6_energy_conservation(desk_batches, invariant_sweep):
    gaps = [run.max_conservation_gap
            for batch in desk_batches.values() for run in batch.runs]
    gaps += [record.max_conservation_gap for record in invariant_sweep["records"]]
    worst = max(gaps)
    ok = worst < 1e-9
    report(6, ok, f"worst per-round debit vs routed-cost gap {worst:.2e} "
                  f"over {len(gaps)} runs")
    assert ok


def test_criterion_7_complexity_accounting(invariant_sweep):
    accounting = [v for v in invariant_sweep["violations"]
                  if v[2] in ("broadcasts", "payload")]
    ok = not accounting and invariant_sweep["snapshots"] > 0
    report(7, ok, f"3 broadcasts/node/round and payload within 1 + 3d + d^2 "
                  f"over {invariant_sweep['snapshots']} snapshots")
    assert ok, accounting[:10]


def test_criterion_8_power_climb_soft_check(desk_batches):
    climbing = 0
    for run in desk_batches["ebtc"].runs:
        tail = run.avg_tx_power[3 * run.lifetime_rounds // 4:]
        if statistics.fmean(tail) > run.avg_tx_power[0]:
            climbing += 1
    ok = climbing >= 15
    report(8, ok, f"soft check: EBTC mean transmit power climbs by the last "
                  f"quartile in {climbing}/20 seeds (needs 15; recorded only)")
    # documented soft check: recorded, not hard-failed
