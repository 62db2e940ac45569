"""Experiment configuration, orchestration commands, and CSV output.

Commands:
  run           one algorithm over a seeded batch
  compare       several algorithms over the same seeds (paired worlds)
  print-config  show the effective configuration after file and flags

Configuration comes from a flat key = value file (or a .json file with
the same keys); command-line flags override file values. All results are
written as CSV: rounds.csv (per-round series), summary.csv (lifetimes),
survival.csv (fraction of runs alive per round).
"""
from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .engine import AlgorithmChoice, BatchResult, run_batch
from .radio import RadioParams
from .world import WorldConfig

ALGORITHM_NAMES = tuple(a.value for a in AlgorithmChoice)

ROUNDS_HEADER = ["algorithm", "seed", "round", "avg_tx_power", "avg_path_cost", "alive_count"]
SUMMARY_HEADER = ["algorithm", "seed", "lifetime_rounds"]
SURVIVAL_HEADER = ["round", "algorithm", "surviving_fraction"]


@dataclass(frozen=True)
class ExperimentConfig:
    region_width: float = 1000.0
    node_count: int = 200
    initial_energy: float = 10.0
    max_radius_fraction: float = 0.2
    packet_bytes: int = 32
    ack_bytes: int = 11
    e_elec: float = 50e-9
    eps_fs: float = 10e-12
    eps_mp: float = 0.0013e-12
    algorithms: tuple[str, ...] = ALGORITHM_NAMES
    seed_base: int = 1
    seed_count: int = 200
    seed_list: tuple[int, ...] | None = None
    batch_count: int = 10
    out_dir: str = "results"
    debit_control_energy: bool = False

    def __post_init__(self) -> None:
        if not self.algorithms:
            raise ValueError("algorithms must list at least one algorithm")
        for name in self.algorithms:
            AlgorithmChoice.parse(name)
        if self.seed_list is not None and len(self.seed_list) == 0:
            raise ValueError("seed_list must not be empty when given")
        if self.seed_list is None and self.seed_count < 1:
            raise ValueError(f"seed_count must be >= 1, got {self.seed_count}")
        if self.batch_count < 0:
            raise ValueError(f"batch_count must be >= 0, got {self.batch_count}")
        if self.batch_count > 0 and len(self.seeds()) < 2:
            raise ValueError("confidence intervals need at least 2 seeds; "
                             "set batch_count = 0 to disable them")
        self.world_config()  # validates the world-level fields

    def seeds(self) -> list[int]:
        if self.seed_list is not None:
            return list(self.seed_list)
        return [self.seed_base + k for k in range(self.seed_count)]

    def radio(self) -> RadioParams:
        return RadioParams(e_elec=self.e_elec, eps_fs=self.eps_fs, eps_mp=self.eps_mp)

    def world_config(self) -> WorldConfig:
        # seed is a placeholder; the engine substitutes each batch seed.
        return WorldConfig(region_width=self.region_width, node_count=self.node_count,
                           initial_energy=self.initial_energy,
                           max_radius_fraction=self.max_radius_fraction,
                           seed=0, radio=self.radio(),
                           packet_bytes=self.packet_bytes, ack_bytes=self.ack_bytes)


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "1", "yes", "on"):
        return True
    if text in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _parse_algorithms(value) -> tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        names = [str(v) for v in value]
    else:
        names = str(value).split(",")
    return tuple(AlgorithmChoice.parse(n).value for n in names if n.strip())


def _parse_int_list(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(v) for v in str(value).split(",") if v.strip())


# config key -> (ExperimentConfig attribute, converter)
_CONFIG_KEYS = {
    "width": ("region_width", float),
    "nodes": ("node_count", int),
    "energy": ("initial_energy", float),
    "radius_frac": ("max_radius_fraction", float),
    "packet_bytes": ("packet_bytes", int),
    "ack_bytes": ("ack_bytes", int),
    "e_elec": ("e_elec", float),
    "eps_fs": ("eps_fs", float),
    "eps_mp": ("eps_mp", float),
    "algorithms": ("algorithms", _parse_algorithms),
    "seed_base": ("seed_base", int),
    "seeds": ("seed_count", int),
    "seed_list": ("seed_list", _parse_int_list),
    "batch_count": ("batch_count", int),
    "out": ("out_dir", str),
    "debit_control_energy": ("debit_control_energy", _parse_bool),
}


def _read_flat_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def parse_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Build an ExperimentConfig from defaults, an optional file, and overrides.

    Overrides (typically command-line flags) beat file values, which beat
    defaults. Unknown keys and out-of-range values raise a ValueError
    naming the offending field.
    """
    fields: dict = {}
    if path is not None:
        file_path = Path(path)
        if not file_path.exists():
            raise ValueError(f"config file not found: {file_path}")
        if file_path.suffix == ".json":
            raw = json.loads(file_path.read_text())
            if not isinstance(raw, dict):
                raise ValueError(f"{file_path}: top-level JSON value must be an object")
        else:
            raw = _read_flat_file(file_path)
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r} in {file_path}")
            attr, convert = _CONFIG_KEYS[key]
            try:
                fields[attr] = convert(value)
            except ValueError as exc:
                raise ValueError(f"config key {key!r}: {exc}") from None
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        attr, convert = _CONFIG_KEYS[key]
        fields[attr] = convert(value)
    return ExperimentConfig(**fields)


def emit_config(config: ExperimentConfig) -> str:
    """Render a config as the flat file format; parse_config round-trips it."""
    lines = []
    for key, (attr, _) in _CONFIG_KEYS.items():
        value = getattr(config, attr)
        if value is None:
            continue
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, (tuple, list)):
            text = ",".join(str(v) for v in value)
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def write_outputs(out_dir: Path, batches: dict[str, BatchResult]) -> list[Path]:
    """Write rounds.csv, summary.csv and survival.csv; returns written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        rounds_rows = []
        summary_rows = []
        survival_rows = []
        for name in sorted(batches):
            batch = batches[name]
            for run in sorted(batch.runs, key=lambda r: r.seed):
                summary_rows.append([name, run.seed, run.lifetime_rounds])
                for idx in range(run.lifetime_rounds):
                    rounds_rows.append([name, run.seed, idx + 1,
                                        run.avg_tx_power[idx], run.avg_path_cost[idx],
                                        run.alive_count[idx]])
            for round_no, fraction in enumerate(batch.survival_curve):
                survival_rows.append([round_no, name, fraction])

        path = out_dir / "rounds.csv"
        written.append(path)
        _write_csv(path, ROUNDS_HEADER, rounds_rows)
        path = out_dir / "summary.csv"
        written.append(path)
        _write_csv(path, SUMMARY_HEADER, summary_rows)
        path = out_dir / "survival.csv"
        written.append(path)
        _write_csv(path, SURVIVAL_HEADER, survival_rows)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def _effective_batch_count(n_seeds: int, requested: int) -> int | None:
    if requested <= 0:
        return None
    if n_seeds % requested == 0 and n_seeds // requested >= 2:
        return requested
    return None


def run_compare(config: ExperimentConfig) -> int:
    """Run every configured algorithm over the shared seed list and write CSVs."""
    seeds = config.seeds()
    world_cfg = config.world_config()
    batch_count = _effective_batch_count(len(seeds), config.batch_count)

    print("effective configuration:")
    print(emit_config(config), end="")
    print(f"note: ACK size is {config.ack_bytes} bytes "
          f"(data packets are {config.packet_bytes} bytes)")
    if config.batch_count > 0 and batch_count is None:
        print(f"note: {len(seeds)} seeds do not divide into {config.batch_count} "
              "batches of >= 2; confidence intervals skipped")

    batches: dict[str, BatchResult] = {}
    checksums: list[str] | None = None
    for name in dict.fromkeys(config.algorithms):
        algorithm = AlgorithmChoice.parse(name)
        batch = run_batch(world_cfg, algorithm, seeds, batch_count=batch_count,
                          debit_control_energy=config.debit_control_energy)
        sums = [run.world_checksum for run in batch.runs]
        if checksums is None:
            checksums = sums
        elif sums != checksums:
            raise RuntimeError("paired comparison compromised: algorithms saw "
                               "different worlds for the same seeds")
        batches[name] = batch
        print(f"finished {name}: median lifetime "
              f"{statistics.median(r.lifetime_rounds for r in batch.runs):g} rounds")

    written = write_outputs(Path(config.out_dir), batches)

    print()
    print(f"{'algorithm':<10} {'median_lifetime':>16} {'mean_lifetime':>14} {'ci95':>8}")
    medians = {}
    for name, batch in batches.items():
        lifetimes = [r.lifetime_rounds for r in batch.runs]
        medians[name] = statistics.median(lifetimes)
        ci = batch.ci_halfwidth.get("lifetime_rounds")
        ci_text = f"±{100 * ci:.1f}%" if ci is not None else "n/a"
        print(f"{name:<10} {medians[name]:>16g} {statistics.fmean(lifetimes):>14.1f} {ci_text:>8}")
    if "ebtc" in medians:
        for other in medians:
            if other != "ebtc" and medians[other] > 0:
                print(f"median lifetime ratio ebtc/{other}: "
                      f"{medians['ebtc'] / medians[other]:.2f}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ebtcsim",
        description="Energy-balanced topology control lifetime experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, helptext in (("run", "run a single algorithm"),
                              ("compare", "run several algorithms on paired seeds"),
                              ("print-config", "print the effective configuration")):
        p = sub.add_parser(command, help=helptext)
        p.add_argument("--config", help="path to a flat key=value (or .json) config file")
        p.add_argument("--nodes", type=int, help="number of sensor nodes")
        p.add_argument("--width", type=float, help="region width in meters")
        p.add_argument("--energy", type=float, help="initial energy per node in joules")
        p.add_argument("--radius-frac", type=float, dest="radius_frac",
                       help="max transmission radius as a fraction of the width")
        p.add_argument("--packet-bytes", type=int, dest="packet_bytes")
        p.add_argument("--ack-bytes", type=int, dest="ack_bytes")
        p.add_argument("--seeds", type=int, help="number of seeds (seed_base, seed_base+1, ...)")
        p.add_argument("--seed-base", type=int, dest="seed_base")
        p.add_argument("--algorithms", help="comma-separated list: ebtc,wdtc,dlss,drng")
        p.add_argument("--out", help="output directory for the CSV files")
        p.add_argument("--debit-control-energy", action="store_const", const=True,
                       dest="debit_control_energy",
                       help="charge the three per-round control broadcasts at max power")
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict:
    keys = ("nodes", "width", "energy", "radius_frac", "packet_bytes", "ack_bytes",
            "seeds", "seed_base", "algorithms", "out", "debit_control_energy")
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = parse_config(args.config, _overrides_from_args(args))
        if args.command == "print-config":
            print(emit_config(config), end="")
            return 0
        if args.command == "run" and len(set(config.algorithms)) != 1:
            raise ValueError("the run command expects exactly one algorithm; "
                             "use compare for several")
        return run_compare(config)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
