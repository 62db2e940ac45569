import { RoundRow, SummaryRow, SurvivalRow } from './csv.js';

/** Algorithms whose topology is fixed at round 1. Their power and
 * path-cost series are only meaningful until the first seed dies, so the
 * charts truncate them there; dynamic algorithms keep reporting with a
 * shrinking seed pool. */
const STATIC_ALGORITHMS = new Set(['dlss', 'drng']);

export interface Series {
  algorithm: string;
  rounds: number[];
  values: number[];
}

function mean(values: number[]): number {
  let total = 0;
  for (const v of values) total += v;
  return total / values.length;
}

/** Per-round cross-seed averages of one rounds.csv column. A seed
 * contributes to round r only while its run is alive, which is exactly
 * the set of rows present in the file. */
export function perRoundAverages(
  rounds: RoundRow[],
  summary: SummaryRow[],
  column: 'avg_tx_power' | 'avg_path_cost',
): Series[] {
  const byAlgorithm = new Map<string, Map<number, number[]>>();
  for (const row of rounds) {
    let perRound = byAlgorithm.get(row.algorithm);
    if (!perRound) {
      perRound = new Map();
      byAlgorithm.set(row.algorithm, perRound);
    }
    let bucket = perRound.get(row.round);
    if (!bucket) {
      bucket = [];
      perRound.set(row.round, bucket);
    }
    bucket.push(row[column]);
  }

  const firstDeath = new Map<string, number>();
  for (const row of summary) {
    const current = firstDeath.get(row.algorithm);
    if (current === undefined || row.lifetime_rounds < current) {
      firstDeath.set(row.algorithm, row.lifetime_rounds);
    }
  }

  const result: Series[] = [];
  for (const algorithm of [...byAlgorithm.keys()].sort()) {
    const perRound = byAlgorithm.get(algorithm)!;
    let roundNumbers = [...perRound.keys()].sort((a, b) => a - b);
    if (STATIC_ALGORITHMS.has(algorithm)) {
      const cutoff = firstDeath.get(algorithm);
      if (cutoff !== undefined) {
        roundNumbers = roundNumbers.filter((r) => r <= cutoff);
      }
    }
    result.push({
      algorithm,
      rounds: roundNumbers,
      values: roundNumbers.map((r) => mean(perRound.get(r)!)),
    });
  }
  return result;
}

/** Survival curves come precomputed; just split them per algorithm. */
export function survivalSeries(survival: SurvivalRow[]): Series[] {
  const byAlgorithm = new Map<string, SurvivalRow[]>();
  for (const row of survival) {
    const bucket = byAlgorithm.get(row.algorithm);
    if (bucket) {
      bucket.push(row);
    } else {
      byAlgorithm.set(row.algorithm, [row]);
    }
  }
  const result: Series[] = [];
  for (const algorithm of [...byAlgorithm.keys()].sort()) {
    const rows = byAlgorithm.get(algorithm)!.slice().sort((a, b) => a.round - b.round);
    result.push({
      algorithm,
      rounds: rows.map((r) => r.round),
      values: rows.map((r) => r.surviving_fraction),
    });
  }
  return result;
}
