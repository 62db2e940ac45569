import { readFileSync } from 'fs';
import Papa from 'papaparse';

export interface RoundRow {
  algorithm: string;
  seed: number;
  round: number;
  avg_tx_power: number;
  avg_path_cost: number;
  alive_count: number;
}

export interface SummaryRow {
  algorithm: string;
  seed: number;
  lifetime_rounds: number;
}

export interface SurvivalRow {
  round: number;
  algorithm: string;
  surviving_fraction: number;
}

const ROUNDS_COLUMNS = ['algorithm', 'seed', 'round', 'avg_tx_power', 'avg_path_cost', 'alive_count'];
const SUMMARY_COLUMNS = ['algorithm', 'seed', 'lifetime_rounds'];
const SURVIVAL_COLUMNS = ['round', 'algorithm', 'surviving_fraction'];

function parseCsv(path: string, required: string[]): Record<string, string>[] {
  const text = readFileSync(path, 'utf8');
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${path}: ${first.message} (row ${first.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const column of required) {
    if (!fields.includes(column)) {
      throw new Error(`${path}: missing column "${column}"`);
    }
  }
  return parsed.data;
}

function toNumber(path: string, row: Record<string, string>, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`${path}: column "${column}" has non-numeric value "${row[column]}"`);
  }
  return value;
}

export function readRounds(path: string): RoundRow[] {
  return parseCsv(path, ROUNDS_COLUMNS).map((row) => ({
    algorithm: row.algorithm,
    seed: toNumber(path, row, 'seed'),
    round: toNumber(path, row, 'round'),
    avg_tx_power: toNumber(path, row, 'avg_tx_power'),
    avg_path_cost: toNumber(path, row, 'avg_path_cost'),
    alive_count: toNumber(path, row, 'alive_count'),
  }));
}

export function readSummary(path: string): SummaryRow[] {
  return parseCsv(path, SUMMARY_COLUMNS).map((row) => ({
    algorithm: row.algorithm,
    seed: toNumber(path, row, 'seed'),
    lifetime_rounds: toNumber(path, row, 'lifetime_rounds'),
  }));
}

export function readSurvival(path: string): SurvivalRow[] {
  return parseCsv(path, SURVIVAL_COLUMNS).map((row) => ({
    round: toNumber(path, row, 'round'),
    algorithm: row.algorithm,
    surviving_fraction: toNumber(path, row, 'surviving_fraction'),
  }));
}
