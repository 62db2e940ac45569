#!/usr/bin/env node
import { mkdirSync, writeFileSync } from 'fs';
import { join } from 'path';
import { pathToFileURL } from 'url';
import { perRoundAverages, survivalSeries } from './aggregate.js';
import { ChartKind, renderChartSvg } from './charts.js';
import { readRounds, readSummary, readSurvival } from './csv.js';

interface Options {
  inDir: string;
  outDir: string;
  format: 'png' | 'svg';
}

export function parseArgs(argv: string[]): Options {
  let inDir: string | undefined;
  let outDir: string | undefined;
  let format: 'png' | 'svg' = 'svg';
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    if (flag === '--in') inDir = argv[++i];
    else if (flag === '--out') outDir = argv[++i];
    else if (flag === '--format') {
      const value = argv[++i];
      if (value !== 'png' && value !== 'svg') {
        throw new Error(`--format must be png or svg, got "${value}"`);
      }
      format = value;
    } else {
      throw new Error(`unknown argument "${flag}" (expected --in, --out, --format)`);
    }
  }
  if (!inDir || !outDir) {
    throw new Error('usage: make-figures --in <csv dir> --out <image dir> [--format png|svg]');
  }
  return { inDir, outDir, format };
}

async function toPng(svg: string): Promise<Buffer> {
  let Resvg;
  try {
    ({ Resvg } = await import('@resvg/resvg-js'));
  } catch {
    throw new Error('png output needs the optional @resvg/resvg-js dependency; ' +
      'install it or use --format svg');
  }
  return new Resvg(svg, { fitTo: { mode: 'width', value: 1200 } }).render().asPng();
}

export async function main(argv: string[]): Promise<string[]> {
  const options = parseArgs(argv);
  const rounds = readRounds(join(options.inDir, 'rounds.csv'));
  const summary = readSummary(join(options.inDir, 'summary.csv'));
  const survival = readSurvival(join(options.inDir, 'survival.csv'));

  const charts: [ChartKind, string, ReturnType<typeof survivalSeries>][] = [
    ['survival', 'survival', survivalSeries(survival)],
    ['power', 'avg_tx_power', perRoundAverages(rounds, summary, 'avg_tx_power')],
    ['path-cost', 'avg_path_cost', perRoundAverages(rounds, summary, 'avg_path_cost')],
  ];

  mkdirSync(options.outDir, { recursive: true });
  const written: string[] = [];
  for (const [kind, stem, series] of charts) {
    const svg = renderChartSvg(kind, series);
    const path = join(options.outDir, `${stem}.${options.format}`);
    if (options.format === 'png') {
      writeFileSync(path, await toPng(svg));
    } else {
      writeFileSync(path, svg);
    }
    written.push(path);
  }
  return written;
}

const invokedDirectly = process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  main(process.argv.slice(2))
    .then((written) => {
      for (const path of written) console.log(`wrote ${path}`);
    })
    .catch((error) => {
      console.error(`error: ${error.message}`);
      process.exitCode = 2;
    });
}
