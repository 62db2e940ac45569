import * as echarts from 'echarts';
import { Series } from './aggregate.js';

export type ChartKind = 'survival' | 'power' | 'path-cost';

const TITLES: Record<ChartKind, { title: string; yAxis: string }> = {
  survival: { title: 'Fraction of runs alive', yAxis: 'surviving fraction' },
  power: { title: 'Average transmit power per node', yAxis: 'power (J/bit)' },
  'path-cost': { title: 'Average minimum-energy path cost', yAxis: 'energy (J)' },
};

const LINE_STYLES = ['solid', 'dashed', 'dotted', 'solid'] as const;

export function renderChartSvg(kind: ChartKind, series: Series[]): string {
  const { title, yAxis } = TITLES[kind];
  const chart = echarts.init(null, null, {
    renderer: 'svg',
    ssr: true,
    width: 840,
    height: 560,
  });
  chart.setOption({
    animation: false,
    backgroundColor: '#ffffff',
    title: { text: title, left: 'center' },
    legend: { bottom: 0, data: series.map((s) => s.algorithm) },
    grid: { left: 70, right: 30, top: 50, bottom: 60 },
    xAxis: {
      type: 'value',
      name: 'round',
      nameLocation: 'middle',
      nameGap: 28,
      min: 0,
    },
    yAxis: {
      type: 'value',
      name: yAxis,
      nameLocation: 'middle',
      nameGap: 52,
      max: kind === 'survival' ? 1 : undefined,
    },
    series: series.map((s, index) => ({
      name: s.algorithm,
      type: 'line',
      showSymbol: false,
      step: kind === 'survival' ? 'end' : undefined,
      lineStyle: { width: 2, type: LINE_STYLES[index % LINE_STYLES.length] },
      data: s.rounds.map((round, k) => [round, s.values[k]]),
    })),
  });
  const svg = chart.renderToSVGString();
  chart.dispose();
  return svg;
}
