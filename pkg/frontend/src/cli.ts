#!/usr/bin/env node
/**
 * Usage: fraclap-figures <kind> <output.svg> <dataset...>
 *
 * kind is one of: heatmap, functional, scaling, gaussian, sweep.
 * Datasets are the CSV/JSON files written by the fraclap CLI; their
 * metadata sidecars must sit next to them and carry the same kind.
 */

import { FIGURE_KINDS, FigureJob, FigureKind } from "./job.js";
import { renderFigure } from "./render.js";

export function main(argv: string[]): number {
  if (argv.length < 3) {
    process.stderr.write(
      "usage: fraclap-figures <kind> <output.svg> <dataset...>\n" +
      `kinds: ${FIGURE_KINDS.join(", ")}\n`);
    return 2;
  }
  const job: FigureJob = {
    kind: argv[0] as FigureKind,
    output: argv[1],
    datasets: argv.slice(2),
  };
  try {
    const path = renderFigure(job);
    process.stdout.write(`wrote ${path}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
}

if (process.argv[1] && /cli\.(ts|js)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
