#!/usr/bin/env node
/** Command-line figure renderer for the simulation CSV artifacts. */

import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { writeDecayPlot } from './decayPlot.js';
import { writeOverlayPlot } from './overlayPlot.js';

export async function main(argv: string[]): Promise<number> {
  try {
    await yargs(argv)
      .command(
        'decay',
        'log-log decay plot with fitted and reference slopes',
        (y) =>
          y
            .option('input', { type: 'string', array: true, demandOption: true })
            .option('experiment', { type: 'string' })
            .option('label', { type: 'string' })
            .option('p', { type: 'string' })
            .option('ref-slope', { type: 'number', array: true, default: [] as number[] })
            .option('scaled', { type: 'boolean', default: false })
            .option('out', { type: 'string', demandOption: true }),
        (args) => {
          const result = writeDecayPlot({
            inputPaths: args.input as string[],
            filter: {
              experiment: args.experiment,
              label: args.label,
              p: args.p === undefined ? undefined : args.p === 'inf' ? Infinity : Number(args.p),
            },
            referenceSlopes: args['ref-slope'] as number[],
            outputPath: args.out as string,
            useScaledValues: args.scaled as boolean,
          });
          console.log(
            `wrote ${args.out}: ${result.rowCount} points, slope ${result.annotatedSlope}`,
          );
        },
      )
      .command(
        'overlay',
        'two field curves at a fixed time with a residual inset',
        (y) =>
          y
            .option('input', { type: 'string', array: true, demandOption: true })
            .option('t', { type: 'number', demandOption: true })
            .option('label-a', { type: 'string', demandOption: true })
            .option('label-b', { type: 'string', demandOption: true })
            .option('out', { type: 'string', demandOption: true }),
        (args) => {
          const result = writeOverlayPlot({
            inputPaths: args.input as string[],
            time: args.t as number,
            labels: [args['label-a'] as string, args['label-b'] as string],
            outputPath: args.out as string,
          });
          console.log(
            `wrote ${args.out}: ${result.pointCount} points, max residual ${result.maxResidual.toExponential(3)}`,
          );
        },
      )
      .demandCommand(1)
      .strict()
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .parseAsync();
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split('/').pop()!);
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
