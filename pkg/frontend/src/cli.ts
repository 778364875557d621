import { writeFileSync } from "fs";
import yargs from "yargs";

import { densitySvg } from "./density.js";
import { figureSvg } from "./figure.js";

/**
 * Entry point shared by the bin wrapper and the tests.  Returns the exit
 * code instead of exiting so callers stay in control of the process.
 */
export function runCli(args: string[]): number {
  let code = 0;
  const parser = yargs(args)
    .scriptName("kvnosc-plots")
    .command(
      ["render-figure <dir>", "render_figure <dir>"],
      "four-panel figure (amplitude, rate, phase, centre) from a scenario directory",
      (y) =>
        y
          .positional("dir", { type: "string", demandOption: true })
          .option("out", { type: "string", default: "fig.svg" }),
      (argv) => {
        writeFileSync(argv.out, figureSvg(argv.dir));
        console.log(`wrote ${argv.out}`);
      },
    )
    .command(
      ["render-density <grid> <meta>", "render_density <grid> <meta>"],
      "heatmap of one evolve snapshot (grid CSV + metadata JSON)",
      (y) =>
        y
          .positional("grid", { type: "string", demandOption: true })
          .positional("meta", { type: "string", demandOption: true })
          .option("out", { type: "string", default: "density.svg" }),
      (argv) => {
        writeFileSync(argv.out, densitySvg(argv.grid, argv.meta));
        console.log(`wrote ${argv.out}`);
      },
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      console.error(err ? `${err.name}: ${err.message}` : msg);
      code = 1;
    });
  try {
    parser.parse();
  } catch (err) {
    console.error(`${(err as Error).name}: ${(err as Error).message}`);
    code = 1;
  }
  return code;
}
