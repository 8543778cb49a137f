#!/usr/bin/env node
/** plots render --csv a.csv --csv b.csv --label A --label B --out fig.svg --axis esn0 */
import { Axis } from "./model";
import { render } from "./render";
import { SchemaError } from "./schema";

const USAGE =
  "usage: plots render --csv <file> [--csv <file> ...] --label <name> [--label <name> ...] --out <fig.svg|fig.png> [--axis esn0|ebn0]";

export function runCli(argv: string[]): number {
  if (argv[0] !== "render") {
    process.stderr.write(USAGE + "\n");
    return 2;
  }
  const csvPaths: string[] = [];
  const labels: string[] = [];
  let out: string | null = null;
  let axis: Axis = "esn0";
  const args = argv.slice(1);
  for (let i = 0; i < args.length; i += 2) {
    const flag = args[i];
    const value = args[i + 1];
    if (value === undefined) {
      process.stderr.write(`missing value for ${flag}\n${USAGE}\n`);
      return 2;
    }
    switch (flag) {
      case "--csv":
        csvPaths.push(value);
        break;
      case "--label":
        labels.push(value);
        break;
      case "--out":
        out = value;
        break;
      case "--axis":
        if (value !== "esn0" && value !== "ebn0") {
          process.stderr.write(`unknown axis "${value}"\n`);
          return 2;
        }
        axis = value;
        break;
      default:
        process.stderr.write(`unknown flag ${flag}\n${USAGE}\n`);
        return 2;
    }
  }
  if (!out || csvPaths.length === 0) {
    process.stderr.write(USAGE + "\n");
    return 2;
  }
  try {
    render({ csvPaths, labels, out, axis });
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      process.stderr.write(`plots: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  process.stdout.write(`wrote ${out}\n`);
  return 0;
}

if (require.main === module) {
  process.exit(runCli(process.argv.slice(2)));
}
