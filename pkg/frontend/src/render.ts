/** File-level rendering entry used by the CLI and the tests. */
import * as fs from "node:fs";
import * as path from "node:path";

import { Axis, buildModel } from "./model";
import { parseResultCsv } from "./schema";
import { renderPng } from "./png";
import { renderSvg } from "./svg";

export interface RenderOptions {
  csvPaths: string[];
  labels: string[];
  out: string;
  axis: Axis;
}

export function render(opts: RenderOptions): void {
  if (opts.csvPaths.length === 0) {
    throw new Error("at least one --csv is required");
  }
  if (opts.labels.length !== opts.csvPaths.length) {
    throw new Error("need exactly one --label per --csv");
  }
  const tables = opts.csvPaths.map((p, i) => ({
    label: opts.labels[i],
    rows: parseResultCsv(fs.readFileSync(p, "utf8"), p),
  }));
  const model = buildModel(tables, opts.axis);
  const ext = path.extname(opts.out).toLowerCase();
  if (ext === ".svg") {
    fs.writeFileSync(opts.out, renderSvg(model));
  } else if (ext === ".png") {
    fs.writeFileSync(opts.out, renderPng(model));
  } else {
    throw new Error(`unsupported output format "${ext}"; use .svg or .png`);
  }
}
