/** Result-table CSV schema shared with the simulation harness. */

export interface ResultRow {
  snr_db: number;
  es_n0: number;
  eb_n0: number;
  transmissions_used: number;
  frames: number;
  block_errors: number;
  bler: number;
  crc_false_pass: number;
  wall_time: number;
}

export const RESULT_COLUMNS = [
  "snr_db",
  "es_n0",
  "eb_n0",
  "transmissions_used",
  "frames",
  "block_errors",
  "bler",
  "crc_false_pass",
  "wall_time",
] as const;

export class SchemaError extends Error {}

/** Parse one harness CSV; rejects header or value mismatches and empty tables. */
export function parseResultCsv(text: string, source: string): ResultRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty CSV`);
  }
  const header = lines[0].split(",");
  if (header.length !== RESULT_COLUMNS.length || header.some((h, i) => h !== RESULT_COLUMNS[i])) {
    throw new SchemaError(
      `${source}: header mismatch; expected "${RESULT_COLUMNS.join(",")}", got "${lines[0]}"`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${source}: no data rows`);
  }
  const rows: ResultRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== RESULT_COLUMNS.length) {
      throw new SchemaError(`${source}: row has ${cells.length} cells: "${line}"`);
    }
    const values = cells.map((c) => Number(c));
    if (values.some((v) => Number.isNaN(v))) {
      throw new SchemaError(`${source}: non-numeric cell in "${line}"`);
    }
    rows.push({
      snr_db: values[0],
      es_n0: values[1],
      eb_n0: values[2],
      transmissions_used: values[3],
      frames: values[4],
      block_errors: values[5],
      bler: values[6],
      crc_false_pass: values[7],
      wall_time: values[8],
    });
  }
  return rows;
}
