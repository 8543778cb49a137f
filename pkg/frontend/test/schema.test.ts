import * as fs from "node:fs";
import * as path from "node:path";
import { describe, expect, it } from "vitest";

import { parseResultCsv, RESULT_COLUMNS, SchemaError } from "../src/schema";

const FIXTURES = path.join(__dirname, "..", "testdata");

describe("parseResultCsv", () => {
  it("parses the harness fixture", () => {
    const text = fs.readFileSync(path.join(FIXTURES, "fig4_arum_tx2.csv"), "utf8");
    const rows = parseResultCsv(text, "fig4_arum_tx2.csv");
    expect(rows.length).toBeGreaterThan(2);
    expect(rows[0].snr_db).toBe(-3.0);
    expect(rows[0].transmissions_used).toBe(2);
    expect(rows.some((r) => r.bler === 0)).toBe(true);
  });

  it("rejects empty input", () => {
    expect(() => parseResultCsv("", "x")).toThrow(SchemaError);
    expect(() => parseResultCsv(RESULT_COLUMNS.join(",") + "\n", "x")).toThrow(/no data rows/);
  });

  it("rejects header mismatches", () => {
    expect(() => parseResultCsv("a,b,c\n1,2,3\n", "x")).toThrow(/header mismatch/);
  });

  it("rejects ragged or non-numeric rows", () => {
    const header = RESULT_COLUMNS.join(",");
    expect(() => parseResultCsv(`${header}\n1,2,3\n`, "x")).toThrow(/cells/);
    expect(() => parseResultCsv(`${header}\n1,2,3,4,5,6,oops,8,9\n`, "x")).toThrow(/non-numeric/);
  });
});
