import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import * as zlib from "node:zlib";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { buildModel } from "../src/model";
import { renderPng } from "../src/png";
import { renderSvg } from "../src/svg";
import { runCli } from "../src/cli";
import { parseResultCsv } from "../src/schema";

const FIXTURES = path.join(__dirname, "..", "testdata");
const ARUM_CSV = path.join(FIXTURES, "fig4_arum_tx2.csv");
const BASE_CSV = path.join(FIXTURES, "fig4_baseline.csv");

let tmp: string;
beforeAll(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "plots-"));
});
afterAll(() => {
  fs.rmSync(tmp, { recursive: true, force: true });
});

function fixtureModel() {
  return buildModel(
    [
      { label: "joint decode (2 tx)", rows: parseResultCsv(fs.readFileSync(ARUM_CSV, "utf8"), "a") },
      { label: "baseline (288,108)", rows: parseResultCsv(fs.readFileSync(BASE_CSV, "utf8"), "b") },
    ],
    "esn0",
  );
}

describe("renderSvg", () => {
  it("renders two series with legend in label order", () => {
    const svg = renderSvg(fixtureModel());
    expect(svg).toContain("<svg");
    expect((svg.match(/class="series"/g) ?? []).length).toBe(2);
    const joint = svg.indexOf("joint decode (2 tx)");
    const base = svg.indexOf("baseline (288,108)");
    expect(joint).toBeGreaterThan(-1);
    expect(base).toBeGreaterThan(joint);
    expect(svg).toContain("stroke-dasharray"); // baseline is dashed
    expect(svg).toContain("clipped to 0.000001");
  });

  it("is a pure function of the model", () => {
    const a = renderSvg(fixtureModel());
    const b = renderSvg(fixtureModel());
    expect(a).toBe(b);
  });

  it("escapes label markup", () => {
    const model = buildModel(
      [{ label: "<evil> & co", rows: parseResultCsv(fs.readFileSync(ARUM_CSV, "utf8"), "a") }],
      "esn0",
    );
    const svg = renderSvg(model);
    expect(svg).toContain("&lt;evil&gt; &amp; co");
  });
});

describe("renderPng", () => {
  it("emits a valid truecolor PNG of the right size", () => {
    const png = renderPng(fixtureModel());
    expect(png.subarray(0, 8)).toEqual(
      Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    );
    expect(png.toString("ascii", 12, 16)).toBe("IHDR");
    expect(png.readUInt32BE(16)).toBe(720);
    expect(png.readUInt32BE(20)).toBe(480);
    // decompress the image data and check the raw scanline size
    const idatStart = png.indexOf("IDAT") + 4;
    const idatLen = png.readUInt32BE(png.indexOf("IDAT") - 4);
    const raw = zlib.inflateSync(png.subarray(idatStart, idatStart + idatLen));
    expect(raw.length).toBe(480 * (1 + 720 * 3));
  });
});

describe("cli", () => {
  it("renders the desk-scale two-series figure without error", () => {
    const out = path.join(tmp, "fig.svg");
    const rc = runCli([
      "render",
      "--csv",
      ARUM_CSV,
      "--csv",
      BASE_CSV,
      "--label",
      "joint decode (2 tx)",
      "--label",
      "baseline (288,108)",
      "--out",
      out,
      "--axis",
      "esn0",
    ]);
    expect(rc).toBe(0);
    const svg = fs.readFileSync(out, "utf8");
    expect((svg.match(/class="series"/g) ?? []).length).toBe(2);
    expect(svg).toContain("clipped to 0.000001");
  });

  it("writes png when asked", () => {
    const out = path.join(tmp, "fig.png");
    const rc = runCli(["render", "--csv", ARUM_CSV, "--label", "A", "--out", out]);
    expect(rc).toBe(0);
    const head = fs.readFileSync(out).subarray(0, 8);
    expect(head).toEqual(Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]));
  });

  it("fails cleanly on schema mismatch", () => {
    const bad = path.join(tmp, "bad.csv");
    fs.writeFileSync(bad, "a,b\n1,2\n");
    const rc = runCli(["render", "--csv", bad, "--label", "A", "--out", path.join(tmp, "x.svg")]);
    expect(rc).toBe(1);
  });

  it("rejects bad usage", () => {
    expect(runCli([])).toBe(2);
    expect(runCli(["render", "--csv", ARUM_CSV, "--label", "A"])).toBe(2);
    expect(runCli(["render", "--axis", "nope", "--csv", ARUM_CSV, "--label", "A", "--out", "x.svg"])).toBe(2);
    expect(runCli(["render", "--csv", ARUM_CSV, "--out", "x.bmp", "--label", "A"])).toBe(1);
  });
});
