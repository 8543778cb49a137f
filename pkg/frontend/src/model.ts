/** Plot model: series points in data coordinates plus axis/legend metadata. */
import { ResultRow } from "./schema";

export const PLOT_FLOOR = 1e-6;

export type Axis = "esn0" | "ebn0";

export interface SeriesPoint {
  x: number;
  y: number;
  clipped: boolean;
}

export interface Series {
  label: string;
  dashed: boolean;
  points: SeriesPoint[];
}

export interface PlotModel {
  series: Series[];
  xLabel: string;
  yLabel: string;
  xMin: number;
  xMax: number;
  /** log10 exponent range of the y axis, floor decade .. 0 */
  yExpMin: number;
  yExpMax: number;
  footnote: string | null;
}

/** Series whose label mentions a baseline render dashed, per the figure
 * conventions; everything else is solid. */
function isBaselineLabel(label: string): boolean {
  return /base/i.test(label);
}

export function buildModel(
  tables: { label: string; rows: ResultRow[] }[],
  axis: Axis,
): PlotModel {
  if (tables.length === 0) {
    throw new Error("nothing to plot");
  }
  let clippedAny = false;
  let xMin = Infinity;
  let xMax = -Infinity;
  let yExpMin = -1;
  const series: Series[] = tables.map(({ label, rows }) => {
    const pts = rows
      .map((r) => {
        const x = axis === "esn0" ? r.es_n0 : r.eb_n0;
        const clipped = r.bler < PLOT_FLOOR;
        const y = clipped ? PLOT_FLOOR : r.bler;
        return { x, y, clipped };
      })
      .sort((a, b) => a.x - b.x);
    for (const p of pts) {
      xMin = Math.min(xMin, p.x);
      xMax = Math.max(xMax, p.x);
      clippedAny = clippedAny || p.clipped;
      yExpMin = Math.min(yExpMin, Math.floor(Math.log10(p.y)));
    }
    return { label, dashed: isBaselineLabel(label), points: pts };
  });
  if (xMax === xMin) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  return {
    series,
    xLabel: axis === "esn0" ? "Es/N0 (dB)" : "Eb/N0 (dB)",
    yLabel: "BLER",
    xMin,
    xMax,
    yExpMin: Math.max(yExpMin, Math.log10(PLOT_FLOOR)),
    yExpMax: 0,
    footnote: clippedAny ? `open markers: zero-error points clipped to ${PLOT_FLOOR}` : null,
  };
}

/** Evenly spaced x ticks at a readable step. */
export function xTicks(xMin: number, xMax: number): number[] {
  const span = xMax - xMin;
  const rawStep = span / 6;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 2.5, 5, 10]) {
    if (rawStep <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  let t = Math.ceil(xMin / step) * step;
  for (; t <= xMax + 1e-12; t += step) {
    ticks.push(Number(t.toFixed(10)));
  }
  return ticks;
}

/** One tick per decade of the y axis. */
export function yDecades(model: PlotModel): number[] {
  const out: number[] = [];
  for (let e = model.yExpMax; e >= model.yExpMin; e -= 1) {
    out.push(e);
  }
  return out;
}
