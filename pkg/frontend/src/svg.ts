/** Semilog SVG rendering of a plot model. Pure function of the model. */
import { PlotModel, xTicks, yDecades } from "./model";

export const WIDTH = 720;
export const HEIGHT = 480;
const MARGIN = { left: 70, right: 24, top: 20, bottom: 58 };

const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export interface Projection {
  px: (x: number) => number;
  py: (y: number) => number;
  plotLeft: number;
  plotRight: number;
  plotTop: number;
  plotBottom: number;
}

export function projection(model: PlotModel): Projection {
  const plotLeft = MARGIN.left;
  const plotRight = WIDTH - MARGIN.right;
  const plotTop = MARGIN.top;
  const plotBottom = HEIGHT - MARGIN.bottom;
  const px = (x: number) =>
    plotLeft + ((x - model.xMin) / (model.xMax - model.xMin)) * (plotRight - plotLeft);
  const py = (y: number) => {
    const e = Math.log10(y);
    return (
      plotTop +
      ((model.yExpMax - e) / (model.yExpMax - model.yExpMin)) * (plotBottom - plotTop)
    );
  };
  return { px, py, plotLeft, plotRight, plotTop, plotBottom };
}

function fmt(v: number): string {
  return Number(v.toFixed(6)).toString();
}

export function renderSvg(model: PlotModel): string {
  const proj = projection(model);
  const { px, py, plotLeft, plotRight, plotTop, plotBottom } = proj;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  );
  // grid
  for (const e of yDecades(model)) {
    const y = py(Math.pow(10, e));
    parts.push(
      `<line x1="${plotLeft}" y1="${fmt(y)}" x2="${plotRight}" y2="${fmt(y)}" stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${plotLeft - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="12" font-family="sans-serif">1e${e}</text>`,
    );
  }
  for (const t of xTicks(model.xMin, model.xMax)) {
    const x = px(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${plotTop}" x2="${fmt(x)}" y2="${plotBottom}" stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${fmt(x)}" y="${plotBottom + 18}" text-anchor="middle" font-size="12" font-family="sans-serif">${t}</text>`,
    );
  }
  // frame
  parts.push(
    `<rect x="${plotLeft}" y="${plotTop}" width="${plotRight - plotLeft}" height="${plotBottom - plotTop}" fill="none" stroke="#333333"/>`,
  );
  // series
  model.series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const coords = s.points.map((p) => `${fmt(px(p.x))},${fmt(py(p.y))}`).join(" ");
    const dash = s.dashed ? ` stroke-dasharray="7,4"` : "";
    parts.push(
      `<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.8"${dash} class="series"/>`,
    );
    for (const p of s.points) {
      const fill = p.clipped ? "white" : color;
      parts.push(
        `<circle cx="${fmt(px(p.x))}" cy="${fmt(py(p.y))}" r="3.4" fill="${fill}" stroke="${color}" stroke-width="1.4"/>`,
      );
    }
  });
  // axis labels
  parts.push(
    `<text x="${(plotLeft + plotRight) / 2}" y="${HEIGHT - 24}" text-anchor="middle" font-size="13" font-family="sans-serif">${model.xLabel}</text>`,
    `<text x="16" y="${(plotTop + plotBottom) / 2}" text-anchor="middle" font-size="13" font-family="sans-serif" transform="rotate(-90 16 ${(plotTop + plotBottom) / 2})">${model.yLabel}</text>`,
  );
  // legend, one entry per series in label order
  model.series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const y = plotTop + 16 + i * 18;
    const x = plotLeft + 12;
    const dash = s.dashed ? ` stroke-dasharray="7,4"` : "";
    parts.push(
      `<line x1="${x}" y1="${y - 4}" x2="${x + 28}" y2="${y - 4}" stroke="${color}" stroke-width="1.8"${dash}/>`,
      `<text x="${x + 34}" y="${y}" font-size="12" font-family="sans-serif" class="legend">${escapeXml(s.label)}</text>`,
    );
  });
  if (model.footnote) {
    parts.push(
      `<text x="${plotRight}" y="${HEIGHT - 8}" text-anchor="end" font-size="11" font-family="sans-serif" fill="#555555">${escapeXml(model.footnote)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
