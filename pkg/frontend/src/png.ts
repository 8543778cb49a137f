/** Minimal PNG rasterization of a plot model: Bresenham lines with dash
 * support, filled/ring markers, and a compact 5x7 bitmap font. Node's zlib
 * provides the deflate stage of the PNG encoder. */
import * as zlib from "node:zlib";

import { PlotModel, xTicks, yDecades } from "./model";
import { HEIGHT, WIDTH, projection } from "./svg";

type RGB = [number, number, number];

const SERIES_COLORS: RGB[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [148, 103, 189],
  [255, 127, 14],
  [140, 86, 75],
];
const GRID: RGB = [221, 221, 221];
const FRAME: RGB = [51, 51, 51];
const TEXT: RGB = [30, 30, 30];

class Canvas {
  data: Uint8Array;
  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, c: RGB): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const o = (yi * this.width + xi) * 3;
    this.data[o] = c[0];
    this.data[o + 1] = c[1];
    this.data[o + 2] = c[2];
  }

  line(x0: number, y0: number, x1: number, y1: number, c: RGB, dashed = false): void {
    let xi = Math.round(x0);
    let yi = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - xi);
    const dy = -Math.abs(ye - yi);
    const sx = xi < xe ? 1 : -1;
    const sy = yi < ye ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      if (!dashed || step % 11 < 7) {
        this.set(xi, yi, c);
      }
      if (xi === xe && yi === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xi += sx;
      }
      if (e2 <= dx) {
        err += dx;
        yi += sy;
      }
      step += 1;
    }
  }

  disc(cx: number, cy: number, r: number, c: RGB, filled: boolean): void {
    for (let y = -r; y <= r; y++) {
      for (let x = -r; x <= r; x++) {
        const d2 = x * x + y * y;
        if (filled ? d2 <= r * r : Math.abs(Math.sqrt(d2) - r) < 0.8) {
          this.set(cx + x, cy + y, c);
        }
      }
    }
  }

  text(x: number, y: number, s: string, c: RGB): void {
    let cx = Math.round(x);
    for (const ch of s) {
      drawGlyph(this, cx, Math.round(y), ch, c);
      cx += 6;
    }
  }
}

// 5x7 glyphs, row-major, MSB left; enough coverage for axis numbers,
// labels, and the clipping footnote. Unknown characters render as a box.
const FONT: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  ",": [0x00, 0x00, 0x00, 0x00, 0x0c, 0x04, 0x08],
  ":": [0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00],
  "/": [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
  "(": [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
  ")": [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
  " ": [0, 0, 0, 0, 0, 0, 0],
  A: [0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
  B: [0x1e, 0x11, 0x11, 0x1e, 0x11, 0x11, 0x1e],
  C: [0x0e, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0e],
  D: [0x1e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1e],
  E: [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x1f],
  F: [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x10],
  G: [0x0e, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0f],
  H: [0x11, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
  I: [0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  J: [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0c],
  K: [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11],
  L: [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1f],
  M: [0x11, 0x1b, 0x15, 0x15, 0x11, 0x11, 0x11],
  N: [0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11],
  O: [0x0e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
  P: [0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10, 0x10],
  Q: [0x0e, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0d],
  R: [0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11],
  S: [0x0f, 0x10, 0x10, 0x0e, 0x01, 0x01, 0x1e],
  T: [0x1f, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
  U: [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
  V: [0x11, 0x11, 0x11, 0x11, 0x11, 0x0a, 0x04],
  W: [0x11, 0x11, 0x11, 0x15, 0x15, 0x1b, 0x11],
  X: [0x11, 0x11, 0x0a, 0x04, 0x0a, 0x11, 0x11],
  Y: [0x11, 0x11, 0x0a, 0x04, 0x04, 0x04, 0x04],
  Z: [0x1f, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1f],
  a: [0x00, 0x00, 0x0e, 0x01, 0x0f, 0x11, 0x0f],
  b: [0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x1e],
  c: [0x00, 0x00, 0x0e, 0x10, 0x10, 0x11, 0x0e],
  d: [0x01, 0x01, 0x0f, 0x11, 0x11, 0x11, 0x0f],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  f: [0x06, 0x08, 0x1c, 0x08, 0x08, 0x08, 0x08],
  g: [0x00, 0x0f, 0x11, 0x11, 0x0f, 0x01, 0x0e],
  h: [0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x11],
  i: [0x04, 0x00, 0x0c, 0x04, 0x04, 0x04, 0x0e],
  j: [0x02, 0x00, 0x06, 0x02, 0x02, 0x12, 0x0c],
  k: [0x10, 0x10, 0x12, 0x14, 0x18, 0x14, 0x12],
  l: [0x0c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  m: [0x00, 0x00, 0x1a, 0x15, 0x15, 0x15, 0x15],
  n: [0x00, 0x00, 0x1e, 0x11, 0x11, 0x11, 0x11],
  o: [0x00, 0x00, 0x0e, 0x11, 0x11, 0x11, 0x0e],
  p: [0x00, 0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10],
  q: [0x00, 0x0f, 0x11, 0x11, 0x0f, 0x01, 0x01],
  r: [0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10],
  s: [0x00, 0x00, 0x0f, 0x10, 0x0e, 0x01, 0x1e],
  t: [0x08, 0x08, 0x1c, 0x08, 0x08, 0x09, 0x06],
  u: [0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0d],
  v: [0x00, 0x00, 0x11, 0x11, 0x11, 0x0a, 0x04],
  w: [0x00, 0x00, 0x11, 0x11, 0x15, 0x15, 0x0a],
  x: [0x00, 0x00, 0x11, 0x0a, 0x04, 0x0a, 0x11],
  y: [0x00, 0x11, 0x11, 0x0f, 0x01, 0x11, 0x0e],
  z: [0x00, 0x00, 0x1f, 0x02, 0x04, 0x08, 0x1f],
};
const UNKNOWN = [0x1f, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1f];

function drawGlyph(canvas: Canvas, x: number, y: number, ch: string, c: RGB): void {
  const rows = FONT[ch] ?? UNKNOWN;
  for (let r = 0; r < 7; r++) {
    for (let b = 0; b < 5; b++) {
      if ((rows[r] >> (4 - b)) & 1) {
        canvas.set(x + b, y - 6 + r, c);
      }
    }
  }
}

// --- PNG encoding (truecolor 8-bit, no filtering) ---

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) {
    c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(payload.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(payload)]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, Buffer.from(payload), tail]);
}

export function encodePng(canvas: Canvas): Buffer {
  const { width, height, data } = canvas;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // truecolor
  const raw = Buffer.alloc(height * (1 + width * 3));
  for (let y = 0; y < height; y++) {
    const o = y * (1 + width * 3);
    raw[o] = 0; // filter: none
    raw.set(data.subarray(y * width * 3, (y + 1) * width * 3), o + 1);
  }
  const signature = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
  return Buffer.concat([
    signature,
    chunk("IHDR", ihdr),
    chunk("IDAT", zlib.deflateSync(raw, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function renderPng(model: PlotModel): Buffer {
  const canvas = new Canvas(WIDTH, HEIGHT);
  const proj = projection(model);
  const { px, py, plotLeft, plotRight, plotTop, plotBottom } = proj;
  for (const e of yDecades(model)) {
    const y = py(Math.pow(10, e));
    canvas.line(plotLeft, y, plotRight, y, GRID);
    canvas.text(plotLeft - 28, y + 3, `1e${e}`, TEXT);
  }
  for (const t of xTicks(model.xMin, model.xMax)) {
    const x = px(t);
    canvas.line(x, plotTop, x, plotBottom, GRID);
    const s = String(t);
    canvas.text(x - 3 * s.length, plotBottom + 16, s, TEXT);
  }
  canvas.line(plotLeft, plotTop, plotRight, plotTop, FRAME);
  canvas.line(plotLeft, plotBottom, plotRight, plotBottom, FRAME);
  canvas.line(plotLeft, plotTop, plotLeft, plotBottom, FRAME);
  canvas.line(plotRight, plotTop, plotRight, plotBottom, FRAME);
  model.series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    for (let j = 1; j < s.points.length; j++) {
      const a = s.points[j - 1];
      const b = s.points[j];
      canvas.line(px(a.x), py(a.y), px(b.x), py(b.y), color, s.dashed);
    }
    for (const p of s.points) {
      canvas.disc(Math.round(px(p.x)), Math.round(py(p.y)), 3, color, !p.clipped);
    }
    const ly = plotTop + 14 + i * 14;
    canvas.line(plotLeft + 10, ly - 3, plotLeft + 38, ly - 3, color, s.dashed);
    canvas.text(plotLeft + 44, ly, s.label, TEXT);
  });
  canvas.text((plotLeft + plotRight) / 2 - 3 * model.xLabel.length, HEIGHT - 18, model.xLabel, TEXT);
  canvas.text(8, (plotTop + plotBottom) / 2, model.yLabel, TEXT);
  if (model.footnote) {
    canvas.text(plotRight - 6 * model.footnote.length, HEIGHT - 6, model.footnote, TEXT);
  }
  return encodePng(canvas);
}

export { Canvas };
