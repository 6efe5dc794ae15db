/**
 * Tiny SVG toolkit: scales, axes, marks.  No dependencies; the plot
 * modules compose these into complete documents.
 */

export interface Scale {
  (value: number): number;
  ticks(): number[];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number, tickCount = 5): Scale {
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.ticks = () => {
    const step = niceStep(span / tickCount);
    const first = Math.ceil(d0 / step) * step;
    const out: number[] = [];
    for (let t = first; t <= d1 + 1e-9; t += step) out.push(roundTo(t, step));
    return out;
  };
  return fn;
}

/** Base-10 log scale; the domain must be strictly positive. */
export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs a positive domain");
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const fn = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  fn.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(l0 - 1e-9); e <= Math.floor(l1 + 1e-9); e++) out.push(10 ** e);
    if (out.length === 0) out.push(d0, d1);
    return out;
  };
  return fn;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const unit = raw / mag;
  if (unit <= 1) return mag;
  if (unit <= 2) return 2 * mag;
  if (unit <= 5) return 5 * mag;
  return 10 * mag;
}

function roundTo(v: number, step: number): number {
  const digits = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  return parseFloat(v.toFixed(digits));
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function fmt(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) return v.toExponential(0);
  return parseFloat(v.toPrecision(6)).toString();
}

export function line(x1: number, y1: number, x2: number, y2: number, style: string): string {
  return `<line x1="${r(x1)}" y1="${r(y1)}" x2="${r(x2)}" y2="${r(y2)}" ${style}/>`;
}

export function polyline(points: Array<[number, number]>, style: string): string {
  const pts = points.map(([x, y]) => `${r(x)},${r(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" ${style}/>`;
}

export function circle(cx: number, cy: number, radius: number, style: string): string {
  return `<circle cx="${r(cx)}" cy="${r(cy)}" r="${radius}" ${style}/>`;
}

export function text(x: number, y: number, s: string, style = ""): string {
  return `<text x="${r(x)}" y="${r(y)}" font-family="sans-serif" ${style}>${esc(s)}</text>`;
}

const r = (v: number) => Math.round(v * 100) / 100;

export interface Frame {
  left: number;
  top: number;
  width: number;
  height: number;
}

/** Axis lines, ticks, and labels around a plotting frame. */
export function axes(frame: Frame, xScale: Scale, yScale: Scale, xLabel: string, yLabel: string): string {
  const { left, top, width, height } = frame;
  const bottom = top + height;
  const right = left + width;
  const parts: string[] = [];
  parts.push(line(left, bottom, right, bottom, 'stroke="black"'));
  parts.push(line(left, top, left, bottom, 'stroke="black"'));
  for (const t of xScale.ticks()) {
    const x = xScale(t);
    if (x < left - 0.5 || x > right + 0.5) continue;
    parts.push(line(x, bottom, x, bottom + 4, 'stroke="black"'));
    parts.push(text(x, bottom + 16, fmt(t), 'font-size="10" text-anchor="middle"'));
  }
  for (const t of yScale.ticks()) {
    const y = yScale(t);
    if (y < top - 0.5 || y > bottom + 0.5) continue;
    parts.push(line(left - 4, y, left, y, 'stroke="black"'));
    parts.push(text(left - 6, y + 3, fmt(t), 'font-size="10" text-anchor="end"'));
  }
  parts.push(text(left + width / 2, bottom + 32, xLabel, 'font-size="11" text-anchor="middle"'));
  parts.push(
    text(left - 38, top + height / 2, yLabel,
      `font-size="11" text-anchor="middle" transform="rotate(-90 ${r(left - 38)} ${r(top + height / 2)})"`),
  );
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
