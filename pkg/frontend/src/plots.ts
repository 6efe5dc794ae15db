/**
 * The three figure kinds.  Each renders values straight off the CSV rows;
 * nothing numerical is recomputed here beyond axis transforms (the one
 * derived overlay, the y-register entropy, is key_entropy_bits - 1: the
 * key column minus its documented single extra bit).
 */

import type { AttackRow, BellRow, BoundsRow } from "./csv.js";
import { SchemaError } from "./csv.js";
import { axes, circle, document, fmt, line, linearScale, logScale, polyline, text } from "./svg.js";

export type PlotKind = "bounds_vs_m" | "attack_rates" | "bell_scatter";

export const PLOT_KINDS: PlotKind[] = ["bounds_vs_m", "attack_rates", "bell_scatter"];

const CURVE_STYLES = {
  locking_bound: 'stroke="#c0392b" stroke-width="1.5"',
  epsilon_of_n: 'stroke="#2980b9" stroke-width="1.5"',
  delta_lower: 'stroke="#27ae60" stroke-width="1.5"',
  overlay: 'stroke="#7f8c8d" stroke-width="1.2" stroke-dasharray="5,3"',
};

function byM(rows: { m: number }[]): void {
  rows.sort((a, b) => a.m - b.m);
}

/** Two stacked panels: the vanishing ceilings (log y) and the widening gap. */
export function renderBounds(rows: BoundsRow[]): string {
  byM(rows);
  const width = 640;
  const panel = { left: 70, width: 520, height: 170 };
  const top1 = 30;
  const top2 = 260;
  const height = 470;

  const ms = rows.map((r) => r.m);
  const mLo = Math.min(...ms);
  const mHi = Math.max(...ms);
  const x = linearScale(mLo, mHi === mLo ? mLo + 1 : mHi, panel.left, panel.left + panel.width, 8);

  const ceilings = rows.flatMap((r) => [r.locking_bound, r.epsilon_of_n]);
  const yMin = Math.min(...ceilings);
  const y1 = logScale(Math.min(yMin, 0.1), 1.0, top1 + panel.height, top1);

  const gaps = rows.map((r) => r.delta_lower);
  const y2 = linearScale(0, Math.max(...gaps) * 1.05, top2 + panel.height, top2, 5);

  const parts: string[] = [];
  parts.push(text(panel.left, 18, "information ceilings without the basis string", 'font-size="12"'));
  parts.push(axes({ left: panel.left, top: top1, width: panel.width, height: panel.height }, x, y1, "m (qubits)", "bits / epsilon"));
  parts.push(polyline(rows.map((r) => [x(r.m), y1(r.locking_bound)]), CURVE_STYLES.locking_bound));
  parts.push(polyline(rows.map((r) => [x(r.m), y1(r.epsilon_of_n)]), CURVE_STYLES.epsilon_of_n));
  for (const r of rows) {
    parts.push(circle(x(r.m), y1(r.locking_bound), 2.5, 'fill="#c0392b"'));
    parts.push(circle(x(r.m), y1(r.epsilon_of_n), 2.5, 'fill="#2980b9"'));
  }
  parts.push(text(panel.left + 8, top1 + 14, "locking_bound", 'font-size="10" fill="#c0392b"'));
  parts.push(text(panel.left + 8, top1 + 28, "epsilon_of_n", 'font-size="10" fill="#2980b9"'));

  parts.push(text(panel.left, top2 - 12, "gap between informed and uninformed readers", 'font-size="12"'));
  parts.push(axes({ left: panel.left, top: top2, width: panel.width, height: panel.height }, x, y2, "m (qubits)", "bits"));
  parts.push(polyline(rows.map((r) => [x(r.m), y2(r.delta_lower)]), CURVE_STYLES.delta_lower));
  // the y-register entropy: the key column minus its one extra bit
  parts.push(polyline(rows.map((r) => [x(r.m), y2(r.key_entropy_bits - 1)]), CURVE_STYLES.overlay));
  for (const r of rows) parts.push(circle(x(r.m), y2(r.delta_lower), 2.5, 'fill="#27ae60"'));
  parts.push(text(panel.left + 8, top2 + 14, "delta_lower", 'font-size="10" fill="#27ae60"'));
  parts.push(text(panel.left + 8, top2 + 28, "basis-string entropy", 'font-size="10" fill="#7f8c8d"'));

  return document(width, height, parts.join("\n"));
}

/** Success rate per m; header points sit pinned on the 1.0 line. */
export function renderAttack(rows: AttackRow[]): string {
  byM(rows);
  const width = 640;
  const height = 320;
  const frame = { left: 70, top: 30, width: 520, height: 230 };

  const ms = rows.map((r) => r.m);
  const mLo = Math.min(...ms);
  const mHi = Math.max(...ms);
  const x = linearScale(mLo - 0.5, mHi + 0.5, frame.left, frame.left + frame.width, Math.min(10, mHi - mLo + 1));
  const y = linearScale(0, 1.05, frame.top + frame.height, frame.top, 5);

  const parts: string[] = [];
  parts.push(text(frame.left, 18, "one-time-pad attack success rates", 'font-size="12"'));
  parts.push(axes(frame, x, y, "m (qubits)", "success rate"));
  parts.push(line(frame.left, y(1.0), frame.left + frame.width, y(1.0), 'stroke="#bbb" stroke-dasharray="3,3"'));
  parts.push(line(frame.left, y(0.5), frame.left + frame.width, y(0.5), 'stroke="#bbb" stroke-dasharray="3,3"'));

  for (const row of rows) {
    const color = row.mode === "header" ? "#c0392b" : "#2980b9";
    const cx = x(row.m);
    const cy = y(row.success_rate);
    parts.push(line(cx, y(0), cx, cy, `stroke="${color}" stroke-width="5" stroke-opacity="0.35"`));
    parts.push(circle(cx, cy, 4, `fill="${color}"`));
    parts.push(text(cx, cy - 8, fmt(row.success_rate), 'font-size="9" text-anchor="middle"'));
  }
  const modes = [...new Set(rows.map((r) => r.mode))];
  modes.forEach((mode, i) => {
    const color = mode === "header" ? "#c0392b" : "#2980b9";
    parts.push(circle(frame.left + 12, frame.top + 14 + 14 * i, 4, `fill="${color}"`));
    parts.push(text(frame.left + 22, frame.top + 17 + 14 * i, mode, 'font-size="10"'));
  });

  return document(width, height, parts.join("\n"));
}

/** Measured key distance against its fidelity budget; passes below the diagonal. */
export function renderBellScatter(rows: BellRow[]): string {
  const width = 420;
  const height = 420;
  const frame = { left: 70, top: 30, width: 310, height: 310 };

  const hi = Math.max(
    0.05,
    ...rows.map((r) => r.epsilon_bound),
    ...rows.map((r) => r.measured_distance),
  );
  const x = linearScale(0, hi * 1.05, frame.left, frame.left + frame.width, 5);
  const y = linearScale(0, hi * 1.05, frame.top + frame.height, frame.top, 5);

  const parts: string[] = [];
  parts.push(text(frame.left, 18, "entangled-pair key distances", 'font-size="12"'));
  parts.push(axes(frame, x, y, "allowed: sqrt(1 - F^2)", "measured distance"));
  parts.push(line(x(0), y(0), x(hi * 1.05), y(hi * 1.05), 'stroke="#bbb" stroke-dasharray="3,3"'));
  for (const row of rows) {
    const color = row.pass ? "#27ae60" : "#c0392b";
    parts.push(circle(x(row.epsilon_bound), y(row.measured_distance), 3.5, `fill="${color}" fill-opacity="0.75"`));
  }
  parts.push(text(frame.left + 8, frame.top + 14, "pass", 'font-size="10" fill="#27ae60"'));
  parts.push(text(frame.left + 8, frame.top + 28, "fail", 'font-size="10" fill="#c0392b"'));

  return document(width, height, parts.join("\n"));
}

export function render(kind: PlotKind, rows: BoundsRow[] | AttackRow[] | BellRow[]): string {
  switch (kind) {
    case "bounds_vs_m":
      return renderBounds(rows as BoundsRow[]);
    case "attack_rates":
      return renderAttack(rows as AttackRow[]);
    case "bell_scatter":
      return renderBellScatter(rows as BellRow[]);
    default:
      throw new SchemaError(`unknown plot kind ${kind as string}`);
  }
}
