/** SVG chart builders: pure functions from numbers to markup strings. */

export interface Viewport {
  width: number;
  height: number;
  padding: number;
}

export interface Scale {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export const DEFAULT_VIEWPORT: Viewport = { width: 640, height: 280, padding: 28 };

export function fitScale(xs: number[], ysList: number[][]): Scale {
  let ymax = 0;
  for (const ys of ysList) {
    for (const y of ys) {
      if (Number.isFinite(y) && y > ymax) {
        ymax = y;
      }
    }
  }
  const first = xs[0] ?? 0;
  const last = xs[xs.length - 1] ?? 1;
  return { xmin: first, xmax: last === first ? first + 1 : last, ymin: 0, ymax: ymax || 1 };
}

export function toPixelX(x: number, scale: Scale, vp: Viewport): number {
  const frac = (x - scale.xmin) / (scale.xmax - scale.xmin);
  return vp.padding + frac * (vp.width - 2 * vp.padding);
}

export function fromPixelX(px: number, scale: Scale, vp: Viewport): number {
  const frac = (px - vp.padding) / (vp.width - 2 * vp.padding);
  return scale.xmin + frac * (scale.xmax - scale.xmin);
}

export function toPixelY(y: number, scale: Scale, vp: Viewport): number {
  const frac = (y - scale.ymin) / (scale.ymax - scale.ymin);
  return vp.height - vp.padding - frac * (vp.height - 2 * vp.padding);
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2);
}

export function linePath(
  xs: number[],
  ys: number[],
  scale: Scale,
  vp: Viewport,
): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i += 1) {
    const x = toPixelX(xs[i] as number, scale, vp);
    const y = toPixelY(ys[i] as number, scale, vp);
    parts.push(`${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`);
  }
  return parts.join(" ");
}

/** Closed path from the curve down to the zero line, for shaded areas. */
export function areaPath(
  xs: number[],
  ys: number[],
  scale: Scale,
  vp: Viewport,
): string {
  if (xs.length === 0) {
    return "";
  }
  const zero = toPixelY(0, scale, vp).toFixed(2);
  const open = linePath(xs, ys, scale, vp);
  const lastX = toPixelX(xs[xs.length - 1] as number, scale, vp).toFixed(2);
  const firstX = toPixelX(xs[0] as number, scale, vp).toFixed(2);
  return `${open} L${lastX},${zero} L${firstX},${zero} Z`;
}

export interface CurveSpec {
  xs: number[];
  ys: number[];
  cssClass: string;
  label: string;
  fill?: boolean;
}

export interface MarkerSpec {
  x: number;
  cssClass: string;
  label: string;
}

/** Assemble a complete chart: curves, optional shaded fills, x markers. */
export function renderChart(
  curves: CurveSpec[],
  markers: MarkerSpec[] = [],
  vp: Viewport = DEFAULT_VIEWPORT,
  scaleOverride?: Scale,
): string {
  const xsAll = curves.flatMap((c) => [c.xs[0] ?? 0, c.xs[c.xs.length - 1] ?? 1]);
  const scale =
    scaleOverride ??
    fitScale(
      [Math.min(...xsAll), Math.max(...xsAll)],
      curves.map((c) => c.ys),
    );
  const pieces: string[] = [];
  pieces.push(
    `<svg viewBox="0 0 ${vp.width} ${vp.height}" class="chart" role="img">`,
  );
  const axisY = toPixelY(0, scale, vp).toFixed(2);
  pieces.push(
    `<line class="axis" x1="${vp.padding}" y1="${axisY}" x2="${vp.width - vp.padding}" y2="${axisY}"/>`,
  );
  for (const tick of [scale.xmin, (scale.xmin + scale.xmax) / 2, scale.xmax]) {
    const px = toPixelX(tick, scale, vp).toFixed(2);
    pieces.push(
      `<text class="tick" x="${px}" y="${vp.height - 6}" text-anchor="middle">${fmt(tick)}</text>`,
    );
  }
  for (const curve of curves) {
    if (curve.fill) {
      pieces.push(
        `<path class="${curve.cssClass}-fill" d="${areaPath(curve.xs, curve.ys, scale, vp)}"/>`,
      );
    }
    pieces.push(
      `<path class="${curve.cssClass}" fill="none" d="${linePath(curve.xs, curve.ys, scale, vp)}"/>`,
    );
  }
  for (const marker of markers) {
    const px = toPixelX(marker.x, scale, vp).toFixed(2);
    pieces.push(
      `<g class="marker ${marker.cssClass}" data-marker="${marker.label}">` +
        `<line x1="${px}" y1="${vp.padding}" x2="${px}" y2="${vp.height - vp.padding}"/>` +
        `<circle cx="${px}" cy="${vp.padding}" r="7"/>` +
        `<text x="${px}" y="${vp.padding - 8}" text-anchor="middle">${marker.label}</text>` +
        `</g>`,
    );
  }
  pieces.push("</svg>");
  return pieces.join("");
}
