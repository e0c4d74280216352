// Region-chart geometry in the (qN, qE) plane: qN (no-observe weight) on
// the x axis, qE (observe-execution weight) on the y axis, the feasible
// strategy triangle qN + qE <= 1, the server-computed trust region and
// boundary, the optimum marker and the user's trial history.
//
// Geometry is pure and rendering returns an SVG string, so everything is
// testable without a DOM.

import type { AnalysisDoc, StrategyDoc, TrialRecordDoc } from "./types";

export interface ChartLayout {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_LAYOUT: ChartLayout = { width: 420, height: 420, margin: 40 };

export interface Point {
  x: number;
  y: number;
}

export interface LabeledPoint extends Point {
  label: string;
}

export interface RegionChartModel {
  layout: ChartLayout;
  /** Simplex triangle corners in pixels. */
  triangle: Point[];
  /** Trust-region polygon in pixels; empty when the region is empty. */
  regionPolygon: Point[];
  /** Boundary segment clipped to the triangle, when it crosses it. */
  boundarySegment: [Point, Point] | null;
  /** Numbered trial-history markers. */
  history: LabeledPoint[];
  /** The two pure observation strategies the chart always marks. */
  references: LabeledPoint[];
  optimum: Point | null;
  emptyRegion: boolean;
  fullRegion: boolean;
}

export function xPixel(layout: ChartLayout, qN: number): number {
  return layout.margin + qN * (layout.width - 2 * layout.margin);
}

export function yPixel(layout: ChartLayout, qE: number): number {
  return layout.height - layout.margin - qE * (layout.height - 2 * layout.margin);
}

export function qNFromPixel(layout: ChartLayout, x: number): number {
  return (x - layout.margin) / (layout.width - 2 * layout.margin);
}

function toPoint(layout: ChartLayout, strategy: StrategyDoc): Point {
  return {
    x: xPixel(layout, strategy.no_observe),
    y: yPixel(layout, strategy.observe_execution),
  };
}

/** Intersections of the server-given boundary line with the strategy
 * triangle, in (qN, qE) coordinates. */
export function boundaryTriangleCrossings(
  a: number,
  b: number,
  c: number
): { qN: number; qE: number }[] {
  const tol = 1e-9;
  const candidates: { qN: number; qE: number }[] = [];
  if (a !== 0) {
    candidates.push({ qN: -c / a, qE: 0 }); // edge qE = 0
  }
  if (b !== 0) {
    candidates.push({ qN: 0, qE: -c / b }); // edge qN = 0
  }
  if (a !== b) {
    const qN = -(b + c) / (a - b); // edge qN + qE = 1
    candidates.push({ qN, qE: 1 - qN });
  }
  const inside = candidates.filter(
    (p) => p.qN >= -tol && p.qE >= -tol && p.qN + p.qE <= 1 + tol
  );
  const unique: { qN: number; qE: number }[] = [];
  for (const p of inside) {
    if (!unique.some((q) => Math.hypot(q.qN - p.qN, q.qE - p.qE) <= tol)) {
      unique.push(p);
    }
  }
  return unique;
}

export function buildChartModel(
  analysis: AnalysisDoc,
  trials: TrialRecordDoc[],
  showOptimum: boolean,
  layout: ChartLayout = DEFAULT_LAYOUT
): RegionChartModel {
  const { boundary, region, optimum } = analysis;

  const triangle = [
    { x: xPixel(layout, 0), y: yPixel(layout, 0) },
    { x: xPixel(layout, 1), y: yPixel(layout, 0) },
    { x: xPixel(layout, 0), y: yPixel(layout, 1) },
  ];

  const regionPolygon = region.empty
    ? []
    : region.vertices.map((v) => toPoint(layout, v));

  const crossings = boundaryTriangleCrossings(
    boundary.no_observe_coef,
    boundary.observe_execution_coef,
    boundary.constant
  );
  const boundarySegment: [Point, Point] | null =
    crossings.length >= 2
      ? [
          { x: xPixel(layout, crossings[0].qN), y: yPixel(layout, crossings[0].qE) },
          { x: xPixel(layout, crossings[1].qN), y: yPixel(layout, crossings[1].qE) },
        ]
      : null;

  const history = trials.map((t, i) => ({
    ...toPoint(layout, t.strategy),
    label: String(i + 1),
  }));

  const references: LabeledPoint[] = [
    { x: xPixel(layout, 0), y: yPixel(layout, 0), label: "always review plan" },
    { x: xPixel(layout, 0), y: yPixel(layout, 1), label: "always watch execution" },
  ];

  return {
    layout,
    triangle,
    regionPolygon,
    boundarySegment,
    history,
    references,
    optimum:
      showOptimum && optimum !== null ? toPoint(layout, optimum.strategy) : null,
    emptyRegion: region.empty,
    fullRegion: region.full,
  };
}

function polygonAttr(points: Point[]): string {
  return points.map((p) => `${round2(p.x)},${round2(p.y)}`).join(" ");
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

export function renderRegionChartSvg(model: RegionChartModel): string {
  const { layout } = model;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" class="region-chart">`
  );

  // axes with simplex edge
  parts.push(
    `<polygon class="simplex" points="${polygonAttr(model.triangle)}" fill="none" stroke="#444"/>`
  );

  if (model.regionPolygon.length >= 3) {
    parts.push(
      `<polygon class="trust-region" points="${polygonAttr(model.regionPolygon)}" fill="#7aa6c2" fill-opacity="0.45" stroke="none"/>`
    );
  }
  if (model.emptyRegion) {
    parts.push(
      `<text class="empty-warning" x="${layout.width / 2}" y="${layout.margin}" text-anchor="middle" fill="#a33">no deterring strategy exists</text>`
    );
  }

  if (model.boundarySegment) {
    const [p, q] = model.boundarySegment;
    parts.push(
      `<line class="boundary" x1="${round2(p.x)}" y1="${round2(p.y)}" x2="${round2(q.x)}" y2="${round2(q.y)}" stroke="#8b1a1a" stroke-width="2"/>`
    );
  }

  for (const ref of model.references) {
    parts.push(
      `<circle class="reference" cx="${round2(ref.x)}" cy="${round2(ref.y)}" r="4" fill="#b22"/>`,
      `<text x="${round2(ref.x + 8)}" y="${round2(ref.y + 4)}" font-size="10">${ref.label}</text>`
    );
  }

  for (const point of model.history) {
    parts.push(
      `<circle class="trial" cx="${round2(point.x)}" cy="${round2(point.y)}" r="7" fill="#2b6" fill-opacity="0.8"/>`,
      `<text class="trial-label" x="${round2(point.x)}" y="${round2(point.y + 3)}" text-anchor="middle" font-size="9">${point.label}</text>`
    );
  }

  if (model.optimum) {
    parts.push(
      `<circle class="optimum" cx="${round2(model.optimum.x)}" cy="${round2(model.optimum.y)}" r="5" fill="none" stroke="#161" stroke-width="2"/>`
    );
  }

  const x0 = xPixel(layout, 0);
  const x1 = xPixel(layout, 1);
  const y0 = yPixel(layout, 0);
  parts.push(
    `<text x="${x1}" y="${y0 + 24}" text-anchor="end" font-size="11">no-observe weight</text>`,
    `<text x="${x0 - 24}" y="${yPixel(layout, 1)}" font-size="11" transform="rotate(-90 ${x0 - 24} ${yPixel(layout, 1)})">watch-execution weight</text>`
  );

  parts.push("</svg>");
  return parts.join("\n");
}
