import { flagColor, type Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC1 } from "../types.js";

const W = 640;
const H = 220;

// Dual-axis bars: new vocabulary types per accepted sample (left axis) with
// the running vocabulary size as a line (right axis), plus the
// hypothesis-length histogram underneath.
export function renderC1(data: VizC1, palette: Palette): string {
  const bars = data.bars;
  const maxNew = Math.max(1, ...bars.map((b) => b.new_types));
  const maxVocab = Math.max(1, ...bars.map((b) => b.vocab_size_after));
  const bw = bars.length ? W / bars.length : W;

  const rects = bars.map((b, i) =>
    el(
      "rect",
      {
        class: "bar",
        x: i * bw + 1,
        y: H - (b.new_types / maxNew) * (H - 20),
        width: Math.max(1, bw - 2),
        height: (b.new_types / maxNew) * (H - 20),
        fill: flagColor(b.flag, palette),
        "data-id": b.id,
      },
      [title(`${b.id}: ${b.new_types} new types, vocabulary ${b.vocab_size_after}`)],
    ),
  );
  const linePoints = bars
    .map((b, i) => `${i * bw + bw / 2},${H - (b.vocab_size_after / maxVocab) * (H - 20)}`)
    .join(" ");
  const line = bars.length
    ? el("polyline", { class: "vocab-line", points: linePoints, fill: "none", stroke: "#444" })
    : "";

  const hist = data.length_histogram;
  const maxCount = Math.max(1, ...hist.counts);
  const hw = hist.counts.length ? W / hist.counts.length : W;
  const histRects = hist.counts.map((c, i) =>
    el(
      "rect",
      {
        class: "length-bin",
        x: i * hw + 1,
        y: 60 - (c / maxCount) * 56,
        width: Math.max(1, hw - 2),
        height: (c / maxCount) * 56,
        fill: "#90a4ae",
      },
      [title(`length ${hist.edges[i].toFixed(1)}-${hist.edges[i + 1].toFixed(1)}: ${c}`)],
    ),
  );

  return [
    svg(W, H, [line, ...rects], "c1-bars"),
    svg(W, 60, histRects, "c1-length-histogram"),
  ].join("");
}
