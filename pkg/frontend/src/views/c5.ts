import type { Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC5 } from "../types.js";

const W = 640;
const H = 240;

// Histogram of premise/hypothesis similarity with a KDE curve and the
// configured optimum band shaded.
export function renderC5(data: VizC5, _palette: Palette): string {
  const { edges, counts } = data.histogram;
  const maxCount = Math.max(1, ...counts);
  const x = (v: number) => ((v + 1) / 2) * W;
  const bars = counts.map((c, i) =>
    el(
      "rect",
      {
        class: "hist-bin",
        x: x(edges[i]).toFixed(2),
        y: (H - (c / maxCount) * (H - 20)).toFixed(2),
        width: Math.max(1, x(edges[i + 1]) - x(edges[i]) - 1).toFixed(2),
        height: ((c / maxCount) * (H - 20)).toFixed(2),
        fill: "#607d8b",
      },
      [title(`[${edges[i].toFixed(2)}, ${edges[i + 1].toFixed(2)}): ${c}`)],
    ),
  );

  const [lo, hi] = data.band;
  const band = el("rect", {
    class: "optimum-band",
    x: x(lo).toFixed(2), y: 0,
    width: Math.max(0, x(hi) - x(lo)).toFixed(2), height: H,
    fill: "#a5d6a7", opacity: 0.35,
  });

  let kde = "";
  if (data.kde.length) {
    const maxD = Math.max(...data.kde.map((p) => p.density), 1e-9);
    const pts = data.kde
      .map((p) => `${x(p.x).toFixed(2)},${(H - (p.density / maxD) * (H - 20)).toFixed(2)}`)
      .join(" ");
    kde = el("polyline", { class: "kde", points: pts, fill: "none", stroke: "#c62828", "stroke-width": 2 });
  }

  return svg(W, H, [band, ...bars, kde], "c5-histogram");
}
