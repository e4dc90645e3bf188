import type { Palette } from "../palette.js";
import { el, svg, title, jitter } from "../svg.js";
import type { VizC6 } from "../types.js";

const W = 640;
const H = 280;

// Per-label distribution of hypothesis n-gram counts: box (min, median,
// mean, max from the server stats) with the individual grams jittered
// around each box.
export function renderC6(data: VizC6, _palette: Palette): string {
  const groups = data.groups;
  const gw = groups.length ? W / groups.length : W;
  const maxCount = Math.max(1, ...groups.flatMap((g) => g.points.map((p) => p.count)));
  const y = (v: number) => H - 20 - (v / maxCount) * (H - 50);

  const parts = groups.flatMap((g, gi) => {
    const cx = gi * gw + gw / 2;
    const box = [
      el("line", { class: "whisker", x1: cx, x2: cx, y1: y(g.stats.min), y2: y(g.stats.max), stroke: "#455a64" }),
      el("rect", {
        class: "box",
        x: cx - 26, y: Math.min(y(g.stats.median), y(g.stats.mean)),
        width: 52,
        height: Math.max(2, Math.abs(y(g.stats.mean) - y(g.stats.median))),
        fill: "#b0bec5", opacity: 0.8,
      }, [title(`${g.label}: median ${g.stats.median}, mean ${g.stats.mean.toFixed(2)}`)]),
      el("line", {
        class: "median",
        x1: cx - 30, x2: cx + 30, y1: y(g.stats.median), y2: y(g.stats.median),
        stroke: "#000", "stroke-width": 2,
      }),
      el("text", { class: "label", x: cx, y: H - 4, "text-anchor": "middle" }, [g.label]),
    ];
    const points = g.points.map((p, i) =>
      el(
        "circle",
        {
          class: "gram-point",
          cx: (cx - 22 + jitter(i) * 44).toFixed(2),
          cy: y(p.count).toFixed(2),
          r: 3,
          fill: "#37474f", opacity: 0.7,
          "data-gram": p.gram,
        },
        [title(`"${p.gram}" x${p.count} (${g.label})`)],
      ),
    );
    return [...box, ...points];
  });

  return [
    el("p", { class: "granularity" }, [
      `granularity ${data.granularity}, outliers ${data.remove_outliers ? "removed" : "kept"}`,
    ]),
    svg(W, H, parts, "c6-violins"),
  ].join("");
}
