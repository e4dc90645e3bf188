import { flagColor, type Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC7 } from "../types.js";

const W = 640;
const H = 320;

// Parallel coordinates: dev/test samples on the left axis, their nearest
// train-split sentences on the right, one line per leakage link.
export function renderC7(data: VizC7, palette: Palette): string {
  const left = [...new Set(data.links.map((l) => l.from_id))];
  const right = [...new Set(data.links.map((l) => l.to_id))];
  const ly = new Map(left.map((id, i) => [id, 30 + (i * (H - 60)) / Math.max(1, left.length - 1)]));
  const ry = new Map(right.map((id, i) => [id, 30 + (i * (H - 60)) / Math.max(1, right.length - 1)]));

  const axes = [
    el("line", { class: "axis", x1: 120, x2: 120, y1: 20, y2: H - 20, stroke: "#90a4ae" }),
    el("line", { class: "axis", x1: W - 120, x2: W - 120, y1: 20, y2: H - 20, stroke: "#90a4ae" }),
  ];
  const lines = data.links.map((l) =>
    el(
      "line",
      {
        class: "leak-link",
        x1: 120, y1: (ly.get(l.from_id) ?? H / 2).toFixed(2),
        x2: W - 120, y2: (ry.get(l.to_id) ?? H / 2).toFixed(2),
        stroke: flagColor(l.flag, palette),
        "stroke-width": (0.5 + 3 * l.similarity).toFixed(2),
        "data-from": l.from_id,
        "data-to": l.to_id,
      },
      [title(`${l.from_id} (${l.from_split}) -> ${l.to_id} [${l.to_part}]: ${l.similarity.toFixed(3)}`)],
    ),
  );
  const labels = [
    ...left.map((id) =>
      el("text", { class: "tick", x: 114, y: (ly.get(id)! + 4).toFixed(2), "text-anchor": "end" }, [id]),
    ),
    ...right.map((id) =>
      el("text", { class: "tick", x: W - 114, y: (ry.get(id)! + 4).toFixed(2) }, [id]),
    ),
  ];
  return svg(W, H, [...axes, ...lines, ...labels], "c7-parallel");
}
