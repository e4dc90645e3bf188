import { flagColor, type Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC3 } from "../types.js";

const W = 640;
const H = 360;

// Similarity graph: accepted samples on a circle, links for pairs above the
// link threshold with thickness growing as the similarity approaches 1, plus
// the candidate's nearest-neighbour bars when the overlay is active.
export function renderC3(data: VizC3, palette: Palette): string {
  const cx = W / 2;
  const cy = H / 2;
  const radius = Math.min(W, H) / 2 - 30;
  const pos = new Map<string, [number, number]>();
  data.nodes.forEach((n, i) => {
    const a = (2 * Math.PI * i) / Math.max(1, data.nodes.length);
    pos.set(n.id, [cx + radius * Math.cos(a), cy + radius * Math.sin(a)]);
  });

  const links = data.links.flatMap((l) => {
    const a = pos.get(l.source);
    const b = pos.get(l.target);
    if (!a || !b) {
      return [];
    }
    const closeness = (l.similarity - data.tau_link) / Math.max(1e-9, 1 - data.tau_link);
    return [
      el(
        "line",
        {
          class: "link",
          x1: a[0], y1: a[1], x2: b[0], y2: b[1],
          stroke: "#78909c",
          "stroke-width": (1 + 4 * Math.max(0, Math.min(1, closeness))).toFixed(2),
        },
        [title(`${l.source} - ${l.target}: ${l.similarity.toFixed(3)}`)],
      ),
    ];
  });
  const nodes = data.nodes.map((n) => {
    const p = pos.get(n.id)!;
    return el(
      "circle",
      { class: "node", cx: p[0], cy: p[1], r: 6, fill: flagColor(n.flag, palette), "data-id": n.id },
      [title(`${n.id} (${n.split})`)],
    );
  });

  const pieces = [svg(W, H, [...links, ...nodes], "c3-graph")];
  if (data.bars.length) {
    const bh = 18;
    const bars = data.bars.map((b, i) =>
      el(
        "rect",
        {
          class: "sim-bar",
          x: 0, y: i * (bh + 2),
          width: Math.max(1, b.similarity * (W - 120)),
          height: bh,
          fill: flagColor(b.flag, palette),
          "data-id": b.id,
        },
        [title(`${b.id}: ${b.similarity.toFixed(3)}`)],
      ),
    );
    pieces.push(svg(W, data.bars.length * (bh + 2), bars, "c3-candidate-bars"));
  }
  return pieces.join("");
}
