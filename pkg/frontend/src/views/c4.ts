import { flagColor, type Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC4 } from "../types.js";

const W = 640;
const H = 300;

interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

// Slice-and-dice treemap layout: alternate cut direction each step,
// proportional to tile size. Deterministic, no dependencies.
function layout(sizes: number[], frame: Rect): Rect[] {
  const out: Rect[] = [];
  let rest = { ...frame };
  let total = sizes.reduce((a, b) => a + b, 0);
  sizes.forEach((s, i) => {
    const frac = total > 0 ? s / total : 1 / (sizes.length - i);
    if (i === sizes.length - 1) {
      out.push({ ...rest });
      return;
    }
    if (rest.w >= rest.h) {
      const w = rest.w * frac;
      out.push({ x: rest.x, y: rest.y, w, h: rest.h });
      rest = { x: rest.x + w, y: rest.y, w: rest.w - w, h: rest.h };
    } else {
      const h = rest.h * frac;
      out.push({ x: rest.x, y: rest.y, w: rest.w, h });
      rest = { x: rest.x, y: rest.y + h, w: rest.w, h: rest.h - h };
    }
    total -= s;
  });
  return out;
}

// Treemap of per-sample intra-sentence similarity (tile area = distance from
// the corpus mean, candidate outlined), with the click-through heatmap of the
// candidate's word pairs. Tooltip values are the server-provided pairwise
// similarities, verbatim.
export function renderC4(data: VizC4, palette: Palette): string {
  const tiles = data.treemap;
  const sizes = tiles.map((t) => Math.max(t.size, 1e-6));
  const rects = layout(sizes, { x: 0, y: 0, w: W, h: H });
  const tileEls = tiles.map((t, i) => {
    const r = rects[i];
    return el(
      "rect",
      {
        class: t.outlined ? "tile outlined" : "tile",
        x: r.x.toFixed(2), y: r.y.toFixed(2),
        width: Math.max(1, r.w - 1).toFixed(2),
        height: Math.max(1, r.h - 1).toFixed(2),
        fill: flagColor(t.flag, palette),
        stroke: t.outlined ? "#000" : "#fff",
        "stroke-width": t.outlined ? 3 : 1,
        "data-id": t.id,
      },
      [title(`${t.id}: raw ${t.raw.toFixed(3)}, artifact ${t.artifact.toFixed(3)}`)],
    );
  });

  const pieces = [svg(W, H, tileEls, "c4-treemap")];
  if (data.heatmap.length) {
    const words = [...new Set(data.heatmap.flatMap((c) => [c.u, c.v]))].sort();
    const cell = Math.min(36, W / Math.max(1, words.length));
    const index = new Map(words.map((w, i) => [w, i]));
    const cells = data.heatmap.map((c) =>
      el(
        "rect",
        {
          class: "heat-cell",
          x: (index.get(c.u)! * cell).toFixed(2),
          y: (index.get(c.v)! * cell).toFixed(2),
          width: cell - 1,
          height: cell - 1,
          fill: flagColor(c.flag, palette),
          "data-u": c.u,
          "data-v": c.v,
        },
        [title(`${c.u} / ${c.v}: ${c.value}`)],
      ),
    );
    pieces.push(svg(W, words.length * cell, cells, "c4-heatmap"));
  }
  return pieces.join("");
}
