import { flagColor, type Palette } from "../palette.js";
import { el, svg, title } from "../svg.js";
import type { VizC2 } from "../types.js";

const W = 640;
const H = 260;

// Bubble chart of n-gram frequencies plus a bullet chart comparing the
// current length-spread sigma against the ideal sigma*, with an optional
// "after" mark when a candidate overlay is active.
export function renderC2(data: VizC2, palette: Palette): string {
  const maxCount = Math.max(1, ...data.bubbles.map((b) => b.count));
  const cols = Math.max(1, Math.ceil(Math.sqrt(data.bubbles.length)));
  const cell = W / cols;
  const bubbles = data.bubbles.map((b, i) => {
    const r = 4 + 18 * Math.sqrt(b.count / maxCount);
    const cx = (i % cols) * cell + cell / 2;
    const cy = Math.floor(i / cols) * cell * 0.6 + cell / 2;
    return el(
      "circle",
      { class: "bubble", cx, cy, r, fill: flagColor(b.flag, palette), "data-gram": b.gram },
      [title(`"${b.gram}" x${b.count}`)],
    );
  });

  const { sigma_current, sigma_star, sigma_after } = data.bullet;
  const maxSigma = Math.max(sigma_current, sigma_star, sigma_after ?? 0, 1e-9) * 1.2;
  const x = (v: number) => (v / maxSigma) * (W - 40) + 20;
  const bullet = [
    el("rect", { class: "bullet-track", x: 20, y: 20, width: W - 40, height: 16, fill: "#eceff1" }),
    el("line", {
      class: "sigma-star",
      x1: x(sigma_star), x2: x(sigma_star), y1: 12, y2: 44, stroke: "#000", "stroke-width": 2,
    }),
    el("rect", {
      class: "sigma-current",
      x: 20, y: 24, width: Math.max(0, x(sigma_current) - 20), height: 8, fill: "#607d8b",
    }),
  ];
  if (sigma_after !== null) {
    bullet.push(
      el("line", {
        class: "sigma-after",
        x1: x(sigma_after), x2: x(sigma_after), y1: 16, y2: 40,
        stroke: "#1565c0", "stroke-dasharray": "3 2", "stroke-width": 2,
      }, [title(`sigma after candidate: ${sigma_after.toFixed(4)}`)]),
    );
  }

  return [
    el("p", { class: "granularity" }, [`n-gram granularity: ${data.granularity}`]),
    svg(W, H, bubbles, "c2-bubbles"),
    svg(W, 56, bullet, "c2-bullet"),
  ].join("");
}
