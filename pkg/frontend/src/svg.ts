// Tiny markup builder: views are pure functions from API datasets to SVG/HTML
// strings, which keeps them trivially snapshot-testable without a DOM.

export function esc(text: string | number): string {
  return String(text)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export type Attrs = Record<string, string | number | undefined>;

export function el(tag: string, attrs: Attrs = {}, children: string[] = []): string {
  const parts = Object.entries(attrs)
    .filter(([, v]) => v !== undefined)
    .map(([k, v]) => `${k}="${esc(v as string | number)}"`);
  const head = parts.length ? `<${tag} ${parts.join(" ")}` : `<${tag}`;
  if (children.length === 0) {
    return `${head}/>`;
  }
  return `${head}>${children.join("")}</${tag}>`;
}

export function svg(width: number, height: number, children: string[], cls?: string): string {
  return el(
    "svg",
    { xmlns: "http://www.w3.org/2000/svg", viewBox: `0 0 ${width} ${height}`, class: cls },
    children,
  );
}

export function title(text: string): string {
  return el("title", {}, [esc(text)]);
}

// Deterministic pseudo-jitter in [0, 1): stable renders, no RNG.
export function jitter(i: number): number {
  return ((i * 37 + 11) % 100) / 100;
}
