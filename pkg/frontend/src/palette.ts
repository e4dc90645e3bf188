import type { Flag } from "./types.js";

export interface Palette {
  name: string;
  green: string;
  yellow: string;
  red: string;
}

export const DEFAULT_PALETTE: Palette = {
  name: "default",
  green: "#2e7d32",
  yellow: "#f9a825",
  red: "#c62828",
};

// Okabe-Ito hues, distinguishable under the common dichromacies.
export const COLORBLIND_PALETTE: Palette = {
  name: "colorblind",
  green: "#0072b2",
  yellow: "#e69f00",
  red: "#d55e00",
};

export const PALETTES: Palette[] = [DEFAULT_PALETTE, COLORBLIND_PALETTE];

// Pure lookup: the flag string always comes from an API response, the UI
// never derives a flag from numbers.
export function flagColor(flag: Flag, palette: Palette): string {
  return palette[flag];
}
