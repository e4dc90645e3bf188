"""Traffic-signal thresholds and component tuning parameters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

COMPONENTS = ("c1", "c2", "c3", "c4", "c5", "c6", "c7")
BILINEAR_COMPONENTS = ("c3", "c4", "c5")


@dataclass
class ThresholdConfig:
    """Per-component flag boundaries plus the knobs each component needs.

    green_max/yellow_max bound the artifact level (green inclusive at
    green_max, yellow inclusive at yellow_max, red above). Bilinear
    components carry an optimum band [lo, hi] on the raw similarity axis.
    """

    green_max: dict[str, float] = field(
        default_factory=lambda: {c: 0.33 for c in COMPONENTS}
    )
    yellow_max: dict[str, float] = field(
        default_factory=lambda: {c: 0.67 for c in COMPONENTS}
    )
    bands: dict[str, tuple[float, float]] = field(
        default_factory=lambda: {c: (0.2, 0.8) for c in BILINEAR_COMPONENTS}
    )
    tau_link: float = 0.5
    sigma_star: dict[int, float] = field(
        default_factory=lambda: {1: 1.0, 2: 1.0, 3: 1.0}
    )
    length_band: tuple[float, float] = (3.0, 25.0)
    overall_green_max: float = 0.33
    overall_yellow_max: float = 0.67

    def validate(self) -> None:
        for c in COMPONENTS:
            g, y = self.green_max[c], self.yellow_max[c]
            if not (0.0 <= g < y <= 1.0):
                raise ValueError(f"{c}: need 0 <= green_max < yellow_max <= 1, got {g}, {y}")
        for c, (lo, hi) in self.bands.items():
            if not lo < hi:
                raise ValueError(f"{c}: band lo {lo} must be < hi {hi}")
        for g, s in self.sigma_star.items():
            if s <= 0:
                raise ValueError(f"sigma_star[{g}] must be positive, got {s}")

    def to_dict(self) -> dict:
        return {
            "green_max": dict(self.green_max),
            "yellow_max": dict(self.yellow_max),
            "bands": {c: list(b) for c, b in self.bands.items()},
            "tau_link": self.tau_link,
            "sigma_star": {str(g): s for g, s in self.sigma_star.items()},
            "length_band": list(self.length_band),
            "overall_green_max": self.overall_green_max,
            "overall_yellow_max": self.overall_yellow_max,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdConfig":
        cfg = cls(
            green_max=dict(d["green_max"]),
            yellow_max=dict(d["yellow_max"]),
            bands={c: tuple(b) for c, b in d["bands"].items()},
            tau_link=d.get("tau_link", 0.5),
            sigma_star={int(g): s for g, s in d["sigma_star"].items()},
            length_band=tuple(d.get("length_band", (3.0, 25.0))),
            overall_green_max=d.get("overall_green_max", 0.33),
            overall_yellow_max=d.get("overall_yellow_max", 0.67),
        )
        cfg.validate()
        return cfg

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "ThresholdConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
