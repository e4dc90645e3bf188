import { flagColor, type Palette } from "../palette.js";
import { el } from "../svg.js";
import type { BatchDto, CorpusReport } from "../types.js";

function chip(color: string, label: string): string {
  return el("span", { class: "flag-chip", style: `background:${color}` }, [label]);
}

// Analyst home: corpus-level aggregates per component (values and flags
// straight from GET /corpus/report) and the batch queue.
export function renderHome(report: CorpusReport, batches: BatchDto[], palette: Palette): string {
  const rows = report.components.map((c) =>
    el("tr", { "data-component": c.component }, [
      el("td", {}, [c.component]),
      el("td", { class: "aggregate" }, [c.aggregate.toFixed(4)]),
      el("td", {}, [chip(flagColor(c.flag, palette), c.flag)]),
      el("td", {}, [
        `g${c.flag_histogram.green} / y${c.flag_histogram.yellow} / r${c.flag_histogram.red}`,
      ]),
      el("td", { class: "worst" }, [
        c.worst.map((w) => `${w.id} (${w.artifact.toFixed(3)})`).join(", "),
      ]),
    ]),
  );
  const table = el("table", { class: "corpus-report" }, [
    el("thead", {}, [
      el("tr", {}, ["component", "aggregate", "flag", "histogram", "worst"].map((h) => el("th", {}, [h]))),
    ]),
    el("tbody", {}, rows),
  ]);

  const queue = el(
    "ul",
    { class: "batches" },
    batches.map((b) =>
      el("li", { "data-batch": String(b.id), class: b.closed ? "closed" : "open" }, [
        `batch ${b.id}: ${Object.keys(b.decisions).length}/${b.sample_ids.length} decided`,
      ]),
    ),
  );
  return [
    el("p", { class: "corpus-size" }, [`accepted corpus: ${report.size} samples`]),
    table,
    queue,
  ].join("");
}
