import { describe, expect, it } from "vitest";

import { AnalystApp } from "../src/analyst.js";
import { ApiClient } from "../src/api.js";
import { DEFAULT_PALETTE } from "../src/palette.js";
import { fakeFetch, fixture } from "./helpers.js";

function appWithViz() {
  const { fetchFn, calls } = fakeFetch({
    "/viz/c4?": (url: string) =>
      url.includes("candidate=") ? fixture("viz_c4_candidate") : fixture("viz_c4"),
    "/viz/c4": fixture("viz_c4"),
    "/viz/c2?": (url: string) =>
      url.includes("candidate=") ? fixture("viz_c2_candidate") : fixture("viz_c2"),
    "/viz/c2": fixture("viz_c2"),
  });
  return { app: new AnalystApp(new ApiClient("", fetchFn)), calls };
}

describe("simulate overlay", () => {
  it("toggle on then off restores the before view exactly", async () => {
    const { app } = appWithViz();
    app.setView("c4");
    app.setCandidate("ui0029");
    const before = await app.render(DEFAULT_PALETTE);
    expect(before).not.toContain("tile outlined");

    app.toggleSimulate();
    const overlay = await app.render(DEFAULT_PALETTE);
    expect(overlay).toContain("tile outlined");
    expect(overlay).not.toBe(before);

    app.toggleSimulate();
    const after = await app.render(DEFAULT_PALETTE);
    expect(after).toBe(before); // byte-identical round trip
  });

  it("simulate cannot be enabled without a candidate", () => {
    const { app } = appWithViz();
    app.toggleSimulate();
    expect(app.simulate).toBe(false);
    expect(app.queryParams()).not.toHaveProperty("candidate");
  });

  it("the c4 walkthrough shows the aggregate moving while the flag comes from the server", async () => {
    const { app } = appWithViz();
    app.setView("c2");
    app.setCandidate("ui0029");
    app.toggleSimulate();
    const overlay = await app.render(DEFAULT_PALETTE);
    expect(overlay).toContain("sigma-after"); // before/after marks visible
  });
});

describe("view parameters", () => {
  it("each parameter change issues exactly one API call with the params in the URL", async () => {
    const { app, calls } = appWithViz();
    app.setView("c4");
    app.params.scope = "hypothesis";
    app.setCandidate("ui0029");
    app.toggleSimulate();
    calls.length = 0;
    await app.load();
    expect(calls.length).toBe(1);
    expect(calls[0].url).toContain("/viz/c4?");
    expect(calls[0].url).toContain("scope=hypothesis");
    expect(calls[0].url).toContain("candidate=ui0029");
  });
});

describe("decide and undo", () => {
  it("posts the decision and the undo to the batch endpoints", async () => {
    const { fetchFn, calls } = fakeFetch({
      "/batches/1/decide": { id: "s1", state: "Accepted" },
      "/batches/1/undo": { id: "s1", state: "Pending" },
    });
    const app = new AnalystApp(new ApiClient("", fetchFn));
    const decided = await app.decide(1, "s1", "accept", "ana");
    expect(decided.state).toBe("Accepted");
    const undone = await app.undo(1, "s1");
    expect(undone.state).toBe("Pending");
    expect(calls.map((c) => c.url)).toEqual(["/batches/1/decide", "/batches/1/undo"]);
    expect(calls[0].body).toEqual({ sample_id: "s1", action: "accept", analyst: "ana" });
  });
});
