import { describe, expect, it } from "vitest";

import { renderChart, renderers } from "../src/charts.js";
import { ChartPayload } from "../src/types.js";
import fixtures from "./fixtures.json";

const trialCharts = fixtures[
  "/api/sessions/session1/trials/trial1/charts"
] as unknown as ChartPayload[];

function byKind(kind: string): ChartPayload {
  const found = trialCharts.find((c) => c.kind === kind);
  if (!found) throw new Error(`fixture has no ${kind} chart`);
  return found;
}

describe("renderer registry", () => {
  it("covers all six payload kinds served by the API", () => {
    for (const kind of [
      "displacement",
      "velocity",
      "autocorrelation",
      "spectrum",
      "session_overview",
      "engagement",
    ]) {
      expect(renderers[kind], kind).toBeTypeOf("function");
    }
  });

  it("renders unknown kinds with the fallback line renderer", () => {
    const payload: ChartPayload = {
      kind: "future_metric",
      x: { values: [0, 1, 2], unit: "s" },
      series: { value: [1, 2, 1] },
      annotations: {},
    };
    const card = renderChart(payload);
    expect(card.querySelectorAll("path.series-line")).toHaveLength(1);
  });
});

describe("displacement chart", () => {
  const card = renderChart(byKind("displacement"));

  it("shows the three displacement series", () => {
    const lines = card.querySelectorAll("path.series-line");
    expect(lines).toHaveLength(3);
    const names = [...lines].map((l) => l.getAttribute("data-series"));
    expect(names).toContain("y-HandRight");
    expect(names).toContain("y-Right Shoulder");
    expect(names).toContain("z-HandRight");
  });

  it("draws both limit lines and the beat markers", () => {
    expect(card.querySelectorAll("line.limit-line")).toHaveLength(2);
    // 18 s at 100 bpm: a beat every 0.6 s; the final beat at t=18.0 falls
    // just past the last sample (17.967 s) and is clipped from the plot
    expect(card.querySelectorAll("line.beat-line")).toHaveLength(30);
    expect(card.querySelectorAll("line.analysis-start")).toHaveLength(1);
  });

  it("places beat lines 0.6 s apart on the x scale", () => {
    const beats = [...card.querySelectorAll("line.beat-line")];
    const x0 = Number(beats[0].getAttribute("x1"));
    const x1 = Number(beats[1].getAttribute("x1"));
    const x2 = Number(beats[2].getAttribute("x1"));
    expect(x1 - x0).toBeCloseTo(x2 - x1, 0);
    expect(x1).toBeGreaterThan(x0);
  });
});

describe("gap handling", () => {
  it("breaks a series with nulls into separate path segments", () => {
    const payload: ChartPayload = {
      kind: "velocity",
      x: { values: [0, 1, 2, 3, 4], unit: "s" },
      series: { velocity: [1, 2, null, 3, 4] },
      annotations: {},
    };
    const d = renderChart(payload)
      .querySelector("path.series-line")!
      .getAttribute("d")!;
    expect(d.match(/M/g)).toHaveLength(2);
    expect(d).not.toContain("NaN");
  });

  it("renders null overview points as missing markers, not zeros", () => {
    const payload: ChartPayload = {
      kind: "session_overview",
      x: { values: [1, 2, 3], unit: "trial" },
      series: { smoothness: [-1.2, null, -1.4], autocorrelation: [0.3, 0.4, 0.5] },
      annotations: { trial_ids: ["t1", "t2", "t3"] },
    };
    const card = renderChart(payload);
    const smoothDots = card.querySelectorAll('circle[data-series="smoothness"]');
    expect(smoothDots).toHaveLength(2);
    expect(card.querySelectorAll('circle[data-series="autocorrelation"]')).toHaveLength(3);
  });
});

describe("missing charts", () => {
  it("renders a placeholder with the server-provided reason", () => {
    const payload: ChartPayload = {
      kind: "spectrum",
      x: { values: [], unit: "Hz" },
      series: { amplitude: [] },
      annotations: {},
      missing_reason: "window too short",
    };
    const card = renderChart(payload);
    expect(card.querySelector("svg")).toBeNull();
    expect(card.querySelector(".chart-missing")!.textContent).toBe("window too short");
  });
});

describe("interactive charts", () => {
  it("fires onPointClick with the clicked index", () => {
    const overview = byKind("session_overview");
    const clicks: Array<[string, number]> = [];
    const card = renderChart(overview, {
      onPointClick: (_p, series, index) => clicks.push([series, index]),
    });
    const dots = card.querySelectorAll("circle.chart-point");
    expect(dots.length).toBeGreaterThan(0);
    (dots[2] as SVGCircleElement).dispatchEvent(new MouseEvent("click"));
    expect(clicks).toHaveLength(1);
    expect(clicks[0][1]).toBe(Number(dots[2].getAttribute("data-index")));
  });

  it("renders engagement buckets as bars", () => {
    const engagement = fixtures["/api/patients/patient1"].engagement as ChartPayload;
    const card = renderChart(engagement);
    const bars = card.querySelectorAll("rect.bar");
    expect(bars.length).toBe(engagement.x.values.length);
  });
});

describe("spectrum chart", () => {
  it("labels the x axis in Hz from the payload unit", () => {
    const card = renderChart(byKind("spectrum"));
    expect(card.querySelector("svg")!.textContent).toContain("(Hz)");
  });
});
