import { describe, expect, it } from "vitest";

import { decodeState, encodeState, normalizeState, ViewState } from "../src/state.js";

describe("ViewState encoding", () => {
  it("round-trips a full drill-down state", () => {
    const state: ViewState = {
      patientId: "patient1",
      sessionId: "session2",
      trialId: "trial3",
      granularity: "month",
      tab: "velocity",
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("encodes the empty state as an empty hash", () => {
    expect(encodeState({ granularity: "week" })).toBe("");
    expect(decodeState("")).toEqual({ granularity: "week" });
  });

  it("defaults granularity to week and omits it from the hash", () => {
    const hash = encodeState({ patientId: "p1", granularity: "week" });
    expect(hash).toBe("#p=p1");
    expect(decodeState(hash).granularity).toBe("week");
  });

  it("drops a trial without a session and a session without a patient", () => {
    expect(decodeState("#t=t1").trialId).toBeUndefined();
    expect(decodeState("#s=s1&t=t1").sessionId).toBeUndefined();
    const full = decodeState("#p=p1&s=s1&t=t1");
    expect(full).toMatchObject({ patientId: "p1", sessionId: "s1", trialId: "t1" });
  });

  it("normalizes invalid granularity to week", () => {
    expect(decodeState("#g=day").granularity).toBe("week");
    expect(normalizeState({ granularity: "day" as never }).granularity).toBe("week");
  });

  it("survives ids that need URL encoding", () => {
    const state: ViewState = { patientId: "p 1/ä", granularity: "week" };
    expect(decodeState(encodeState(state)).patientId).toBe("p 1/ä");
  });
});
