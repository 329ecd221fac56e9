/** ViewState <-> URL hash. The whole view is deep-linkable: reloading a
 * URL restores the exact drill-down position.
 *
 * Hierarchy invariant: trialId implies sessionId implies patientId; decode
 * silently drops orphaned levels so hand-edited URLs cannot produce an
 * inconsistent state.
 */

export type Granularity = "week" | "month";

export interface ViewState {
  patientId?: string;
  sessionId?: string;
  trialId?: string;
  granularity: Granularity;
  tab?: string;
}

export function normalizeState(s: ViewState): ViewState {
  const out: ViewState = { granularity: s.granularity === "month" ? "month" : "week" };
  if (s.patientId) {
    out.patientId = s.patientId;
    if (s.sessionId) {
      out.sessionId = s.sessionId;
      if (s.trialId) out.trialId = s.trialId;
    }
  }
  if (s.tab) out.tab = s.tab;
  return out;
}

export function encodeState(s: ViewState): string {
  const clean = normalizeState(s);
  const q = new URLSearchParams();
  if (clean.patientId) q.set("p", clean.patientId);
  if (clean.sessionId) q.set("s", clean.sessionId);
  if (clean.trialId) q.set("t", clean.trialId);
  if (clean.granularity !== "week") q.set("g", clean.granularity);
  if (clean.tab) q.set("tab", clean.tab);
  const enc = q.toString();
  return enc ? "#" + enc : "";
}

export function decodeState(hash: string): ViewState {
  const q = new URLSearchParams(hash.replace(/^#/, ""));
  return normalizeState({
    patientId: q.get("p") ?? undefined,
    sessionId: q.get("s") ?? undefined,
    trialId: q.get("t") ?? undefined,
    granularity: q.get("g") === "month" ? "month" : "week",
    tab: q.get("tab") ?? undefined,
  });
}
