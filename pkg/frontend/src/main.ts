/** Single-page wiring: hash routing, data loading with stale-response
 * discarding, and top-level error handling (banner with retry, never a
 * blank screen).
 */

import { ApiClient, RequestGate } from "./api.js";
import { decodeState, encodeState, normalizeState, ViewState } from "./state.js";
import { ChartPayload, PatientListItem, PatientSummary, SessionSummary, TrialMetrics } from "./types.js";
import { errorBanner, patientSidebar, patientView, sessionView, trialView } from "./views.js";

export class Dashboard {
  state: ViewState = { granularity: "week" };
  private gate = new RequestGate();

  constructor(
    private root: HTMLElement,
    private client: ApiClient,
    private syncHash = false,
  ) {}

  go(next: ViewState): Promise<void> {
    this.state = normalizeState(next);
    if (this.syncHash) {
      const hash = encodeState(this.state);
      if (hash !== window.location.hash) window.location.hash = hash;
    }
    return this.render();
  }

  /** Re-read the hash (back/forward navigation). */
  onHashChange(): Promise<void> {
    this.state = decodeState(window.location.hash);
    return this.render();
  }

  async render(): Promise<void> {
    const token = this.gate.next();
    const nav = (next: ViewState) => void this.go(next);
    let patients: PatientListItem[];
    let main: HTMLElement;
    try {
      patients = await this.client.get<PatientListItem[]>("/api/patients");
      main = await this.mainPanel(nav);
    } catch (err) {
      if (!this.gate.isLive(token)) return;
      this.root.textContent = "";
      this.root.appendChild(
        errorBanner(err instanceof Error ? err.message : String(err), () => void this.render()),
      );
      return;
    }
    if (!this.gate.isLive(token)) return; // a newer navigation won
    this.root.textContent = "";
    const layout = document.createElement("div");
    layout.className = "layout";
    layout.appendChild(patientSidebar(patients, this.state, nav));
    const panel = document.createElement("main");
    panel.className = "main-panel";
    panel.appendChild(this.breadcrumbs(nav));
    panel.appendChild(main);
    layout.appendChild(panel);
    this.root.appendChild(layout);
  }

  private async mainPanel(nav: (next: ViewState) => void): Promise<HTMLElement> {
    const s = this.state;
    if (s.patientId && s.sessionId && s.trialId) {
      const base = `/api/sessions/${encodeURIComponent(s.sessionId)}/trials/${encodeURIComponent(s.trialId)}`;
      const [metrics, charts] = await Promise.all([
        this.client.get<TrialMetrics>(`${base}/metrics`),
        this.client.get<ChartPayload[]>(`${base}/charts`),
      ]);
      return trialView(metrics, charts, s, nav);
    }
    if (s.patientId && s.sessionId) {
      const summary = await this.client.get<SessionSummary>(
        `/api/sessions/${encodeURIComponent(s.sessionId)}`,
      );
      return sessionView(summary, s, nav);
    }
    if (s.patientId) {
      const pid = encodeURIComponent(s.patientId);
      const summary = await this.client.get<PatientSummary>(`/api/patients/${pid}`);
      if (s.granularity !== "week") {
        summary.engagement = await this.client.get<ChartPayload>(
          `/api/patients/${pid}/engagement?granularity=${s.granularity}`,
        );
      }
      return patientView(summary, s, nav);
    }
    const welcome = document.createElement("section");
    welcome.className = "welcome";
    welcome.textContent = "Select a patient to begin.";
    return welcome;
  }

  private breadcrumbs(nav: (next: ViewState) => void): HTMLElement {
    const s = this.state;
    const bar = document.createElement("nav");
    bar.className = "breadcrumbs";
    const crumb = (label: string, target: ViewState | null) => {
      const node = document.createElement(target ? "a" : "span");
      node.textContent = label;
      if (target) {
        (node as HTMLAnchorElement).href = encodeState(target) || "#";
        node.addEventListener("click", (e) => {
          e.preventDefault();
          nav(target);
        });
      }
      bar.appendChild(node);
    };
    crumb("Patients", s.patientId ? { granularity: s.granularity } : null);
    if (s.patientId) {
      crumb(
        s.patientId,
        s.sessionId ? { granularity: s.granularity, patientId: s.patientId } : null,
      );
    }
    if (s.sessionId) {
      crumb(
        s.sessionId,
        s.trialId
          ? { granularity: s.granularity, patientId: s.patientId, sessionId: s.sessionId }
          : null,
      );
    }
    if (s.trialId) crumb(s.trialId, null);
    return bar;
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const dash = new Dashboard(root, new ApiClient(), true);
  window.addEventListener("hashchange", () => void dash.onHashChange());
  void dash.onHashChange();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
