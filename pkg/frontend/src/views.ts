/** DOM builders for the three drill-down levels plus the sidebar and the
 * error banner. Pure functions of payload + state + navigation callback,
 * which keeps them directly testable.
 */

import { renderChart } from "./charts.js";
import { Granularity, ViewState } from "./state.js";
import {
  ChartPayload,
  PatientListItem,
  PatientSummary,
  SessionSummary,
  TrialMetrics,
} from "./types.js";

export type Navigate = (next: ViewState) => void;

function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function metric(v: number | null, digits = 3): string {
  return v === null ? "–" : v.toFixed(digits);
}

export function errorBanner(message: string, retry: () => void): HTMLElement {
  const banner = h("div", "error-banner");
  banner.appendChild(h("span", "error-message", message));
  const button = h("button", "retry-button", "Retry");
  button.addEventListener("click", retry);
  banner.appendChild(button);
  return banner;
}

/** Patient search sidebar; filtering is client-side over the full list. */
export function patientSidebar(
  patients: PatientListItem[],
  state: ViewState,
  nav: Navigate,
): HTMLElement {
  const aside = h("aside", "sidebar");
  const search = h("input", "patient-search");
  search.type = "search";
  search.placeholder = "Search patients";
  aside.appendChild(search);
  const list = h("ul", "patient-list");
  aside.appendChild(list);

  const fill = (filter: string) => {
    list.textContent = "";
    const needle = filter.trim().toLowerCase();
    for (const p of patients) {
      const hay = `${p.display_name} ${p.patient_id}`.toLowerCase();
      if (needle && !hay.includes(needle)) continue;
      const item = h("li", "patient-item");
      if (p.patient_id === state.patientId) item.classList.add("selected");
      item.dataset.patientId = p.patient_id;
      item.appendChild(h("span", "patient-name", p.display_name));
      item.appendChild(h("span", "patient-sessions", `${p.n_sessions}`));
      item.addEventListener("click", () =>
        nav({ granularity: state.granularity, patientId: p.patient_id }),
      );
      list.appendChild(item);
    }
  };
  fill("");
  search.addEventListener("input", () => fill(search.value));
  return aside;
}

function statCard(label: string, value: string): HTMLElement {
  const card = h("div", "stat-card");
  card.appendChild(h("div", "stat-value", value));
  card.appendChild(h("div", "stat-label", label));
  return card;
}

export function patientView(
  summary: PatientSummary,
  state: ViewState,
  nav: Navigate,
): HTMLElement {
  const root = h("section", "patient-view");
  root.appendChild(h("h2", "", summary.display_name));

  const cards = h("div", "stat-cards");
  cards.appendChild(statCard("Sessions completed", String(summary.n_sessions)));
  cards.appendChild(
    statCard("Total exercise time", `${Math.round(summary.total_exercise_time_s / 60)} min`),
  );
  cards.appendChild(
    statCard(
      "Average score",
      summary.average_score === null ? "–" : summary.average_score.toFixed(1),
    ),
  );
  root.appendChild(cards);

  const table = h("table", "session-table");
  const head = table.createTHead().insertRow();
  for (const col of ["Session", "Date", "Mean velocity (m/s)", "Smoothness", "Auto-corr"]) {
    head.appendChild(h("th", "", col));
  }
  const body = table.createTBody();
  for (const s of summary.sessions) {
    const row = body.insertRow();
    row.className = "session-row";
    row.dataset.sessionId = s.session_id;
    row.insertCell().textContent = s.session_id;
    row.insertCell().textContent = s.date;
    row.insertCell().textContent = metric(s.mean_velocity);
    row.insertCell().textContent = metric(s.smoothness);
    row.insertCell().textContent = metric(s.autocorr);
    row.addEventListener("click", () =>
      nav({
        granularity: state.granularity,
        patientId: summary.patient_id,
        sessionId: s.session_id,
      }),
    );
  }
  root.appendChild(table);

  const toggle = h("div", "granularity-toggle");
  for (const g of ["week", "month"] as Granularity[]) {
    const button = h("button", g === state.granularity ? "active" : "", g);
    button.dataset.granularity = g;
    button.addEventListener("click", () => nav({ ...state, granularity: g }));
    toggle.appendChild(button);
  }
  root.appendChild(toggle);
  root.appendChild(renderChart(summary.engagement));
  return root;
}

export function sessionView(
  summary: SessionSummary,
  state: ViewState,
  nav: Navigate,
): HTMLElement {
  const root = h("section", "session-view");
  root.appendChild(h("h2", "", `Session ${summary.session_id}`));
  root.appendChild(
    h(
      "p",
      "session-meta",
      `${summary.trials.length} trials, ${Math.round(summary.total_duration_s)} s total, ` +
        `mean score ${summary.mean_score === null ? "–" : summary.mean_score.toFixed(1)}`,
    ),
  );

  const toTrial = (trialId: string) =>
    nav({
      granularity: state.granularity,
      patientId: state.patientId,
      sessionId: summary.session_id,
      trialId,
    });

  const chart = summary.overview_chart;
  const trialIds = (chart.annotations["trial_ids"] as string[] | undefined) ?? [];
  root.appendChild(
    renderChart(chart, {
      onPointClick: (_payload, _series, index) => {
        const id = trialIds[index] ?? summary.trials[index]?.trial_id;
        if (id) toTrial(id);
      },
    }),
  );

  const table = h("table", "trial-table");
  const head = table.createTHead().insertRow();
  for (const col of ["Trial", "Mean velocity (m/s)", "Smoothness", "Auto-corr", "Score"]) {
    head.appendChild(h("th", "", col));
  }
  const body = table.createTBody();
  for (const t of summary.trials) {
    const row = body.insertRow();
    row.className = "trial-row";
    row.dataset.trialId = t.trial_id;
    row.insertCell().textContent = t.trial_id;
    row.insertCell().textContent = metric(t.mean_velocity);
    row.insertCell().textContent = metric(t.smoothness);
    row.insertCell().textContent = metric(t.autocorr);
    row.insertCell().textContent = t.score.toFixed(1);
    row.addEventListener("click", () => toTrial(t.trial_id));
  }
  root.appendChild(table);
  return root;
}

export function trialView(
  metrics: TrialMetrics,
  charts: ChartPayload[],
  _state: ViewState,
  _nav: Navigate,
): HTMLElement {
  const root = h("section", "trial-view");
  root.appendChild(h("h2", "", `Trial ${metrics.trial_id}`));

  const cards = h("div", "stat-cards");
  cards.appendChild(statCard("Mean speed (m/s)", metric(metrics.mean_speed_mps)));
  cards.appendChild(statCard("Smoothness (SPARC)", metric(metrics.smoothness)));
  cards.appendChild(statCard("Auto-correlation", metric(metrics.autocorr)));
  cards.appendChild(
    statCard("Cycles", metrics.n_cycles === null ? "–" : String(metrics.n_cycles)),
  );
  cards.appendChild(statCard("Score", metrics.score.toFixed(1)));
  root.appendChild(cards);

  const grid = h("div", "chart-grid");
  // context charts (session overview, engagement) are shown at their own
  // levels; the trial view shows the four trial charts
  const trialKinds = new Set(["displacement", "velocity", "autocorrelation", "spectrum"]);
  for (const payload of charts) {
    if (!trialKinds.has(payload.kind)) continue;
    grid.appendChild(renderChart(payload));
  }
  root.appendChild(grid);
  return root;
}
