/** Shapes of the JSON payloads served by the rehabmetrics HTTP API.
 *
 * The dashboard renders exclusively from these; it computes no metrics of
 * its own. Absent metrics arrive as null and must render as gaps.
 */

export interface ChartPayload {
  kind: string;
  x: { values: Array<number | string>; unit: string };
  series: Record<string, Array<number | null>>;
  annotations: Record<string, unknown>;
  missing_reason?: string;
}

export interface PatientListItem {
  patient_id: string;
  display_name: string;
  n_sessions: number;
}

export interface SessionRow {
  session_id: string;
  date: string;
  mean_velocity: number | null;
  smoothness: number | null;
  autocorr: number | null;
}

export interface PatientSummary {
  patient_id: string;
  display_name: string;
  n_sessions: number;
  total_exercise_time_s: number;
  average_score: number | null;
  sessions: SessionRow[];
  engagement: ChartPayload;
}

export interface TrialRow {
  trial_id: string;
  mean_velocity: number | null;
  smoothness: number | null;
  autocorr: number | null;
  score: number;
  duration_s: number;
}

export interface SessionSummary {
  session_id: string;
  started_at: string;
  trials: TrialRow[];
  mean_velocity: number | null;
  smoothness: number | null;
  autocorr: number | null;
  mean_score: number | null;
  total_duration_s: number;
  overview_chart: ChartPayload;
}

export interface TrialMetrics {
  trial_id: string;
  mean_speed_mps: number | null;
  smoothness: number | null;
  autocorr: number | null;
  per_submovement_sparc: Array<number | null>;
  n_cycles: number | null;
  analysis_start_s: number;
  duration_s: number;
  score: number;
  absent: Record<string, string>;
}
