// Mirrors of the session-service JSON documents. The console renders
// these verbatim; it never recomputes payoffs, boundaries or equilibria.

export interface PayoffCellDoc {
  robot: number;
  human: number;
}

export interface MatrixDoc {
  probably_risky: PayoffCellDoc[];
  safe: PayoffCellDoc[];
}

export interface StrategyDoc {
  observe_plan: number;
  observe_execution: number;
  no_observe: number;
}

export interface BoundaryDoc {
  source: string;
  no_observe_coef: number;
  observe_execution_coef: number;
  constant: number;
  degenerate: boolean;
}

export interface RegionDoc {
  empty: boolean;
  full: boolean;
  vertices: StrategyDoc[];
}

export interface OptimumDoc {
  strategy: StrategyDoc;
  human_expected_utility: number;
  binding_vertex: boolean;
}

export interface NashDoc {
  permissive_equilibria: { robot: string; human: string }[];
  constraining_equilibria: { robot: string; human: string }[];
  expected_equilibria: { robot: string; human: string }[];
  no_trust_condition: { human_side: boolean; robot_side: boolean };
  existence_probability: number;
}

export interface AnalysisDoc {
  scenario: unknown;
  cost_model: unknown;
  actions: string[];
  matrices: {
    permissive: MatrixDoc;
    constraining: MatrixDoc;
    expected: MatrixDoc;
  };
  nash: NashDoc;
  boundary: BoundaryDoc;
  epsilon: number;
  region: RegionDoc;
  optimum: OptimumDoc | null;
}

export interface SessionHandleDoc {
  session_id: string;
  created_at: string;
  scenario_id: string;
  trial_limit: number;
  seed: number;
  merged_monitoring: boolean;
  response_source: string;
  blind: boolean;
}

export interface TrialRecordDoc {
  index: number;
  strategy: StrategyDoc;
  robot_choice: string | null;
  sampled_type: string | null;
  sampled_human_action: string;
  robot_payoff: number;
  human_payoff: number;
  cumulative_human_payoff: number;
}

export interface SummaryDoc {
  session_id: string;
  scenario_id: string;
  trial_limit: number;
  seed: number;
  optimal_strategy: StrategyDoc | null;
  trials: TrialRecordDoc[];
  trial_count: number;
  mean_human_payoff: number | null;
  variance_human_payoff: number | null;
  cumulative_human_payoff: number | null;
  distance_to_optimal: number[] | null;
}

export interface ErrorDoc {
  code: string;
  message: string;
  details: unknown[];
}
