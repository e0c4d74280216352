// Recorded session-service responses for the bundled delivery scenario
// (session seed 11).  Captured verbatim from a live service run; the
// contract tests below replay them through a fake fetch.

import type {
  AnalysisDoc,
  SessionHandleDoc,
  SummaryDoc,
  TrialRecordDoc,
} from "../src/types";

export const SCENARIO_DOC = {
  ensemble: [
    { id: "tray_unsafe", executable_risky: false },
    { id: "tray_ok", executable_risky: true },
  ],
  robot: {
    planning_time: { safe: 0.19, risky: 0.177 },
    plan_weight: 3.8,
    exec_cost: { safe: 14, risky: 10 },
    partial_exec_cost: 3,
    goal_penalty_factor: 2,
  },
  human: {
    plan_obs_factor: 0.25,
    exec_obs_cost: { safe: 8, risky: 4 },
    partial_exec_obs_cost: 1.5,
    plan_inconvenience: 0.95,
    exec_inconvenience: 8,
    violation_cost: 20,
  },
};

export const ANALYSIS: AnalysisDoc = {
  scenario: SCENARIO_DOC,
  cost_model: {
    robot: {
      plan_cost: { safe: 3.8, risky: 3.54 },
      exec_cost: { safe: 14.0, risky: 10.0 },
      partial_exec_cost: 3.0,
      goal_penalty: 20.0,
    },
    human: {
      plan_obs_cost: { safe: 0.95, risky: 0.885 },
      exec_obs_cost: { safe: 8.0, risky: 4.0 },
      partial_exec_obs_cost: 1.5,
      plan_inconvenience: 0.95,
      exec_inconvenience: 8.0,
      violation_cost: 20.0,
    },
    robustness: 0.5,
  },
  actions: ["observe_plan", "observe_execution", "no_observe"],
  matrices: {
    permissive: {
      probably_risky: [
        { robot: -13.54, human: -0.885 },
        { robot: -13.54, human: -4.0 },
        { robot: -13.54, human: 0.0 },
      ],
      safe: [
        { robot: -17.8, human: -0.95 },
        { robot: -17.8, human: -8.0 },
        { robot: -17.8, human: 0.0 },
      ],
    },
    constraining: {
      probably_risky: [
        { robot: -23.54, human: -1.835 },
        { robot: -26.54, human: -9.5 },
        { robot: -13.54, human: -20.0 },
      ],
      safe: [
        { robot: -17.8, human: -0.95 },
        { robot: -17.8, human: -8.0 },
        { robot: -17.8, human: 0.0 },
      ],
    },
    expected: {
      probably_risky: [
        { robot: -18.54, human: -1.3599999999999999 },
        { robot: -20.04, human: -6.75 },
        { robot: -13.54, human: -10.0 },
      ],
      safe: [
        { robot: -17.8, human: -0.95 },
        { robot: -17.8, human: -8.0 },
        { robot: -17.8, human: 0.0 },
      ],
    },
  },
  nash: {
    permissive_equilibria: [{ robot: "probably_risky", human: "no_observe" }],
    constraining_equilibria: [],
    expected_equilibria: [],
    no_trust_condition: { human_side: false, robot_side: false },
    existence_probability: 0.5,
  },
  boundary: {
    source: "constraining",
    no_observe_coef: 10.0,
    observe_execution_coef: -3.0,
    constant: -5.739999999999998,
    degenerate: false,
  },
  epsilon: 0.0,
  region: {
    empty: false,
    full: false,
    vertices: [
      { observe_plan: 1.0, observe_execution: 0.0, no_observe: 0.0 },
      {
        observe_plan: 0.42600000000000016,
        observe_execution: 0.0,
        no_observe: 0.5739999999999998,
      },
      {
        observe_plan: 0.0,
        observe_execution: 0.32769230769230784,
        no_observe: 0.6723076923076922,
      },
      { observe_plan: 0.0, observe_execution: 1.0, no_observe: 0.0 },
    ],
  },
  optimum: {
    strategy: {
      observe_plan: 0.42600000000000016,
      observe_execution: 0.0,
      no_observe: 0.5739999999999998,
    },
    human_expected_utility: -0.4047000000000001,
    binding_vertex: true,
  },
};

export const HANDLE: SessionHandleDoc = {
  session_id: "72c30955772a",
  created_at: "2026-08-09T21:24:13.303680+00:00",
  scenario_id: "289f11d8a83c",
  trial_limit: 5,
  seed: 11,
  merged_monitoring: false,
  response_source: "constraining",
  blind: false,
};

export const TRIAL_PLAN_REVIEW: TrialRecordDoc = {
  index: 1,
  strategy: { observe_plan: 1.0, observe_execution: 0.0, no_observe: 0.0 },
  robot_choice: "safe",
  sampled_type: "permissive",
  sampled_human_action: "observe_plan",
  robot_payoff: -17.8,
  human_payoff: -0.95,
  cumulative_human_payoff: -0.95,
};

export const TRIAL_NO_OBSERVE: TrialRecordDoc = {
  index: 2,
  strategy: { observe_plan: 0.0, observe_execution: 0.0, no_observe: 1.0 },
  robot_choice: "probably_risky",
  sampled_type: "constraining",
  sampled_human_action: "no_observe",
  robot_payoff: -13.54,
  human_payoff: -20.0,
  cumulative_human_payoff: -20.95,
};

export const SUMMARY: SummaryDoc = {
  session_id: "72c30955772a",
  scenario_id: "289f11d8a83c",
  trial_limit: 5,
  seed: 11,
  optimal_strategy: {
    observe_plan: 0.42600000000000016,
    observe_execution: 0.0,
    no_observe: 0.5739999999999998,
  },
  trials: [TRIAL_PLAN_REVIEW, TRIAL_NO_OBSERVE],
  trial_count: 2,
  mean_human_payoff: -10.475,
  variance_human_payoff: 90.72562500000001,
  cumulative_human_payoff: -20.95,
  distance_to_optimal: [0.8117585848021563, 0.6024549775709387],
};

type Responder = (body: unknown) => { status: number; body: unknown };

/** A fetch stand-in that replays the recorded responses and records
 * every request it sees. */
export function makeFakeFetch(overrides: Record<string, Responder> = {}) {
  const requests: { method: string; path: string; body: unknown }[] = [];
  let trialCount = 0;

  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    requests.push({ method, path, body });

    const key = `${method} ${path}`;
    const override = overrides[key];
    if (override) {
      const result = override(body);
      return jsonResponse(result.status, result.body);
    }

    if (key === "POST /scenarios") {
      return jsonResponse(201, { scenario_id: HANDLE.scenario_id });
    }
    if (key === `GET /scenarios/${HANDLE.scenario_id}/analysis`) {
      return jsonResponse(200, ANALYSIS);
    }
    if (key === `POST /scenarios/${HANDLE.scenario_id}/sessions`) {
      return jsonResponse(201, HANDLE);
    }
    if (key === `POST /sessions/${HANDLE.session_id}/trials`) {
      trialCount += 1;
      if (trialCount > HANDLE.trial_limit) {
        return jsonResponse(409, {
          code: "trial_limit_reached",
          message: "session already holds 5 trials",
          details: [],
        });
      }
      const record = trialCount === 1 ? TRIAL_PLAN_REVIEW : TRIAL_NO_OBSERVE;
      return jsonResponse(200, { ...record, index: trialCount });
    }
    if (key === `GET /sessions/${HANDLE.session_id}/summary`) {
      return jsonResponse(200, SUMMARY);
    }
    return jsonResponse(404, {
      code: "unknown",
      message: `no fixture for ${key}`,
      details: [],
    });
  };

  return { fetchFn, requests };
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
