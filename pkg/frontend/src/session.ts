import { ServiceClient } from "./api";
import type {
  AnalysisDoc,
  SessionHandleDoc,
  StrategyDoc,
  SummaryDoc,
  TrialRecordDoc,
} from "./types";

export interface ConsoleOptions {
  trialLimit: number;
  seed?: number;
  /** Single monitor-vs-other-work slider (the default) or the full
   * three-action strategy input. */
  expertMode?: boolean;
  /** Show the optimum marker during play instead of after the session. */
  revealOptimum?: boolean;
}

/** Clamp raw weights to the simplex: negatives to zero, then normalize.
 * The last component absorbs rounding so the sum is exactly 1. */
export function normalizeStrategy(weights: number[]): number[] {
  const clamped = weights.map((w) => (Number.isFinite(w) && w > 0 ? w : 0));
  const total = clamped.reduce((acc, w) => acc + w, 0);
  const scaled = total > 0 ? clamped.map((w) => w / total) : clamped.map(() => 0);
  if (total === 0) scaled[scaled.length - 1] = 1;
  const head = scaled.slice(0, -1).reduce((acc, w) => acc + w, 0);
  scaled[scaled.length - 1] = Math.max(0, 1 - head);
  return scaled;
}

/** Minutes-of-the-hour slider -> (monitor, don't monitor) pair. */
export function sliderToMergedStrategy(minutes: number, totalMinutes = 60): number[] {
  const fraction = Math.min(Math.max(minutes / totalMinutes, 0), 1);
  return normalizeStrategy([fraction, 1 - fraction]);
}

export interface UtilityHintRow {
  action: string;
  permissive: number;
  constraining: number;
}

/** One supervision session as the console sees it: server documents only. */
export class ConsoleSession {
  readonly trialRows: TrialRecordDoc[] = [];
  summary: SummaryDoc | null = null;

  private constructor(
    private client: ServiceClient,
    readonly handle: SessionHandleDoc,
    readonly analysis: AnalysisDoc,
    readonly options: ConsoleOptions
  ) {}

  static async start(
    client: ServiceClient,
    scenarioDocument: unknown,
    options: ConsoleOptions
  ): Promise<ConsoleSession> {
    const { scenario_id } = await client.uploadScenario(scenarioDocument);
    const analysis = await client.getAnalysis(scenario_id);
    const handle = await client.createSession(scenario_id, {
      trial_limit: options.trialLimit,
      seed: options.seed,
      merged_monitoring: !options.expertMode,
    });
    return new ConsoleSession(client, handle, analysis, options);
  }

  get atLimit(): boolean {
    return this.trialRows.length >= this.handle.trial_limit;
  }

  get finished(): boolean {
    return this.atLimit;
  }

  get cumulativePayoff(): number {
    const last = this.trialRows[this.trialRows.length - 1];
    return last ? last.cumulative_human_payoff : 0;
  }

  /** The optimum marker stays hidden during play unless revealed. */
  get optimumVisible(): boolean {
    return Boolean(this.options.revealOptimum) || this.finished;
  }

  /** Per-action supervisor utilities against the safe plan row of each
   * type, straight from the server matrices. */
  utilityHints(): UtilityHintRow[] {
    const { actions, matrices } = this.analysis;
    return actions.map((action, column) => ({
      action,
      permissive: matrices.permissive.safe[column].human,
      constraining: matrices.constraining.safe[column].human,
    }));
  }

  /** Post one trial. ``weights`` is a merged pair in slider mode or a
   * full triple in expert mode; it is normalized before posting. */
  async submitTrial(weights: number[]): Promise<TrialRecordDoc> {
    if (this.atLimit) {
      throw new Error("session is at its trial limit");
    }
    const normalized = normalizeStrategy(weights);
    const record = await this.client.postTrial(this.handle.session_id, normalized);
    this.trialRows.push(record);
    if (this.finished) {
      this.summary = await this.client.getSummary(this.handle.session_id);
    }
    return record;
  }

  async refreshSummary(): Promise<SummaryDoc> {
    this.summary = await this.client.getSummary(this.handle.session_id);
    return this.summary;
  }

  strategies(): StrategyDoc[] {
    return this.trialRows.map((row) => row.strategy);
  }
}
