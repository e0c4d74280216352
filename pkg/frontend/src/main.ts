import { ServiceClient, ServiceError } from "./api";
import { buildChartModel, renderRegionChartSvg } from "./chart";
import {
  ConsoleSession,
  normalizeStrategy,
  sliderToMergedStrategy,
} from "./session";

const DELIVERY_SCENARIO = {
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

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class ConsoleApp {
  private session: ConsoleSession | null = null;
  private busy = false;

  private banner = el<HTMLDivElement>("banner");
  private scenarioInput = el<HTMLTextAreaElement>("scenario-doc");
  private baseUrlInput = el<HTMLInputElement>("base-url");
  private trialLimitInput = el<HTMLInputElement>("trial-limit");
  private expertToggle = el<HTMLInputElement>("expert-mode");
  private revealToggle = el<HTMLInputElement>("reveal-optimum");
  private startButton = el<HTMLButtonElement>("start-session");
  private playArea = el<HTMLDivElement>("play-area");
  private slider = el<HTMLInputElement>("monitor-slider");
  private sliderLabel = el<HTMLSpanElement>("slider-label");
  private expertInputs = el<HTMLDivElement>("expert-inputs");
  private submitButton = el<HTMLButtonElement>("submit-trial");
  private trialTable = el<HTMLTableSectionElement>("trial-rows");
  private hintTable = el<HTMLTableSectionElement>("hint-rows");
  private chartHost = el<HTMLDivElement>("chart");
  private summaryHost = el<HTMLDivElement>("summary");

  constructor() {
    this.scenarioInput.value = JSON.stringify(DELIVERY_SCENARIO, null, 2);
    this.startButton.onclick = () => void this.start();
    this.submitButton.onclick = () => void this.submit();
    this.slider.oninput = () => this.updateSliderLabel();
    this.expertToggle.onchange = () => this.updateModeVisibility();
    this.updateSliderLabel();
    this.updateModeVisibility();
  }

  private notify(message: string, isError = false): void {
    this.banner.textContent = message;
    this.banner.className = isError ? "banner error" : "banner";
  }

  private updateSliderLabel(): void {
    const minutes = Number(this.slider.value);
    this.sliderLabel.textContent = `${minutes} min monitoring / ${
      60 - minutes
    } min other work`;
  }

  private updateModeVisibility(): void {
    const expert = this.expertToggle.checked;
    this.slider.parentElement!.style.display = expert ? "none" : "";
    this.expertInputs.style.display = expert ? "" : "none";
  }

  private async start(): Promise<void> {
    let document_: unknown;
    try {
      document_ = JSON.parse(this.scenarioInput.value);
    } catch (exc) {
      this.notify(`scenario is not valid JSON: ${exc}`, true);
      return;
    }
    const client = new ServiceClient(this.baseUrlInput.value.replace(/\/$/, ""));
    this.startButton.disabled = true;
    try {
      this.session = await ConsoleSession.start(client, document_, {
        trialLimit: Number(this.trialLimitInput.value) || 5,
        expertMode: this.expertToggle.checked,
        revealOptimum: this.revealToggle.checked,
      });
    } catch (exc) {
      this.notify(this.describeError(exc), true);
      this.startButton.disabled = false;
      return;
    }
    this.startButton.disabled = false;
    this.trialTable.innerHTML = "";
    this.summaryHost.innerHTML = "";
    this.playArea.style.display = "";
    this.submitButton.disabled = false;
    this.notify(
      `session ${this.session.handle.session_id} started: ` +
        `${this.session.handle.trial_limit} trials. Split your hour between ` +
        `monitoring the robot and your other work; after each trial you see ` +
        `your realized utility.`
    );
    this.renderHints();
    this.renderChart();
  }

  private describeError(exc: unknown): string {
    if (exc instanceof ServiceError) {
      const detail = exc.details.length ? ` (${exc.details.join("; ")})` : "";
      return `${exc.code}: ${exc.message}${detail} — check the service and retry`;
    }
    return `service unreachable: ${exc} — check the base URL and retry`;
  }

  private readStrategy(): number[] {
    if (this.expertToggle.checked) {
      const values = ["q-plan", "q-exec", "q-none"].map((id) =>
        Number(el<HTMLInputElement>(id).value)
      );
      return normalizeStrategy(values);
    }
    return sliderToMergedStrategy(Number(this.slider.value));
  }

  private async submit(): Promise<void> {
    if (!this.session || this.busy || this.session.atLimit) return;
    this.busy = true;
    this.submitButton.disabled = true;
    try {
      const record = await this.session.submitTrial(this.readStrategy());
      this.appendTrialRow(record);
      this.renderChart();
      if (this.session.finished) {
        this.renderSummary();
        this.notify("session complete — optimum revealed on the chart");
      } else {
        this.notify(
          `trial ${record.index}: utility ${record.human_payoff.toFixed(3)}, ` +
            `cumulative ${record.cumulative_human_payoff.toFixed(3)}`
        );
      }
    } catch (exc) {
      this.notify(this.describeError(exc), true);
    } finally {
      this.busy = false;
      this.submitButton.disabled = !this.session || this.session.atLimit;
    }
  }

  private appendTrialRow(record: {
    index: number;
    strategy: { observe_plan: number; observe_execution: number; no_observe: number };
    robot_choice: string | null;
    human_payoff: number;
    cumulative_human_payoff: number;
  }): void {
    const row = document.createElement("tr");
    const s = record.strategy;
    row.innerHTML =
      `<td>${record.index}</td>` +
      `<td>(${s.observe_plan.toFixed(3)}, ${s.observe_execution.toFixed(3)}, ${s.no_observe.toFixed(3)})</td>` +
      `<td>${record.robot_choice ?? "hidden"}</td>` +
      `<td>${record.human_payoff.toFixed(3)}</td>` +
      `<td>${record.cumulative_human_payoff.toFixed(3)}</td>`;
    this.trialTable.appendChild(row);
  }

  private renderHints(): void {
    if (!this.session) return;
    this.hintTable.innerHTML = "";
    for (const hint of this.session.utilityHints()) {
      const row = document.createElement("tr");
      row.innerHTML =
        `<td>${hint.action.replace(/_/g, " ")}</td>` +
        `<td>${hint.permissive.toFixed(3)}</td>` +
        `<td>${hint.constraining.toFixed(3)}</td>`;
      this.hintTable.appendChild(row);
    }
  }

  private renderChart(): void {
    if (!this.session) return;
    const model = buildChartModel(
      this.session.analysis,
      this.session.trialRows,
      this.session.optimumVisible
    );
    this.chartHost.innerHTML = renderRegionChartSvg(model);
  }

  private renderSummary(): void {
    const summary = this.session?.summary;
    if (!summary) return;
    const mean = summary.mean_human_payoff;
    const variance = summary.variance_human_payoff;
    const optimum = this.session!.analysis.optimum;
    this.summaryHost.innerHTML =
      `<h3>session summary</h3>` +
      `<p>mean utility ${mean?.toFixed(4)}, variance ${variance?.toFixed(4)}, ` +
      `cumulative ${summary.cumulative_human_payoff?.toFixed(4)}</p>` +
      (optimum
        ? `<p>optimal split: review plan ${optimum.strategy.observe_plan.toFixed(3)}, ` +
          `watch execution ${optimum.strategy.observe_execution.toFixed(3)}, ` +
          `no observation ${optimum.strategy.no_observe.toFixed(3)} ` +
          `(expected utility ${optimum.human_expected_utility.toFixed(4)})</p>`
        : `<p>no deterring strategy exists for this scenario</p>`);
  }
}

window.addEventListener("DOMContentLoaded", () => new ConsoleApp());
