/** DOM wiring for the advisor. All math comes from the service; this file
 * only moves values between inputs, the view model, and the page. */

import { ApiClient, DistJson } from "./api.js";
import { gainCurveSvg, oneMoreCurveSvg } from "./charts.js";
import { AdvisorViewModel } from "./viewmodel.js";

const api = new ApiClient("");
const vm = new AdvisorViewModel(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmt(value: number | null | undefined, digits = 4): string {
  if (value === null || value === undefined) return "—";
  return Number(value.toPrecision(digits)).toString();
}

function renderBadge(): void {
  const badge = el<HTMLSpanElement>("badge");
  badge.textContent = vm.badge;
  badge.className = `badge ${vm.badge.toLowerCase().replace(/ /g, "-")}`;
}

function renderLog(): void {
  const body = el<HTMLTableSectionElement>("log-body");
  body.innerHTML = "";
  const best = vm.bestWorth;
  vm.log.forEach((entry, index) => {
    const row = document.createElement("tr");
    if (best !== null && Math.abs(entry.measured_worth - best) < 1e-12) {
      row.className = "best";
    }
    row.innerHTML =
      `<td>${index + 1}</td><td>${fmt(entry.measured_worth, 6)}</td>` +
      `<td>${fmt(entry.posterior_worth, 6)}</td>`;
    body.appendChild(row);
  });
  el("empty-state").hidden = vm.log.length > 0 || vm.sessionId === null;
}

function renderAdvice(): void {
  const advice = vm.advice;
  el("value-one-more").textContent = fmt(advice?.value_of_one_more);
  el("cost-readout").textContent = fmt(vm.cost?.c ?? null);
  el("posterior-best").textContent = fmt(advice?.posterior_best_worth, 6);
  el("z0-readout").textContent = fmt(advice?.z0);
  const gauge = el<HTMLDivElement>("gauge-fill");
  if (advice?.value_of_one_more != null && vm.cost) {
    const ratio = advice.value_of_one_more / Math.max(vm.cost.c, 1e-12);
    gauge.style.width = `${Math.min(100, ratio * 50)}%`;
    gauge.classList.toggle("over", ratio > 1);
  } else {
    gauge.style.width = "0";
  }
  el("one-more-chart").innerHTML = oneMoreCurveSvg(
    advice?.z0 ?? null,
    advice?.v_plus ?? null,
  );
}

function renderErrors(): void {
  for (const name of ["mu", "a", "b", "c"] as const) {
    el(`err-${name}`).textContent = vm.fieldErrors[name] ?? "";
  }
  el("service-error").textContent = vm.serviceError ?? "";
}

function renderAll(): void {
  renderBadge();
  renderLog();
  renderAdvice();
  renderErrors();
  el("session-label").textContent = vm.sessionId ?? "none";
  el<HTMLFieldSetElement>("observe-controls").disabled = vm.sessionId === null;
}

async function refreshWhatIf(): Promise<void> {
  const c = Number(el<HTMLInputElement>("whatif-c").value);
  const b = Number(el<HTMLInputElement>("whatif-b").value);
  el("whatif-c-label").textContent = fmt(c, 3);
  el("whatif-b-label").textContent = fmt(b, 3);
  const advice = await vm.updateWhatIf({ c, b });
  const badge = el<HTMLSpanElement>("whatif-badge");
  if (!advice) {
    badge.textContent = "—";
    return;
  }
  const verdict = advice.recommendation === "sample_more" ? "SAMPLE MORE" : "STOP";
  badge.textContent = `${verdict} (preview)`;
  badge.className = `badge preview ${verdict === "STOP" ? "stop" : "sample-more"}`;
}

async function refreshPlanChart(): Promise<void> {
  const plan = await vm.loadPlan();
  if (plan) {
    el("gain-chart").innerHTML = gainCurveSvg(plan.curve, plan.nStar);
  }
}

function readInputs(): void {
  vm.inputs = {
    mu: el<HTMLInputElement>("in-mu").value,
    a: el<HTMLInputElement>("in-a").value,
    b: el<HTMLInputElement>("in-b").value,
    c: el<HTMLInputElement>("in-c").value,
  };
}

async function start(): Promise<void> {
  readInputs();
  if (await vm.startSession()) {
    window.location.hash = vm.sessionId!;
    el<HTMLInputElement>("whatif-c").value = String(vm.cost!.c);
    el<HTMLInputElement>("whatif-b").value = String(vm.model!.b);
    await refreshPlanChart();
  }
  renderAll();
}

async function log(): Promise<void> {
  const input = el<HTMLInputElement>("in-measurement");
  if (await vm.logMeasurement(input.value)) {
    input.value = "";
    void refreshWhatIf();
  }
  renderAll();
}

async function planFamily(): Promise<void> {
  const family = el<HTMLSelectElement>("plan-family").value;
  const c = Number(el<HTMLInputElement>("plan-c").value);
  const alpha = Number(el<HTMLInputElement>("plan-alpha").value);
  el("plan-alpha-wrap").hidden = family !== "pareto";
  let dist: DistJson;
  if (family === "pareto") {
    dist = { family: "pareto", alpha };
  } else if (family === "uniform01") {
    dist = { family: "uniform", lo: 0, hi: 1 };
  } else {
    dist = { family: "std_normal" };
  }
  try {
    const plan = await vm.loadIdealPlan(dist, c);
    const notice = el("plan-notice");
    if (plan.diverges) {
      notice.textContent =
        "gain diverges: with this fat a tail the expected gain grows without bound, sample as many as you can";
      el("plan-chart").innerHTML = "";
    } else {
      notice.textContent = "";
      el("plan-chart").innerHTML = gainCurveSvg(plan.curve, plan.nStar);
    }
  } catch (error) {
    el("plan-notice").textContent = String(error);
  }
}

async function init(): Promise<void> {
  el("start-btn").addEventListener("click", () => void start());
  el("log-btn").addEventListener("click", () => void log());
  el<HTMLInputElement>("in-measurement").addEventListener("keydown", (event) => {
    if (event.key === "Enter") void log();
  });
  el("whatif-c").addEventListener("input", () => void refreshWhatIf());
  el("whatif-b").addEventListener("input", () => void refreshWhatIf());
  el("plan-run").addEventListener("click", () => void planFamily());
  el<HTMLSelectElement>("plan-family").addEventListener("change", () => {
    el("plan-alpha-wrap").hidden = el<HTMLSelectElement>("plan-family").value !== "pareto";
  });

  const sessionId = window.location.hash.replace(/^#/, "");
  if (sessionId) {
    if (await vm.restore(sessionId)) {
      el<HTMLInputElement>("in-mu").value = vm.inputs.mu;
      el<HTMLInputElement>("in-a").value = vm.inputs.a;
      el<HTMLInputElement>("in-b").value = vm.inputs.b;
      el<HTMLInputElement>("in-c").value = vm.inputs.c;
      el<HTMLInputElement>("whatif-c").value = String(vm.cost!.c);
      el<HTMLInputElement>("whatif-b").value = String(vm.model!.b);
      await refreshPlanChart();
    }
  }
  renderAll();
}

void init();
