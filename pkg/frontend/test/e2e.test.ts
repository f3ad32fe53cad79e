/** End-to-end: the UI view-model against a live optistop service, with the
 * CLI advisor as the parity oracle for every verdict. */

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";
import { AdvisorViewModel, Badge } from "../src/viewmodel.js";

const PORT = 8900 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

beforeAll(async () => {
  service = spawn("python3", ["-m", "optistop", "serve", "--port", String(PORT)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const deadline = Date.now() + 45_000;
  for (;;) {
    try {
      const ping = await fetch(`${BASE}/v1/rankits?family=uniform01&max_n=1`);
      if (ping.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
});

afterAll(() => {
  service?.kill();
});

interface Model {
  mu: number;
  a: number;
  b: number;
  c: number;
}

/** Deterministic scripted sequences: a small LCG, nothing fancy. */
function scriptedSequences(): { model: Model; values: number[] }[] {
  let state = 123456789 >>> 0;
  const next = () => {
    state = (1664525 * state + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
  const sequences: { model: Model; values: number[] }[] = [];
  for (let i = 0; i < 20; i++) {
    // cheap sampling for even sequences (mostly SAMPLE MORE), pricey for odd
    // ones (stops early), plus a couple of noise-free models
    const model: Model = {
      mu: Math.round(next() * 20 - 10),
      a: 1 + Math.round(next() * 40) / 10,
      b: i % 5 === 0 ? 0 : Math.round(next() * 50) / 10,
      c: i % 2 === 0 ? 0.02 + next() * 0.05 : 0.3 + next(),
    };
    const count = 2 + Math.floor(next() * 6);
    const values: number[] = [];
    for (let k = 0; k < count; k++) {
      const spread = Math.hypot(model.a, model.b);
      values.push(Math.round((model.mu + (next() * 6 - 3) * spread) * 100) / 100);
    }
    sequences.push({ model, values });
  }
  return sequences;
}

function runCliAdvisor(model: Model, values: number[]): Promise<Badge[]> {
  return new Promise((resolve, reject) => {
    const child = spawn(
      "python3",
      [
        "-m", "optistop", "advise",
        "--mu", String(model.mu),
        "--a", String(model.a),
        "--b", String(model.b),
        "--c", String(model.c),
      ],
      { stdio: ["pipe", "pipe", "pipe"] },
    );
    let out = "";
    let err = "";
    child.stdout.on("data", (chunk) => (out += chunk));
    child.stderr.on("data", (chunk) => (err += chunk));
    child.on("error", reject);
    child.on("close", (code) => {
      if (code !== 0) {
        reject(new Error(`advise exited ${code}: ${err}`));
        return;
      }
      const verdicts = out
        .trim()
        .split("\n")
        .filter((line) => line.length > 0)
        .map((line) => JSON.parse(line).recommendation as "sample_more" | "stop")
        .map((rec): Badge => (rec === "sample_more" ? "SAMPLE MORE" : "STOP"));
      resolve(verdicts);
    });
    child.stdin.write(values.map((v) => String(v)).join("\n") + "\n");
    child.stdin.end();
  });
}

async function runUiAdvisor(model: Model, values: number[]): Promise<{ badges: Badge[]; vm: AdvisorViewModel }> {
  const vm = new AdvisorViewModel(new ApiClient(BASE));
  vm.inputs = { mu: String(model.mu), a: String(model.a), b: String(model.b), c: String(model.c) };
  expect(await vm.startSession()).toBe(true);
  const badges: Badge[] = [];
  for (const value of values) {
    expect(await vm.logMeasurement(String(value))).toBe(true);
    badges.push(vm.badge);
  }
  return { badges, vm };
}

describe("verdict parity with the CLI advisor", () => {
  it("matches the CLI verdict at every step of 20 scripted sequences", async () => {
    const sequences = scriptedSequences();
    const cliRuns = await Promise.all(
      sequences.map(({ model, values }) => runCliAdvisor(model, values)),
    );
    let stops = 0;
    let steps = 0;
    for (let i = 0; i < sequences.length; i++) {
      const { model, values } = sequences[i]!;
      const cli = cliRuns[i]!;
      const { badges } = await runUiAdvisor(model, values);

      // the CLI terminates at its first STOP; parity holds step for step
      // over everything it emitted, including that final STOP
      expect(cli.length).toBeGreaterThan(0);
      for (let k = 0; k < cli.length; k++) {
        expect(badges[k], `sequence ${i} step ${k}`).toBe(cli[k]);
      }
      if (cli.length < values.length) {
        expect(cli[cli.length - 1]).toBe("STOP");
      }
      stops += cli.filter((b) => b === "STOP").length;
      steps += cli.length;
    }
    // the script must genuinely exercise both verdicts
    expect(stops).toBeGreaterThan(3);
    expect(steps - stops).toBeGreaterThan(10);
  });
});

describe("refresh persistence", () => {
  it("rebuilds the identical log and verdict from the session id", async () => {
    const model: Model = { mu: 10, a: 3, b: 4, c: 0.1 };
    const { badges, vm } = await runUiAdvisor(model, [15, 12, 14.5]);

    const reloaded = new AdvisorViewModel(new ApiClient(BASE));
    expect(await reloaded.restore(vm.sessionId!)).toBe(true);
    expect(reloaded.log).toEqual(vm.log);
    expect(reloaded.badge).toBe(badges[badges.length - 1]);
    expect(reloaded.advice).toEqual(vm.advice);
    expect(reloaded.bestMeasured).toBe(vm.bestMeasured);
    expect(reloaded.inputs).toEqual({ mu: "10", a: "3", b: "4", c: "0.1" });
  });

  it("reports unknown sessions cleanly", async () => {
    const vm = new AdvisorViewModel(new ApiClient(BASE));
    expect(await vm.restore("not-a-session")).toBe(false);
    expect(vm.serviceError).toMatch(/unknown_session/);
  });
});

describe("what-if previews", () => {
  it("flips the preview, not the live badge (documented example)", async () => {
    const model: Model = { mu: 10, a: 3, b: 4, c: 0.1 };
    const { vm } = await runUiAdvisor(model, [15]);
    expect(vm.badge).toBe("SAMPLE MORE"); // value of one more ~0.150 > 0.1

    const preview = await vm.updateWhatIf({ c: 0.2 });
    expect(preview?.recommendation).toBe("stop"); // 0.150 < 0.2
    expect(vm.badge).toBe("SAMPLE MORE");

    // the stored session is untouched by the preview
    const summary = await new ApiClient(BASE).getSession(vm.sessionId!);
    expect(summary.advice.recommendation).toBe("sample_more");
    expect(summary.cost.c).toBe(0.1);
  });

  it("previews a noisier instrument via the error-spread slider", async () => {
    const model: Model = { mu: 0, a: 2, b: 0, c: 0.05 };
    const { vm } = await runUiAdvisor(model, [5.0]);
    expect(vm.badge).toBe("STOP"); // strong best with exact measurement
    const preview = await vm.updateWhatIf({ b: 5 });
    expect(preview?.recommendation).toBe("sample_more");
  });
});

describe("planning views", () => {
  it("marks the gain-curve optimum for the live model", async () => {
    const model: Model = { mu: 0, a: 1, b: 0, c: 0.06 };
    const { vm } = await runUiAdvisor(model, [0.5]);
    const plan = await vm.loadPlan(40);
    expect(plan?.diverges).toBe(false);
    expect(plan?.nStar).toBeGreaterThan(1);
    const gains = new Map(plan!.curve);
    expect(Math.max(...plan!.curve.map(([, g]) => g))).toBeCloseTo(
      gains.get(plan!.nStar!)!,
      12,
    );
  });

  it("surfaces the divergent-gain notice for a fat tail", async () => {
    const vm = new AdvisorViewModel(new ApiClient(BASE));
    vm.inputs = { mu: "0", a: "1", b: "0", c: "0.1" };
    await vm.startSession();
    const plan = await vm.loadIdealPlan({ family: "pareto", alpha: 0.5 }, 1.0, 30);
    expect(plan.diverges).toBe(true);
    expect(plan.curve).toEqual([]);
  });
});
