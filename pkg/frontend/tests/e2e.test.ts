// End-to-end against the real service: scripted scaffolded CAT build,
// the TRUCK freeplay morph, and two full minigame sessions whose
// server-side records must satisfy the pairing and censoring invariants.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { existsSync } from "node:fs";
import { mkdtemp } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Api, type TrialRecordJson } from "../src/api.js";
import { MinigameRunner } from "../src/minigame.js";
import type { MinigamePrompt, KeyboardGrid, AnswerOutcome } from "../src/api.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;
const ARTIFACTS = resolve(__dirname, "..", ".e2e-artifacts");

let server: ChildProcess | null = null;
const api = new Api(BASE);

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/health`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 300));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  if (!existsSync(join(ARTIFACTS, "manifest.json"))) {
    const build = spawnSync(
      "python3", ["-m", "phonoblocks.cli", "build-lexicon", "--dict",
                  "bundled", "--out", ARTIFACTS],
      { stdio: "inherit", timeout: 220_000 });
    if (build.status !== 0) throw new Error("build-lexicon failed");
  }
  const logDir = await mkdtemp(join(tmpdir(), "pb-e2e-"));
  server = spawn(
    "python3", ["-m", "phonoblocks.cli", "serve", "--port", String(PORT),
                "--artifacts", ARTIFACTS],
    { stdio: ["ignore", "inherit", "inherit"], cwd: logDir });
  await waitForHealth(120_000);
}, 340_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("scaffolded CAT build", () => {
  it("completes with correct picks and rejects wrong ones", async () => {
    const created = await api.createScaffolded("CAT", 11);
    expect(created.events[0].kind).toBe("enunciate");
    let state = created.state;
    const seenEvents: string[] = created.events.map((e) => e.kind);

    // one deliberate wrong pick first: mechanism 4 keeps the prefix clean
    const wrong = state.keyboard.find((b) => b.phoneme !== "K")!;
    const rejected = await api.pickBlock(created.session_id, wrong.id);
    expect(rejected.events.map((e) => e.kind)).toContain("reject");
    expect(rejected.state.placed).toEqual([]);
    state = rejected.state;

    const targets: Record<number, string> = { 0: "K", 1: "AE", 2: "T" };
    while (!state.complete) {
      const target = state.keyboard.find(
        (b) => b.phoneme === targets[state.step_index])!;
      const res = await api.pickBlock(created.session_id, target.id);
      seenEvents.push(...res.events.map((e) => e.kind));
      state = res.state;
    }
    expect(state.placed).toEqual(["C", "A", "T"]);
    expect(seenEvents).toContain("complete");
  });
});

describe("freeplay TRUCK morph", () => {
  it("morphs the vowel tile to U when K lands", async () => {
    const created = await api.createFreeplay("phoneme");
    const sid = created.session_id;
    let box = created.state;
    for (const symbol of ["T", "R", "AH"]) {
      box = (await api.placeSymbol(sid, symbol)).box;
    }
    const vowel = box.blocks.find((b) => b.symbol === "AH")!;
    const beforeForm = vowel.display_form;
    const after = (await api.placeSymbol(sid, "K")).box;
    const vowelAfter = after.blocks.find((b) => b.id === vowel.id)!;
    expect(vowelAfter.display_form).toBe("U");
    expect(vowelAfter.display_form).not.toBe(beforeForm);
    expect(after.text).toBe("TRUCK");
    // the phoneme payload never changed
    expect(vowelAfter.symbol).toBe("AH");
  });
});

describe("full minigame", () => {
  // client-side pairing check over server-side records
  function checkPairing(records: TrialRecordJson[]): void {
    const seen = new Map<string, Map<string, number>>();
    for (const r of records) {
      if (r.phoneme === "T" || r.phoneme === "B") continue; // practice
      const key = `${r.child_id}:${r.phoneme}`;
      const conditions = seen.get(key) ?? new Map<string, number>();
      expect(conditions.has(r.condition)).toBe(false);
      conditions.set(r.condition, r.session);
      seen.set(key, conditions);
    }
    for (const [key, conditions] of seen) {
      expect(conditions.size, key).toBe(2);
      expect(conditions.get("letter")).not.toBe(conditions.get("creature"));
    }
  }

  async function playSession(session: number): Promise<TrialRecordJson[]> {
    const prompts: MinigamePrompt[] = [];
    let keyboardSeen: KeyboardGrid | null = null;
    const outcomes: AnswerOutcome[] = [];
    let done = false;
    const runner = new MinigameRunner(api, {
      onPrompt(prompt, keyboard) {
        prompts.push(prompt);
        keyboardSeen = keyboard;
      },
      onOutcome(outcome) {
        outcomes.push(outcome);
      },
      onDone() {
        done = true;
      },
      now: () => Date.now(),
    });
    await runner.start("e2e-kid", session, 99);
    expect(prompts.length).toBe(1);
    expect(prompts[0].practice).toBe(true);

    let guard = 0;
    while (!done && guard++ < 100) {
      const prompt = prompts[prompts.length - 1];
      expect(keyboardSeen!.condition).toBe(prompt.condition);
      if (prompt.phoneme === "Z" && !prompt.practice) {
        // miss three times on purpose: the trial must censor
        await runner.tap("Q");
        await runner.tap("X");
        await runner.tap("J");
      } else {
        const symbol = prompt.phoneme === "K" ? "C" : prompt.phoneme;
        await runner.tap(symbol);
      }
    }
    expect(done).toBe(true);
    // 2 practice + 8 test prompts per session
    expect(prompts.length).toBe(10);

    const res = await api.records(runner.session);
    expect(res.done).toBe(true);
    return res.records;
  }

  it("plays both sessions; records pass pairing and censoring", async () => {
    const all = [...(await playSession(1)), ...(await playSession(2))];
    expect(all.length).toBe(20);
    for (const r of all) {
      expect(r.censored).toBe(r.errors === 3);
      expect(r.time_ms === null).toBe(r.censored);
      if (r.phoneme === "Z") {
        expect(r.censored).toBe(true);
      } else {
        expect(r.errors).toBe(0);
        expect(r.time_ms).toBeGreaterThanOrEqual(0);
      }
    }
    const testRecords = all.filter((r) => r.phoneme !== "T" && r.phoneme !== "B");
    expect(testRecords.length).toBe(16);
    checkPairing(all);
  }, 120_000);
});
