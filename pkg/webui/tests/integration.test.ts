/**
 * Full play round-trip against a locally spawned service process:
 * fetch riddle -> two wrong guesses -> one alternative-valid guess ->
 * reveal. Client-observed verdicts must match direct API calls, and no
 * pre-reveal response body may carry an intended-answer field.
 */
import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { GameController, GameState } from "../src/game.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = join(__dirname, "..", "..");

let server: ChildProcess;
let storeDir: string;

const waitForService = async (): Promise<void> => {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/riddles/warmup-probe`);
      if (response.status === 404) {
        return;
      }
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up in time");
};

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), "riddle-store-"));
  server = spawn(
    "python3",
    ["-m", "riddlekit.cli", "serve", "--port", String(PORT), "--store", storeDir],
    { cwd: REPO_ROOT, stdio: "ignore" }
  );
  await waitForService();
}, 40_000);

afterAll(() => {
  server?.kill();
  if (storeDir) {
    rmSync(storeDir, { recursive: true, force: true });
  }
});

describe("play round-trip against a live service", () => {
  it("completes a full game with verdicts matching direct API calls", async () => {
    const preRevealBodies: string[] = [];
    let revealStarted = false;
    const recordingFetch: typeof fetch = async (input, init) => {
      const response = await fetch(input, init);
      if (!revealStarted) {
        preRevealBodies.push(await response.clone().text());
      }
      return response;
    };

    const api = new ServiceClient(BASE, recordingFetch);
    const states: GameState[] = [];
    const controller = new GameController(api, (state) => states.push(state), () => "webui-session");

    // spoon's attributes are all shared with ladle in the bundled KB, so
    // "ladle" is a guaranteed alternative-valid guess for this riddle
    await controller.start("descriptive", "spoon", 7);
    expect(controller.snapshot().phase).toBe("playing");
    expect(controller.visibleClues()).toHaveLength(1);
    const riddleId = controller.snapshot().view!.id;

    controller.nextClue();
    expect(controller.visibleClues()).toHaveLength(2);

    await controller.submitGuess("volcano");
    await controller.submitGuess("dragon");
    await controller.submitGuess("ladle");
    const played = controller.snapshot();
    expect(played.session?.guesses.map((guess) => guess.verdict)).toEqual([
      "invalid",
      "invalid",
      "alternative-valid",
    ]);
    expect(played.session?.wrongCount).toBe(2);
    expect(played.phase).toBe("playing");

    revealStarted = true;
    await controller.reveal();
    const finished = controller.snapshot();
    expect(finished.phase).toBe("revealed");
    expect(finished.intended).toBe("spoon");
    expect(finished.answers).toContain("ladle");
    expect(finished.answers).toContain("spoon");

    // the same guesses through the raw API (fresh session) give identical verdicts
    const direct = async (text: string) => {
      const response = await fetch(`${BASE}/riddles/${riddleId}/guess`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ session_id: "direct-session", text }),
      });
      return (await response.json()).verdict as string;
    };
    expect(await direct("volcano")).toBe("invalid");
    expect(await direct("dragon")).toBe("invalid");
    expect(await direct("ladle")).toBe("alternative-valid");

    // no pre-reveal body ever carried the intended answer
    expect(preRevealBodies.length).toBeGreaterThanOrEqual(4);
    for (const body of preRevealBodies) {
      expect(body).not.toContain('"intended"');
    }
  }, 30_000);

  it("keeps the answers endpoint sealed until reveal", async () => {
    const api = new ServiceClient(BASE);
    const created = await api.createRiddle({ genre: "poetic", concept: "river", seed: 3 });

    const sealed = await fetch(
      `${BASE}/riddles/${created.id}/answers?session_id=sealed-session`
    );
    expect(sealed.status).toBe(403);

    await fetch(`${BASE}/riddles/${created.id}/reveal`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ session_id: "sealed-session" }),
    });
    const open = await fetch(
      `${BASE}/riddles/${created.id}/answers?session_id=sealed-session`
    );
    expect(open.status).toBe(200);
  });

  it("surfaces a service error without crashing when the port is wrong", async () => {
    const api = new ServiceClient("http://127.0.0.1:1");
    const states: GameState[] = [];
    const controller = new GameController(api, (state) => states.push(state));
    await controller.start("poetic");
    expect(controller.snapshot().phase).toBe("error");
    expect(controller.snapshot().message.length).toBeGreaterThan(0);
  });
});
