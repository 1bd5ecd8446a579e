// Playground bootstrap: tabs for freeplay, scaffolded building, and the
// minigame, all backed by the phonoblocks service.

import { Api } from "./api.js";
import { FreeplayScreen, ScaffoldScreen } from "./app.js";
import { MinigameRunner } from "./minigame.js";
import { renderKeyboard } from "./keyboard.js";

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

async function boot(): Promise<void> {
  const api = new Api("");
  const status = el("status");
  try {
    const health = await api.health();
    status.textContent = `ready: ${health.lexicon_words} words`;
  } catch {
    status.textContent = "service unreachable - retry in a moment";
    setTimeout(() => void boot(), 1500);
    return;
  }

  const freeplay = new FreeplayScreen(api, el("keyboard"), el("wordbox"),
                                      el("freeplay-status"));
  const scaffold = new ScaffoldScreen(api, el("scaffold-keyboard"),
                                      el("scaffold-box"),
                                      el("scaffold-status"));

  el("start-freeplay").addEventListener("click", () => {
    void freeplay.start("phoneme");
  });
  el("toggle-letters").addEventListener("click", () => {
    void freeplay.toggleDisplay("letters");
  });
  el("toggle-creatures").addEventListener("click", () => {
    void freeplay.toggleDisplay("creaturesWithLetters");
  });
  el("start-scaffold").addEventListener("click", () => {
    const word = (el("scaffold-word") as HTMLInputElement).value || "CAT";
    void scaffold.start(word.toUpperCase());
  });

  const runner = new MinigameRunner(api, {
    onPrompt(prompt, keyboard) {
      el("minigame-prompt").textContent =
        `find ${prompt.ipa} (${prompt.creature.name} ${prompt.creature.action})` +
        (prompt.practice ? " [practice]" : "");
      renderKeyboard(el("minigame-keyboard"), keyboard,
                     prompt.condition === "creature"
                       ? "creaturesWithLetters" : "letters",
                     (cell) => void runner.tap(cell.symbol));
    },
    onOutcome(outcome) {
      el("minigame-status").textContent = outcome.correct
        ? "found it!"
        : outcome.censored ? "moving on..." : "try again";
    },
    onDone() {
      el("minigame-status").textContent = "session finished";
      void api.records(runner.session).then((res) => {
        el("minigame-prompt").textContent =
          `${res.records.length} trials recorded`;
      });
    },
  });
  el("start-minigame").addEventListener("click", () => {
    const child = (el("minigame-child") as HTMLInputElement).value || "kid";
    const session = Number((el("minigame-session") as HTMLInputElement).value) || 1;
    void runner.start(child, session, 7);
  });
}

document.addEventListener("DOMContentLoaded", () => void boot());
