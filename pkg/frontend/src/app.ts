// Screen orchestration: freeplay, scaffolded building, minigame. All
// transitions go through the server; these classes wire DOM events to
// API calls and re-render from responses.

import { Api, type KeyboardCell, type ScaffoldEventJson, type WordBoxJson } from "./api.js";
import { clearCue, highlightCue, renderKeyboard } from "./keyboard.js";
import {
  applyScaffoldResponse,
  cueTargetFrom,
  initialViewState,
  morphedBlocks,
  wasRejected,
  withBox,
  withFreeplay,
  withKeyboard,
  withScaffold,
  type ViewState,
} from "./state.js";
import { renderWordBox, shake } from "./wordbox.js";

export function speak(text: string): void {
  // built-in speech when available, silent otherwise; captions always shown
  const w = globalThis as { speechSynthesis?: SpeechSynthesis };
  if (w.speechSynthesis && typeof SpeechSynthesisUtterance !== "undefined") {
    w.speechSynthesis.speak(new SpeechSynthesisUtterance(text));
  }
}

export class FreeplayScreen {
  state: ViewState = initialViewState();
  private previousBox: WordBoxJson | null = null;
  private busy = false;

  constructor(
    private api: Api,
    private keyboardEl: HTMLElement,
    private boxEl: HTMLElement,
    private statusEl: HTMLElement,
  ) {}

  async start(mode: "phoneme" | "letter"): Promise<void> {
    const kb = await this.api.keyboard(mode === "phoneme" ? "phoneme" : "letter");
    this.state = withKeyboard(this.state, kb);
    const created = await this.api.createFreeplay(mode);
    this.state = withFreeplay(this.state, created.session_id, created.state);
    this.render();
  }

  async tap(cell: KeyboardCell): Promise<void> {
    if (this.busy || !this.state.sessionId) return;
    this.busy = true;
    try {
      const res = await this.api.placeSymbol(this.state.sessionId, cell.symbol);
      this.previousBox = this.state.box;
      this.state = withBox(this.state, res.box);
      this.render();
    } finally {
      this.busy = false;
    }
  }

  async toggleDisplay(displayMode: string): Promise<void> {
    if (!this.state.sessionId) return;
    await this.api.toggleDisplay(this.state.sessionId, displayMode);
    const res = await this.api.interpret(this.state.sessionId, 1)
      .catch(() => null);
    void res;
    // re-fetch authoritative state
    const kb = this.state.keyboard;
    const current = await fetchBox(this.api, this.state.sessionId);
    if (current) {
      this.previousBox = this.state.box;
      this.state = withBox(this.state, current);
    }
    if (kb) this.state = withKeyboard(this.state, kb);
    this.render();
  }

  private render(): void {
    if (this.state.keyboard) {
      renderKeyboard(this.keyboardEl, this.state.keyboard,
                     this.state.displayMode, (cell) => void this.tap(cell));
    }
    if (this.state.box) {
      renderWordBox(this.boxEl, this.state.box, this.previousBox);
      const morphs = morphedBlocks(this.previousBox, this.state.box);
      if (morphs.size > 0) {
        const parts = [...morphs.values()].map(([a, b]) => `${a}→${b}`);
        this.statusEl.textContent = `morph: ${parts.join(", ")}`;
      } else {
        this.statusEl.textContent = this.state.box.text;
      }
    }
  }
}

async function fetchBox(api: Api, sessionId: string): Promise<WordBoxJson | null> {
  try {
    const res = await fetch(`/session/${sessionId}`);
    const body = await res.json();
    return body.state as WordBoxJson;
  } catch {
    return null;
  }
}

export class ScaffoldScreen {
  state: ViewState = initialViewState();
  private busy = false;

  constructor(
    private api: Api,
    private keyboardEl: HTMLElement,
    private boxEl: HTMLElement,
    private statusEl: HTMLElement,
  ) {}

  async start(word: string, seed?: number): Promise<void> {
    const created = await this.api.createScaffolded(word, seed);
    this.state = withScaffold(initialViewState(), created.session_id,
                              created.state, created.events);
    this.announce(created.events);
    this.render();
  }

  async pick(blockId: string): Promise<ScaffoldEventJson[]> {
    if (this.busy || !this.state.sessionId || !this.state.scaffold) return [];
    this.busy = true;
    try {
      const res = await this.api.pickBlock(this.state.sessionId, blockId);
      this.state = applyScaffoldResponse(this.state, res.state, res.events);
      if (wasRejected(res.events)) shake(this.boxEl);
      const cue = cueTargetFrom(res.events);
      if (cue) highlightCue(this.keyboardEl, this.cueSymbol(cue));
      else if (res.events.some((e) => e.kind === "place" || e.kind === "autoPlace")) {
        clearCue(this.keyboardEl);
      }
      this.announce(res.events);
      this.render();
      return res.events;
    } finally {
      this.busy = false;
    }
  }

  private cueSymbol(blockId: string): string {
    const found = this.state.scaffold?.keyboard.find((b) => b.id === blockId);
    return found ? found.phoneme : blockId;
  }

  private announce(events: ScaffoldEventJson[]): void {
    for (const e of events) {
      if (e.kind === "enunciate" && typeof e.detail.phoneme === "string") {
        speak(e.detail.phoneme);
      }
    }
  }

  private render(): void {
    const scaffold = this.state.scaffold;
    if (!scaffold) return;
    const grid = {
      mode: "scaffold",
      rows: 1,
      cols: Math.max(scaffold.keyboard.length, 1),
      cells: scaffold.keyboard.map((b, i) => ({
        symbol: b.phoneme, row: 0, col: i, forms: [b.chunk],
      })),
    };
    renderKeyboard(this.keyboardEl, grid, "creaturesWithLetters", (cell) => {
      const block = scaffold.keyboard.find((b) => b.phoneme === cell.symbol);
      if (block) void this.pick(block.id);
    });
    this.boxEl.textContent = "";
    for (const chunk of scaffold.placed) {
      const tile = this.boxEl.ownerDocument.createElement("div");
      tile.className = "tile tile-placed";
      tile.textContent = chunk;
      this.boxEl.appendChild(tile);
    }
    this.statusEl.textContent = scaffold.complete
      ? `built ${scaffold.word}!`
      : `step ${scaffold.step_index + 1}: listen...`;
  }
}
