// Typed client for the phonoblocks service. The server is authoritative
// for all game logic; this module only shapes requests and responses.

export interface KeyboardCell {
  symbol: string;
  row: number;
  col: number;
  ipa?: string;
  klass?: string;
  group?: number | null;
  glyph_id?: string;
  creature?: string;
  forms?: string[];
  phoneme?: string;
}

export interface KeyboardGrid {
  mode: string;
  condition?: string;
  rows: number;
  cols: number;
  cells: KeyboardCell[];
}

export interface BlockJson {
  id: number;
  kind: "phoneme" | "letter";
  symbol: string;
  display_form: string;
  creature_glyph: string | null;
}

export interface WordBoxJson {
  blocks: BlockJson[];
  mode: string;
  display_mode: string;
  pronunciation: string[];
  text: string;
}

export interface ScaffoldEventJson {
  kind: string;
  step_index: number;
  detail: Record<string, unknown>;
}

export interface ScaffoldStateJson {
  word: string;
  step_index: number;
  attempts_at_step: number;
  placed: string[];
  complete: boolean;
  keyboard: { id: string; phoneme: string; chunk: string }[];
}

export interface MinigamePrompt {
  phoneme: string;
  ipa: string;
  condition: "letter" | "creature";
  practice: boolean;
  index: number;
  total: number;
  creature: { name: string; action: string; glyph_id: string };
}

export interface MinigameStateJson {
  child_id: string;
  session: number;
  done: boolean;
  attempts: number;
  completed_trials: number;
  total_trials: number;
  prompt: MinigamePrompt | null;
}

export interface TrialRecordJson {
  child_id: string;
  phoneme: string;
  condition: string;
  session: number;
  errors: number;
  censored: boolean;
  time_ms: number | null;
}

export interface AnswerOutcome {
  correct: boolean;
  errors?: number;
  attempts?: number;
  censored: boolean;
  done: boolean;
  prompt: MinigamePrompt | null;
  keyboard?: KeyboardGrid;
}

export interface Interpretation {
  word: string;
  phonemes: string[];
  score: number;
  channel: string;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class Api {
  constructor(private base: string = "") {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      let detail = res.statusText;
      try {
        const parsed = await res.json();
        if (parsed && parsed.detail) detail = String(parsed.detail);
      } catch {
        // keep statusText
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  health() {
    return this.call<{ status: string; lexicon_words: number }>("GET", "/health");
  }

  keyboard(mode: string, condition?: string) {
    const q = condition ? `?mode=${mode}&condition=${condition}` : `?mode=${mode}`;
    return this.call<KeyboardGrid>("GET", `/keyboard${q}`);
  }

  createFreeplay(mode: "phoneme" | "letter") {
    return this.call<{ session_id: string; state: WordBoxJson }>(
      "POST", "/session", { kind: "freeplay", mode });
  }

  createScaffolded(word: string, seed?: number) {
    return this.call<{
      session_id: string;
      state: ScaffoldStateJson;
      events: ScaffoldEventJson[];
    }>("POST", "/session", { kind: "scaffolded", word, seed });
  }

  placeSymbol(sessionId: string, symbol: string, kind?: string) {
    return this.call<{ box: WordBoxJson }>(
      "POST", `/session/${sessionId}/place`, { symbol, kind });
  }

  pickBlock(sessionId: string, blockId: string) {
    return this.call<{ events: ScaffoldEventJson[]; state: ScaffoldStateJson }>(
      "POST", `/session/${sessionId}/place`, { block_id: blockId });
  }

  toggleDisplay(sessionId: string, displayMode: string) {
    return this.call<Record<string, unknown>>(
      "POST", `/session/${sessionId}/toggle-display`, { display_mode: displayMode });
  }

  interpret(sessionId: string, k: number) {
    return this.call<{ interpretations: Interpretation[] }>(
      "POST", `/session/${sessionId}/interpret`, { k });
  }

  startMinigame(childId: string, session: number, seed: number) {
    return this.call<{
      session_id: string;
      state: MinigameStateJson;
      keyboard: KeyboardGrid;
    }>("POST", "/minigame/start", { child_id: childId, session, seed });
  }

  answer(sessionId: string, symbol: string, timeMs: number) {
    return this.call<AnswerOutcome>(
      "POST", `/minigame/${sessionId}/answer`,
      { symbol, time_ms: Math.round(timeMs) });
  }

  records(sessionId: string) {
    return this.call<{ records: TrialRecordJson[]; done: boolean }>(
      "GET", `/minigame/${sessionId}/records`);
  }
}
