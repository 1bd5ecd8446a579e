// Minigame loop: show a prompt, time the child until the correct tap,
// submit the elapsed time. The server decides correctness and censors
// a trial after three misses; the client only measures and displays.

import type { Api, AnswerOutcome, KeyboardGrid, MinigamePrompt } from "./api.js";

export interface MinigameHooks {
  onPrompt(prompt: MinigamePrompt, keyboard: KeyboardGrid): void;
  onOutcome(outcome: AnswerOutcome): void;
  onDone(): void;
  now?: () => number;
}

export class MinigameRunner {
  private sessionId = "";
  private prompt: MinigamePrompt | null = null;
  private keyboard: KeyboardGrid | null = null;
  private promptShownAt = 0;
  private inFlight = false;
  private readonly now: () => number;

  constructor(private api: Api, private hooks: MinigameHooks) {
    this.now = hooks.now ?? (() => performance.now());
  }

  async start(childId: string, session: number, seed: number): Promise<void> {
    const res = await this.api.startMinigame(childId, session, seed);
    this.sessionId = res.session_id;
    this.showPrompt(res.state.prompt, res.keyboard);
  }

  get session(): string {
    return this.sessionId;
  }

  private showPrompt(prompt: MinigamePrompt | null,
                     keyboard: KeyboardGrid | null): void {
    this.prompt = prompt;
    this.keyboard = keyboard ?? this.keyboard;
    if (prompt === null) {
      this.hooks.onDone();
      return;
    }
    this.promptShownAt = this.now();
    if (this.keyboard) this.hooks.onPrompt(prompt, this.keyboard);
  }

  async tap(symbol: string): Promise<AnswerOutcome | null> {
    // at most one in-flight mutation per session
    if (this.inFlight || this.prompt === null) return null;
    this.inFlight = true;
    try {
      const elapsed = this.now() - this.promptShownAt;
      const outcome = await this.api.answer(this.sessionId, symbol, elapsed);
      this.hooks.onOutcome(outcome);
      const trialEnded = outcome.correct || outcome.censored;
      if (trialEnded) {
        this.showPrompt(outcome.prompt, outcome.keyboard ?? null);
      }
      return outcome;
    } finally {
      this.inFlight = false;
    }
  }
}
