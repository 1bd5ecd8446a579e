// View state is a pure projection of the last server response. The
// client never scores, never advances steps, never decides correctness;
// it only records what the server said and queues at most one in-flight
// mutation per session.

import type {
  KeyboardGrid,
  ScaffoldEventJson,
  ScaffoldStateJson,
  WordBoxJson,
} from "./api.js";

export type DisplayMode = "letters" | "creaturesWithLetters" | "creaturesOnly";

export interface ViewState {
  keyboard: KeyboardGrid | null;
  box: WordBoxJson | null;
  scaffold: ScaffoldStateJson | null;
  displayMode: DisplayMode;
  sessionId: string | null;
  pendingEvents: ScaffoldEventJson[];
  cueTarget: string | null;
  busy: boolean;
}

export function initialViewState(): ViewState {
  return {
    keyboard: null,
    box: null,
    scaffold: null,
    displayMode: "creaturesWithLetters",
    sessionId: null,
    pendingEvents: [],
    cueTarget: null,
    busy: false,
  };
}

export function withKeyboard(state: ViewState, keyboard: KeyboardGrid): ViewState {
  return { ...state, keyboard };
}

export function withFreeplay(state: ViewState, sessionId: string,
                             box: WordBoxJson): ViewState {
  return { ...state, sessionId, box, scaffold: null,
           displayMode: box.display_mode as DisplayMode };
}

export function withBox(state: ViewState, box: WordBoxJson): ViewState {
  return { ...state, box, displayMode: box.display_mode as DisplayMode };
}

export function withScaffold(state: ViewState, sessionId: string,
                             scaffold: ScaffoldStateJson,
                             events: ScaffoldEventJson[]): ViewState {
  return {
    ...state,
    sessionId,
    scaffold,
    box: null,
    pendingEvents: events,
    cueTarget: cueTargetFrom(events) ?? state.cueTarget,
  };
}

export function applyScaffoldResponse(state: ViewState,
                                      scaffold: ScaffoldStateJson,
                                      events: ScaffoldEventJson[]): ViewState {
  const advanced = events.some((e) =>
    e.kind === "place" || e.kind === "autoPlace" || e.kind === "complete");
  return {
    ...state,
    scaffold,
    pendingEvents: [...state.pendingEvents, ...events],
    cueTarget: advanced ? null : cueTargetFrom(events) ?? state.cueTarget,
  };
}

export function drainEvents(state: ViewState): [ScaffoldEventJson[], ViewState] {
  return [state.pendingEvents, { ...state, pendingEvents: [] }];
}

export function cueTargetFrom(events: ScaffoldEventJson[]): string | null {
  for (const e of events) {
    if (e.kind === "cue" && typeof e.detail.target === "string") {
      return e.detail.target;
    }
  }
  return null;
}

export function wasRejected(events: ScaffoldEventJson[]): boolean {
  return events.some((e) => e.kind === "reject");
}

// Morph detection: which block ids changed their rendered chunk between
// two server states (the animation is presentation; the data is the
// server's displayForm values before and after).
export function morphedBlocks(before: WordBoxJson | null,
                              after: WordBoxJson): Map<number, [string, string]> {
  const morphs = new Map<number, [string, string]>();
  if (!before) return morphs;
  const old = new Map(before.blocks.map((b) => [b.id, b.display_form]));
  for (const b of after.blocks) {
    const prev = old.get(b.id);
    if (prev !== undefined && prev !== b.display_form) {
      morphs.set(b.id, [prev, b.display_form]);
    }
  }
  return morphs;
}
