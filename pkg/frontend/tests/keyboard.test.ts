// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import type { KeyboardGrid, WordBoxJson } from "../src/api.js";
import { highlightCue, renderKeyboard } from "../src/keyboard.js";
import { renderWordBox } from "../src/wordbox.js";

function phonemeGrid(): KeyboardGrid {
  const cells = [];
  for (let i = 0; i < 39; i++) {
    cells.push({
      symbol: `P${i}`, row: Math.floor(i / 6), col: i % 6,
      ipa: "x", klass: "plosive", creature: `C${i}`, glyph_id: `glyph-${i}`,
    });
  }
  return { mode: "phoneme", rows: 7, cols: 6, cells };
}

function letterGrid(): KeyboardGrid {
  const letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ".split("");
  return {
    mode: "letter", rows: 4, cols: 7,
    cells: letters.map((s, i) => ({
      symbol: s, row: Math.floor(i / 7), col: i % 7,
    })),
  };
}

describe("keyboard rendering", () => {
  it("renders one tappable cell per phoneme", () => {
    const host = document.createElement("div");
    const taps: string[] = [];
    renderKeyboard(host, phonemeGrid(), "creaturesWithLetters",
                   (c) => taps.push(c.symbol));
    const keys = host.querySelectorAll(".key");
    expect(keys.length).toBe(39);
    (keys[0] as HTMLButtonElement).click();
    expect(taps).toEqual(["P0"]);
  });

  it("renders 26 letters in alphabetic order", () => {
    const host = document.createElement("div");
    renderKeyboard(host, letterGrid(), "letters", () => {});
    const keys = Array.from(host.querySelectorAll(".key"));
    expect(keys.length).toBe(26);
    expect((keys[0] as HTMLElement).dataset.symbol).toBe("A");
    expect((keys[7] as HTMLElement).dataset.symbol).toBe("H");
    expect((keys[7] as HTMLElement).dataset.row).toBe("1");
  });

  it("keeps cell geometry across display modes", () => {
    const host = document.createElement("div");
    const geometry = (mode: "letters" | "creaturesWithLetters") => {
      renderKeyboard(host, phonemeGrid(), mode, () => {});
      return Array.from(host.querySelectorAll(".key")).map((el) => {
        const h = el as HTMLElement;
        return `${h.dataset.symbol}@${h.dataset.row},${h.dataset.col}`;
      });
    };
    expect(geometry("letters")).toEqual(geometry("creaturesWithLetters"));
  });

  it("creaturesOnly suppresses letter labels but keeps glyphs", () => {
    const host = document.createElement("div");
    renderKeyboard(host, phonemeGrid(), "creaturesOnly", () => {});
    expect(host.querySelectorAll(".key-label").length).toBe(0);
    expect(host.querySelectorAll(".glyph").length).toBe(39);
    renderKeyboard(host, phonemeGrid(), "letters", () => {});
    expect(host.querySelectorAll(".key-label").length).toBe(39);
    expect(host.querySelectorAll(".glyph").length).toBe(0);
  });

  it("marks the cue target", () => {
    const host = document.createElement("div");
    renderKeyboard(host, letterGrid(), "letters", () => {});
    highlightCue(host, "C");
    const cued = host.querySelectorAll(".key.cued");
    expect(cued.length).toBe(1);
    expect((cued[0] as HTMLElement).dataset.symbol).toBe("C");
  });
});

describe("word box rendering", () => {
  const before: WordBoxJson = {
    blocks: [
      { id: 1, kind: "phoneme", symbol: "AH", display_form: "A",
        creature_glyph: "glyph-ah" },
    ],
    mode: "phoneme", display_mode: "creaturesWithLetters",
    pronunciation: ["AH"], text: "A",
  };
  const after: WordBoxJson = {
    blocks: [
      { id: 1, kind: "phoneme", symbol: "AH", display_form: "U",
        creature_glyph: "glyph-ah" },
      { id: 2, kind: "phoneme", symbol: "K", display_form: "CK",
        creature_glyph: "glyph-k" },
    ],
    mode: "phoneme", display_mode: "creaturesWithLetters",
    pronunciation: ["AH", "K"], text: "UCK",
  };

  it("animates tiles whose spelling the server changed", () => {
    const host = document.createElement("div");
    renderWordBox(host, after, before);
    const morphing = host.querySelectorAll(".tile.morphing");
    expect(morphing.length).toBe(1);
    const tile = morphing[0] as HTMLElement;
    expect(tile.dataset.symbol).toBe("AH");
    expect(tile.dataset.morphFrom).toBe("A");
    expect(tile.dataset.morphTo).toBe("U");
  });

  it("creaturesOnly hides chunk text", () => {
    const host = document.createElement("div");
    renderWordBox(host, { ...after, display_mode: "creaturesOnly" }, null);
    expect(host.querySelectorAll(".tile-chunk").length).toBe(0);
    expect(host.querySelectorAll(".glyph").length).toBe(2);
  });
});
