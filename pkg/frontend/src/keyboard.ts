// Keyboard grid rendering: one tappable cell per symbol. Creature modes
// show the glyph with the grapheme overlaid; creaturesOnly drops the
// letter shapes entirely.

import type { KeyboardCell, KeyboardGrid } from "./api.js";
import { glyphElement } from "./glyphs.js";
import type { DisplayMode } from "./state.js";

export function renderKeyboard(
  container: HTMLElement,
  grid: KeyboardGrid,
  displayMode: DisplayMode,
  onTap: (cell: KeyboardCell) => void,
): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  container.classList.add("keyboard");
  container.style.setProperty("--kb-cols", String(grid.cols));
  const ordered = [...grid.cells].sort(
    (a, b) => a.row - b.row || a.col - b.col);
  for (const cell of ordered) {
    const btn = doc.createElement("button");
    btn.className = "key";
    btn.dataset.symbol = cell.symbol;
    btn.dataset.row = String(cell.row);
    btn.dataset.col = String(cell.col);
    if (cell.group != null) btn.dataset.group = String(cell.group);
    const showCreature =
      displayMode !== "letters" && (cell.creature || cell.phoneme);
    if (showCreature && cell.creature) {
      btn.appendChild(glyphElement(doc, cell.creature, cell.klass));
    }
    if (displayMode !== "creaturesOnly") {
      const label = doc.createElement("span");
      label.className = "key-label";
      label.textContent = cell.symbol;
      btn.appendChild(label);
    }
    if (cell.ipa && displayMode !== "creaturesOnly") {
      const ipa = doc.createElement("span");
      ipa.className = "key-ipa";
      ipa.textContent = cell.ipa;
      btn.appendChild(ipa);
    }
    btn.addEventListener("click", () => onTap(cell));
    container.appendChild(btn);
  }
}

export function highlightCue(container: HTMLElement, symbol: string): void {
  for (const el of Array.from(container.querySelectorAll(".key"))) {
    el.classList.toggle("cued",
      (el as HTMLElement).dataset.symbol === symbol);
  }
}

export function clearCue(container: HTMLElement): void {
  for (const el of Array.from(container.querySelectorAll(".key.cued"))) {
    el.classList.remove("cued");
  }
}
