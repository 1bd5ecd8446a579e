// Word box rendering. When the server's reflow changes a block's
// spelling, the tile animates from the old chunk to the new one; the
// chunk strings themselves always come straight from the server.

import type { WordBoxJson } from "./api.js";
import { glyphElement } from "./glyphs.js";
import { morphedBlocks } from "./state.js";

export function renderWordBox(
  container: HTMLElement,
  box: WordBoxJson,
  previous: WordBoxJson | null,
  creatureClassOf?: (phoneme: string) => string | undefined,
): void {
  const doc = container.ownerDocument;
  const morphs = morphedBlocks(previous, box);
  container.textContent = "";
  container.classList.add("wordbox");
  container.dataset.mode = box.mode;
  container.dataset.displayMode = box.display_mode;
  for (const block of box.blocks) {
    const tile = doc.createElement("div");
    tile.className = `tile tile-${block.kind}`;
    tile.dataset.blockId = String(block.id);
    tile.dataset.symbol = block.symbol;
    if (block.creature_glyph && box.display_mode !== "letters") {
      const klass = creatureClassOf ? creatureClassOf(block.symbol) : undefined;
      tile.appendChild(glyphElement(doc, block.creature_glyph.replace(
        "glyph-", "").toUpperCase(), klass));
    }
    if (box.display_mode !== "creaturesOnly") {
      const chunk = doc.createElement("span");
      chunk.className = "tile-chunk";
      chunk.textContent = block.display_form;
      tile.appendChild(chunk);
    }
    const morph = morphs.get(block.id);
    if (morph) {
      tile.classList.add("morphing");
      tile.dataset.morphFrom = morph[0];
      tile.dataset.morphTo = morph[1];
    }
    container.appendChild(tile);
  }
}

export function shake(container: HTMLElement): void {
  container.classList.remove("shake");
  // retrigger the CSS animation on consecutive rejections
  void (container as HTMLElement).offsetWidth;
  container.classList.add("shake");
}
