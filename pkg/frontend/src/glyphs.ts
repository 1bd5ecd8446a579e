// Placeholder creature glyphs: an initial letter inside a colored shape
// keyed by phoneme class. Stands in for the real animations, which are
// art assets rather than anything computable.

const CLASS_COLORS: Record<string, string> = {
  vowel: "#e4572e",
  plosive: "#17bebb",
  fricative: "#ffc914",
  affricate: "#76b041",
  nasal: "#8762c9",
  approximant: "#2e86ab",
};

const CLASS_SHAPES: Record<string, string> = {
  vowel: "circle",
  plosive: "square",
  fricative: "diamond",
  affricate: "hex",
  nasal: "rounded",
  approximant: "pill",
};

export function glyphElement(doc: Document, creatureName: string,
                             klass: string | undefined): HTMLElement {
  const el = doc.createElement("span");
  const kind = klass && CLASS_SHAPES[klass] ? klass : "vowel";
  el.className = `glyph glyph-${CLASS_SHAPES[kind]}`;
  el.style.backgroundColor = CLASS_COLORS[kind];
  el.textContent = creatureName.charAt(0);
  el.title = creatureName;
  return el;
}
