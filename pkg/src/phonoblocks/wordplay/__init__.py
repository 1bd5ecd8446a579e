"""The block engine: inverse blocks, the word box, and the interpreter."""

from phonoblocks.wordplay.blocks import (
    Block,
    WordBox,
    add_block,
    move_block,
    new_box,
    reflow,
    remove_block,
    set_mode,
    toggle_display,
)
from phonoblocks.wordplay.interpret import (
    Interpretation,
    InterpreterConfig,
    interpret,
)
from phonoblocks.wordplay.render import (
    LETTER_NAMES,
    Rendering,
    pronounce_letters,
    render_phonemes,
    render_phonemes_detail,
)

__all__ = [
    "Block",
    "Interpretation",
    "InterpreterConfig",
    "LETTER_NAMES",
    "Rendering",
    "WordBox",
    "add_block",
    "interpret",
    "move_block",
    "new_box",
    "pronounce_letters",
    "reflow",
    "remove_block",
    "render_phonemes",
    "render_phonemes_detail",
    "set_mode",
    "toggle_display",
]
