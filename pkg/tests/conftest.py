import pytest

from phonoblocks.lexicon import Lexicon, load_bundled_dictionary, parse_dictionary

TOY_DICT = """;;; toy corpus for fast tests
A  AH0
AT  AE1 T
BAT  B AE1 T
CAT  K AE1 T
COT  K AA1 T
FISH  F IH1 SH
READ  R EH1 D
READ(2)  R IY1 D
RED  R EH1 D
TAT  T AE1 T
TRUCK  T R AH1 K
"""


@pytest.fixture(scope="session")
def toy_entries():
    return parse_dictionary(TOY_DICT)


@pytest.fixture(scope="session")
def cmu_entries():
    return load_bundled_dictionary()


@pytest.fixture(scope="session")
def lexicon(cmu_entries):
    """Full lexicon trained on the bundled CMU dictionary (built once)."""
    return Lexicon.build(cmu_entries)
