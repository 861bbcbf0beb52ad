import pytest

import hybs
from hybs.game import load_layout

# Compact but fully valid kitchen used by exhaustive and planning tests.
SMALL_MAP = """\
#12U#
T...P
#.C.O
D...#
#34##
"""


@pytest.fixture(scope="session")
def default_layout():
    return load_layout(hybs.default_layout_text())


@pytest.fixture(scope="session")
def small_layout():
    return load_layout(SMALL_MAP)
