import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).resolve().parent.parent / "golden"


@pytest.fixture(scope="session")
def golden_true():
    return json.loads((GOLDEN / "rauzy_classes.json").read_text())


@pytest.fixture(scope="session")
def golden_gen():
    return json.loads((GOLDEN / "gen_classes.json").read_text())
