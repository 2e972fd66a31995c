import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # makes `oracles` importable

from ged_forge.normalize import load_contractions


@pytest.fixture(scope="session")
def table():
    return load_contractions()
