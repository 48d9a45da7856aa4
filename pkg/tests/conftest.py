from pathlib import Path

import pytest

from helpers import TABLE1_F, TABLE1_G, TABLE2_F, TABLE2_G
from onoffqueue import from_strings

REPO_ROOT = Path(__file__).resolve().parent.parent
MODELS_DIR = REPO_ROOT / "models"


@pytest.fixture(scope="session")
def table1():
    return from_strings(TABLE1_F, TABLE1_G)


@pytest.fixture(scope="session")
def table1_exact():
    return from_strings(TABLE1_F, TABLE1_G, backend="exact")


@pytest.fixture(scope="session")
def table2():
    return from_strings(TABLE2_F, TABLE2_G)


@pytest.fixture(scope="session")
def table2_exact():
    return from_strings(TABLE2_F, TABLE2_G, backend="exact")


@pytest.fixture(scope="session")
def table1_path():
    return str(MODELS_DIR / "table1.json")


@pytest.fixture(scope="session")
def table2_path():
    return str(MODELS_DIR / "table2.json")
