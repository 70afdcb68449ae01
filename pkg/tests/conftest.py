import os
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def toy2_dir() -> Path:
    return FIXTURES / "toy2"


@pytest.fixture
def toy3_dir() -> Path:
    return FIXTURES / "toy3"


def flores_dir() -> Path | None:
    """FLORES-200 fixture location, if installed (see README)."""
    env = os.environ.get("TOKEQ_FLORES_DIR")
    candidates = [Path(env)] if env else []
    candidates.append(FIXTURES / "flores200")
    for path in candidates:
        if (path / "manifest.json").is_file():
            return path
    return None
