import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphs import CORPUS  # noqa: E402


@pytest.fixture(scope="session")
def corpus_lines():
    return [ln.strip() for ln in CORPUS.read_text().splitlines() if ln.strip()]
