from __future__ import annotations

from pathlib import Path

import pytest

from sentiq.sentiment import builtin_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return builtin_lexicon()


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(__file__).parent / "data"
