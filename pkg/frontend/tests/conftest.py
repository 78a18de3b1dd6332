import pathlib

import pytest


@pytest.fixture
def golden() -> pathlib.Path:
    return pathlib.Path(__file__).parent / "golden"
