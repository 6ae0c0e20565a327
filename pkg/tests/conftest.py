import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cubic3dec.generate import connected_cubic_graphs


@pytest.fixture(scope="session")
def corpus10():
    return {n: connected_cubic_graphs(n) for n in (4, 6, 8, 10)}


@pytest.fixture(scope="session")
def corpus14():
    return {n: connected_cubic_graphs(n) for n in (4, 6, 8, 10, 12, 14)}
