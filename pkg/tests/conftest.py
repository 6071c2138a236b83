import time
from functools import lru_cache

import pytest

from qdouble.double import DrinfeldDouble
from qdouble.fixtures import load_fixtures
from qdouble.groups import catalog
from qdouble.report import analyze

SMALL_GROUPS = ["trivial", "S3", "Z2", "Z5", "Z6", "Dhat2", "Dhat3", "Dhat4", "Dhat5", "binary_tetrahedral",
                "Delta3_2", "Delta6_2", "F21"]
CATALOG_GROUPS = SMALL_GROUPS + [
    "binary_octahedral", "binary_icosahedral", "Sigma60", "Sigma36x3", "Sigma168", "Sigma60xZ3",
    "Sigma72x3", "Sigma168xZ3", "Sigma216x3", "Sigma360x3",
]

ELAPSED: dict[tuple[str, bool], float] = {}
CRITERIA: dict[int, tuple[str, bool, str]] = {}


@lru_cache(maxsize=None)
def cached_analysis(name: str, full_tensor: bool = True):
    start = time.perf_counter()
    result = analyze(name, full_tensor=full_tensor)
    ELAPSED[(name, full_tensor)] = time.perf_counter() - start
    return result


@lru_cache(maxsize=None)
def cached_double(name: str) -> DrinfeldDouble:
    return DrinfeldDouble(catalog(name))


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, ok, detail = CRITERIA[number]
        line = f"criterion {number} {title}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
