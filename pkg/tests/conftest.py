import os
import random

import pytest

from spinecensus.census import SEEDS, run_census, seed_records
from spinecensus.triangulation import from_signature

EXTENDED = os.environ.get("SPINECENSUS_EXTENDED") == "1"


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="set SPINECENSUS_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def closed_levels():
    """Closed census reports for n = 1..4, each run on top of the previous ones."""
    prev = seed_records()
    out = {}
    for n in range(1, 5):
        rep = run_census(n, previous=list(prev))
        prev += rep.records
        out[n] = rep
    return out


@pytest.fixture(scope="session")
def small_closed(closed_levels):
    """Seeds plus every closed census triangulation with n <= 3."""
    tris = [from_signature(s) for s in SEEDS.values()]
    for n in (1, 2, 3):
        tris += [from_signature(r.signature) for r in closed_levels[n].records]
    return tris


@pytest.fixture
def rng():
    return random.Random(20261016)


# acceptance lines, printed at the end of the run whatever the capture mode
ACCEPTANCE = []


@pytest.fixture
def verdict():
    def record(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
