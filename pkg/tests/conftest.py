import json
import os
import sys

import pytest

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)

# criterion -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def frozen():
    with open(os.path.join(HERE, "frozen_oracles.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def inputs_dir():
    return os.path.join(os.path.dirname(HERE), "inputs")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        rows = ACCEPTANCE[key]
        bad = [d for ok, d in rows if not ok]
        status = "PASS" if not bad else "FAIL"
        extra = f" ({len(bad)}/{len(rows)} checks failed: {'; '.join(bad)})" if bad else ""
        tr.write_line(f"{status} criterion {key}{extra}")
