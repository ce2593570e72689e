import csv
from pathlib import Path

import pytest
from hypothesis import settings

GOLDEN = Path(__file__).parent / "golden"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def load_golden(name):
    with open(GOLDEN / name, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        for key in ("q", "dim_V", "bound_thm", "mu", "bound_mu"):
            row[key] = int(row[key])
        row["degrees"] = () if row["degrees"] == "None" else tuple(int(x) for x in row["degrees"].split())
    return rows


@pytest.fixture(scope="session")
def table1():
    return load_golden("table1_psu2.csv")


@pytest.fixture(scope="session")
def table2():
    return load_golden("table2_psu3.csv")


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record a one-line verdict for the acceptance summary."""
    def record(n, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
