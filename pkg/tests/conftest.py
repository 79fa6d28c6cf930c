import csv
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def load_census():
    with open(DATA / "census_table.csv", newline="") as fh:
        return {int(r["n"]): (int(r["rpac"]), int(r["relprime"]), int(r["part"])) for r in csv.DictReader(fh)}


@pytest.fixture(scope="session")
def census():
    return load_census()
