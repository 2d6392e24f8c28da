import pathlib

import pytest

pytest.importorskip("plotkit")

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def scan_csv():
    return str(DATA / "scan_toy.csv")


@pytest.fixture(scope="session")
def trace_csv():
    return str(DATA / "trace_toy.csv")


@pytest.fixture(scope="session")
def nearby_csv():
    return str(DATA / "nearby_toy.csv")
