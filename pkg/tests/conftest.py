from pathlib import Path

import pytest

from bayesbias.formats import parse_model_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_model_file(FIXTURES / name)


@pytest.fixture
def ex1():
    return load("example1.json")


@pytest.fixture
def ex2():
    return load("example2.json")


@pytest.fixture
def ex3():
    return load("example3.json")


@pytest.fixture
def theta_half():
    return load("example3_theta.json")


@pytest.fixture
def partition():
    return load("partition.json")
