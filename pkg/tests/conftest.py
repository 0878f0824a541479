"""Shared fixtures: groups and built quantum groups reused across the suite."""

import pytest

import qgcalc as q


@pytest.fixture(scope="session")
def corpus():
    return q.standard_corpus()


@pytest.fixture(scope="session")
def z2(corpus):
    return corpus["Z2"]


@pytest.fixture(scope="session")
def z3(corpus):
    return corpus["Z3"]


@pytest.fixture(scope="session")
def z4(corpus):
    return corpus["Z4"]


@pytest.fixture(scope="session")
def v4(corpus):
    # Klein four-group
    return corpus["Z2xZ2"]


@pytest.fixture(scope="session")
def s3(corpus):
    return corpus["S3"]
