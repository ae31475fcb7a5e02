"""Shared fixtures; big classification runs are computed once per session."""

import pytest

from divicodes.classify import classify_2divisible, classify_divisible


@pytest.fixture(scope="session")
def table1_levels():
    """Projective 2-divisible classification for all n <= 13."""
    return classify_2divisible(13, workers=2)


@pytest.fixture(scope="session")
def table2_nodes():
    """All full-support 4-divisible classes up to length 21."""
    return classify_divisible(4, 21, workers=2)


@pytest.fixture(scope="session")
def table2_small():
    """All full-support 4-divisible classes up to length 16 (fast)."""
    return classify_divisible(4, 16, workers=1)
