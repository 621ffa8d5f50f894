"""Shared fixtures; clouds are expensive, so they are session-scoped."""

import numpy as np
import pytest

import chaosgame as cg


@pytest.fixture(scope="session")
def cantor():
    return cg.cantor_ifs()


@pytest.fixture(scope="session")
def cantor_cloud(cantor):
    # depth 13, 8192 points, resolution ~6.3e-7
    return cg.build_cloud(cantor, 1.5e-6)


@pytest.fixture(scope="session")
def cantor_cloud_fine(cantor):
    # depth 14, 16384 points, resolution ~2.1e-7 (schedule-grade)
    return cg.build_cloud(cantor, 3e-7)


@pytest.fixture(scope="session")
def cantor_cloud_coarse(cantor):
    return cg.build_cloud(cantor, 1e-4)


@pytest.fixture(scope="session")
def halving():
    return cg.halving_ifs()


@pytest.fixture(scope="session")
def exact_halving_cloud():
    from chaosgame.harness import _exact_attractor_cloud

    return _exact_attractor_cloud(2.0 ** -16)
