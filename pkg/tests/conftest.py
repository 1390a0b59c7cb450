# -*- coding: utf-8 -*-
"""Fixtures compartilhadas dos testes do cohcat"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.states.density import PureState, SystemLayout, basis_state, maximally_coherent  # noqa: E402

@pytest.fixture
def qubit():
    return SystemLayout.single("S", 2)

@pytest.fixture
def plus():
    return maximally_coherent(2)

@pytest.fixture
def zero(qubit):
    return basis_state(qubit, [0])

@pytest.fixture
def bipartite():
    return SystemLayout.of(("A", 2, "A"), ("B", 2, "B"))

@pytest.fixture
def phi_plus(bipartite):
    return PureState(bipartite, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0))

@pytest.fixture
def seed():
    return np.random.SeedSequence(2024)

def pytest_configure(config):
    config.addinivalue_line("markers", "slow: varreduras estatísticas de escala completa (deselecionar com -m 'not slow')")
