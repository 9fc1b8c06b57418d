import numpy as np
import pytest

import component.parameter as param
import component.scripts as scripts


@pytest.fixture(autouse=True)
def no_progress():
    """progress bars only clutter the test output"""

    scripts.PROGRESS["disable"] = True
    yield
    scripts.PROGRESS["disable"] = False


@pytest.fixture
def golden_circuit():
    return scripts.CircuitParams(**param.CIRCUIT)


@pytest.fixture
def golden_tb():
    return scripts.TightBindingParams(**param.TIGHT_BINDING)


@pytest.fixture
def golden_profile():
    return scripts.CouplingProfile(param.COUPLING)


@pytest.fixture
def golden_lattice(golden_tb, golden_profile):
    return scripts.LatticeModel(golden_tb, golden_profile)


def chain(N, J, omega_r=7.5):
    """homogeneous nearest-neighbour chain"""
    return scripts.TightBindingParams(omega_r=omega_r, J_1=J, J_2=J, N=N)


def toy_lattice(N=2, J=1.0, g=0.05, site=1, omega_r=7.5):
    """short homogeneous chain with a small atom"""
    profile = scripts.CouplingProfile.single_site(site, g)
    return scripts.LatticeModel(chain(N, J, omega_r), profile)


@pytest.fixture
def lossless():
    return scripts.LossModel()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
