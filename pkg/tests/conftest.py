import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tensorring.algebra import QuiverPreset, ground_field, path_algebra
from tensorring.definition import Workspace, preset_morita_zero, preset_triangular
from tensorring.exactlin import FieldSpec
from tensorring.tensor_ring import idempotent_bimodule, tensor_ring

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def nakayama():
    """kQ/J^2 on the 3-cycle over F_7."""
    return path_algebra(QuiverPreset(3, 2, FieldSpec(7)))


@pytest.fixture(scope="session")
def R(nakayama):
    return nakayama.algebra


@pytest.fixture(scope="session")
def M(nakayama):
    return idempotent_bimodule(nakayama.algebra, nakayama.idempotent(1), nakayama.idempotent(3))


@pytest.fixture(scope="session")
def ring(R, M):
    return tensor_ring(R, M)


@pytest.fixture(scope="session")
def k7():
    return ground_field(FieldSpec(7))


@pytest.fixture(scope="session")
def tri_ws():
    return Workspace(preset_triangular())


@pytest.fixture(scope="session")
def tri_setup(tri_ws):
    return tri_ws.morita()


@pytest.fixture(scope="session")
def tri_lambda(tri_setup):
    return tri_setup.lam


@pytest.fixture(scope="session")
def morita_zero_setup():
    return Workspace(preset_morita_zero()).morita()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
