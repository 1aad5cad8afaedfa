import numpy as np
import pytest

from maxprod import kernels, signals


@pytest.fixture(scope="session")
def fejer_kernel():
    return kernels.fejer()


@pytest.fixture(scope="session")
def vp_kernel():
    return kernels.de_la_vallee_poussin()


@pytest.fixture(scope="session")
def m3_kernel():
    return kernels.bspline(3)


@pytest.fixture(scope="session")
def m4_kernel():
    return kernels.bspline(4)


@pytest.fixture(scope="session")
def m5_kernel():
    return kernels.bspline(5)


@pytest.fixture(scope="session")
def catalog_kernels(fejer_kernel, vp_kernel, m3_kernel, m4_kernel, m5_kernel):
    return [fejer_kernel, vp_kernel, m3_kernel, m4_kernel, m5_kernel]


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def bounded_signals():
    return [signals.catalog(n)
            for n in ("constant:1", "ramp", "step", "sawtooth", "abs-sine")]
