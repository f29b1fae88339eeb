import pytest

from qslsim import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation (or cache load) happens once here, outside any timed test.
    _kernels.warmup()
