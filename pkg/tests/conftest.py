import pytest
from hypothesis import HealthCheck, settings

from normforge.groups import make_cyclic, preset_group

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def c4():
    return make_cyclic(4)


@pytest.fixture(scope="session")
def klein():
    return preset_group("C2xC2")


@pytest.fixture(scope="session")
def s3():
    return preset_group("S3")
