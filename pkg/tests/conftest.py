import pytest
from hypothesis import HealthCheck, settings

from lbsim import ServerState

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def server(i=0, **kw) -> ServerState:
    return ServerState(id=i, **kw)


def make_fleet(n, **kw):
    return [ServerState(id=i, **kw) for i in range(n)]


@pytest.fixture
def fleet3():
    return make_fleet(3)
