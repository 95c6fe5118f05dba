import pytest
from hypothesis import HealthCheck, settings

from socle.ideals import Ideal, QuotientRingModel
from socle.poly import QQ, PolyRing, PrimeField

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FP = PrimeField(32003)


def two_planes(field=FP):
    R = PolyRing(field, ["x", "y", "z", "w"])
    return QuotientRingModel(R, [R.parse(t) for t in ("x*z", "x*w", "y*z", "y*w")], name="two_planes")


@pytest.fixture
def S4():
    return PolyRing(FP, ["x", "y", "z", "w"])


@pytest.fixture
def S3():
    return PolyRing(FP, ["x", "y", "z"])


@pytest.fixture
def S2():
    return PolyRing(FP, ["x", "y"])


@pytest.fixture
def Q2():
    return PolyRing(QQ, ["x", "y"])


@pytest.fixture
def planes():
    return two_planes()


@pytest.fixture
def planes_q(planes):
    P = planes.ring.parse
    return (P("x^2 - z^2"), P("y^2 - w^2"))


@pytest.fixture
def planes_q0(planes):
    P = planes.ring.parse
    return (P("x - z"), P("y - w"))


def ideal(R, *texts):
    return Ideal(R, [R.parse(t) for t in texts])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
