import mpmath as mp
import pytest

from logjones.qcalc import RootContext

# library code manages its own working precision; test-side arithmetic on
# returned values must not round through the mpmath default of 15 digits
mp.mp.dps = 90


@pytest.fixture(scope="session")
def ctx3():
    return RootContext(3)


@pytest.fixture(scope="session")
def ctx4():
    return RootContext(4)


def assert_close(a, b, tol):
    with mp.workdps(120):
        d = abs(mp.mpc(a) - mp.mpc(b))
    assert d < tol, f"|{a} - {b}| = {mp.nstr(d, 5)} >= {mp.nstr(mp.mpf(tol), 5)}"
