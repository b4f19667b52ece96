import numpy as np
import pytest

from linpacket import ForceProfile, InvariantCoeffs, PhysicalParams


@pytest.fixture(scope="session")
def params():
    return PhysicalParams(m=1.0, hbar=1.0)


@pytest.fixture(scope="session")
def make_coeffs(params):
    def factory(a0=1.0, b0=0.0, c0=0.0, force=None, m=None, hbar=None):
        p = params
        if m is not None or hbar is not None:
            p = PhysicalParams(m=m if m is not None else 1.0,
                               hbar=hbar if hbar is not None else 1.0)
        return InvariantCoeffs(a0=a0, b0=b0, c0=c0, params=p,
                               force=force if force is not None else ForceProfile.zero())
    return factory


@pytest.fixture(scope="session")
def free_coeffs(make_coeffs):
    return make_coeffs()


@pytest.fixture(scope="session")
def const_coeffs(make_coeffs):
    return make_coeffs(force=ForceProfile.constant(1.0))


@pytest.fixture(scope="session")
def sin_coeffs(make_coeffs):
    return make_coeffs(force=ForceProfile.sinusoidal(1.0, 2.0, 0.0))


def random_force(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        return ForceProfile.zero()
    if kind == 1:
        return ForceProfile.constant(rng.uniform(-3.0, 3.0))
    if kind == 2:
        return ForceProfile.sinusoidal(rng.uniform(-2.0, 2.0),
                                       rng.uniform(0.0, 4.0),
                                       rng.uniform(-np.pi, np.pi))
    times = np.linspace(0.0, 6.0, rng.integers(5, 30))
    values = rng.uniform(-2.0, 2.0, size=times.size)
    return ForceProfile.tabulated(times, values)
