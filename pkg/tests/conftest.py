import math

import pytest

from transducer_sim import ElectrostaticEnvironment, MembraneGeometry

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session")
def geometry():
    """110 nm x 1 um x 1.1 nm sheet, Y = 1 TPa, 10 nN pre-tension."""
    return MembraneGeometry(
        length=110e-9,
        width=1e-6,
        thickness=1.1e-9,
        youngs_modulus=1000e9,
    )


@pytest.fixture(scope="session")
def environment():
    """10 nm gap, 3.3 V benchmark bias."""
    return ElectrostaticEnvironment(gap=10e-9, bias_voltage=3.3)
