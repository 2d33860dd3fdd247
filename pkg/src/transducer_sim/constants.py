"""Physical constants and the unit conversions used by the physics modules.

Everything internal to the package is SI with angular frequencies (rad/s).
Values quoted in spectroscopy units (meV shifts of a zero-phonon line) are
converted here, in one place, so no other module hard-codes eV factors.
"""

import math

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import e as ELEMENTARY_CHARGE
from scipy.constants import epsilon_0 as EPSILON_0
from scipy.constants import hbar as HBAR
from scipy.constants import k as K_B

TWO_PI = 2.0 * math.pi

#: 1 meV expressed in joules
MEV = 1e-3 * ELEMENTARY_CHARGE


def strain_shift_to_si(mev_per_percent):
    """Convert a ZPL strain-shift coefficient from meV/% to rad/s per unit strain.

    1 meV/% equals 0.1 eV per unit strain, so 5 meV/% is 0.5 eV/strain.
    """
    return mev_per_percent * 100.0 * MEV / HBAR


def stark_shift_to_si(mev_per_volt_per_meter):
    """Convert a ZPL Stark-shift coefficient from meV/(V/m) to rad/s per V/m."""
    return mev_per_volt_per_meter * MEV / HBAR


def wavelength_to_angular_frequency(wavelength):
    """Vacuum wavelength (m) to angular frequency (rad/s)."""
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    return TWO_PI * SPEED_OF_LIGHT / wavelength
