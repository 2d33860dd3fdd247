"""LC microwave resonator containing the movable membrane capacitor.

The membrane and the bottom electrode form a position-dependent capacitor
C_m(x) in parallel with a fixed tuning capacitor C0 and in series with an
inductor L1.  The bias network (large series capacitor, large shunt
inductor) is treated as ideal and never enters the resonance.  The static
charge drawn by the bias voltage linearises the capacitive interaction and
yields a single-photon electromechanical coupling rate

    g_em = qbar * d(1/C)/dx * x_zpf * q_zpf / hbar .
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import EPSILON_0, HBAR
from .errors import TuningError
from .mechanics import MembraneGeometry, OperatingPoint

DEFAULT_INDUCTANCE = 1e-6        # H
DEFAULT_QUALITY_FACTOR = 50_000.0


@dataclass(frozen=True)
class CircuitParams:
    """Resonator elements and the derived microwave-mode quantities."""

    inductance: float            # H
    tuning_capacitance: float    # F, fixed capacitor in parallel with the membrane
    gap: float                   # m, undeflected membrane-to-electrode distance
    bias_voltage: float          # V
    quality_factor: float
    lc_frequency: float          # rad/s, 1/sqrt(L (C_m + C0)) at the operating point
    q_zpf: float                 # C, charge zero-point fluctuation

    @property
    def damping_rate(self) -> float:
        """Microwave energy decay rate (rad/s), lc_frequency / Q."""
        return self.lc_frequency / self.quality_factor


@dataclass(frozen=True)
class ElectromechanicalCoupling:
    """Phonon / microwave-photon coupling at a solved operating point."""

    gradient: float       # V/m, qbar * d(1/C)/dx at the operating point
    g_em: float           # rad/s
    static_charge: float  # C, bias charge on the total capacitance


def membrane_capacitance(geom: MembraneGeometry, gap: float, deflection: float) -> float:
    """Parallel-plate membrane capacitance eps0 l w / (gap - x) in farads."""
    if deflection < 0:
        raise ValueError("deflection must be nonnegative")
    if deflection >= gap:
        raise ValueError("deflection reaches the electrode (contact)")
    return EPSILON_0 * geom.length * geom.width / (gap - deflection)


def capacitance_gradient(geom: MembraneGeometry, gap: float, deflection: float) -> float:
    """dC_m/dx (F/m), eps0 l w / (gap - x)^2."""
    if deflection < 0:
        raise ValueError("deflection must be nonnegative")
    if deflection >= gap:
        raise ValueError("deflection reaches the electrode (contact)")
    return EPSILON_0 * geom.length * geom.width / (gap - deflection) ** 2


def tune_capacitor(inductance: float, omega_target: float, c_membrane: float) -> float:
    """Tuning capacitance C0 (F) that puts the LC resonance at ``omega_target``.

    Raises
    ------
    TuningError
        If the membrane capacitance alone already exceeds the required total
        1 / (L omega^2).
    """
    if not inductance > 0 or not omega_target > 0:
        raise ValueError("inductance and target frequency must be positive")
    c_total = 1.0 / (inductance * omega_target ** 2)
    if c_membrane > c_total:
        raise TuningError(
            f"membrane capacitance {c_membrane:.3e} F exceeds the "
            f"{c_total:.3e} F required for resonance at "
            f"{omega_target / (2 * math.pi):.3e} Hz"
        )
    return c_total - c_membrane


def charge_zero_point(inductance: float, omega: float) -> float:
    """Charge zero-point fluctuation sqrt(hbar / (2 L omega)) in coulombs."""
    if not inductance > 0 or not omega > 0:
        raise ValueError("inductance and frequency must be positive")
    return math.sqrt(HBAR / (2.0 * inductance * omega))


def matched_circuit(
    geom: MembraneGeometry,
    op_point: OperatingPoint,
    gap: float,
    bias_voltage: float,
    inductance: float = DEFAULT_INDUCTANCE,
    quality_factor: float = DEFAULT_QUALITY_FACTOR,
    lc_frequency: float | None = None,
) -> CircuitParams:
    """Build the resonator with C0 tuned so the LC mode matches the membrane.

    By default the resonance is placed at the mechanical frequency of the
    operating point; pass ``lc_frequency`` to detune deliberately.
    """
    omega = op_point.mech_frequency if lc_frequency is None else lc_frequency
    c_m = membrane_capacitance(geom, gap, op_point.deflection)
    c0 = tune_capacitor(inductance, omega, c_m)
    return CircuitParams(
        inductance=inductance,
        tuning_capacitance=c0,
        gap=gap,
        bias_voltage=bias_voltage,
        quality_factor=quality_factor,
        lc_frequency=omega,
        q_zpf=charge_zero_point(inductance, omega),
    )


def electromechanical_coupling(
    op_point: OperatingPoint, circuit: CircuitParams, geom: MembraneGeometry
) -> ElectromechanicalCoupling:
    """Single-photon electromechanical coupling at the operating point.

    The bias charges the total capacitance to qbar = V C(x0).  The position
    dependence of the inverse capacitance then couples charge and position
    fluctuations with gradient G = qbar C_m'(x0) / C(x0)^2, and

        g_em = G x_zpf q_zpf / hbar   (rad/s).

    The magnitude of the gradient is used; the phase convention is absorbed
    into the bilinear coupling term.  g_em vanishes identically at zero bias.
    """
    c_m = membrane_capacitance(geom, circuit.gap, op_point.deflection)
    c_total = c_m + circuit.tuning_capacitance
    static_charge = circuit.bias_voltage * c_total
    gradient = (
        static_charge
        * capacitance_gradient(geom, circuit.gap, op_point.deflection)
        / c_total ** 2
    )
    g_em = gradient * op_point.x_zpf * circuit.q_zpf / HBAR
    return ElectromechanicalCoupling(
        gradient=gradient, g_em=g_em, static_charge=static_charge
    )
