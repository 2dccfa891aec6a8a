"""Impulse air-turbine sizing for direct spindle drive.

The drive is a small axial impulse stage: a ring of converging nozzles
blows on bucket slots machined into the shaft. The model is the classic
isentropic-nozzle one: expansion from supply to ambient sets the jet
velocity, momentum exchange at the pitch line sets speed and torque.
Loss coefficients (airflow loss, speed ratio, net power efficiency) are
inputs, not predictions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .core import GasSpec, SpecViolation

# Tip Mach number above which the incompressible treatment of the rotor
# periphery is no longer trustworthy.
SUBSONIC_TIP_LIMIT = 0.8


@dataclass(frozen=True)
class TurbineSpec:
    """Geometry and operating condition of the impulse drive stage."""

    pitch_diameter: float  # m, bucket pitch circle
    nozzle_diameter: float  # m, throat of each converging nozzle
    nozzle_count: int
    bucket_count: int
    inlet_pressure: float  # Pa absolute supply
    outlet_pressure: float  # Pa absolute ambient
    source_temperature: float = 293.15  # K, supply stagnation temperature
    airflow_loss_coefficient: float = 0.92  # fraction of jet velocity surviving losses
    speed_ratio: float = 0.2  # bucket speed / jet speed at best efficiency
    power_efficiency: float = 0.18  # shaft power / jet power
    gas: GasSpec = GasSpec()

    def validate(self) -> None:
        bad = []
        if self.pitch_diameter <= 0:
            bad.append(f"pitch_diameter must be > 0 (got {self.pitch_diameter})")
        if self.nozzle_diameter <= 0:
            bad.append(f"nozzle_diameter must be > 0 (got {self.nozzle_diameter})")
        if self.nozzle_count < 1:
            bad.append(f"nozzle_count must be >= 1 (got {self.nozzle_count})")
        if self.bucket_count < 1:
            bad.append(f"bucket_count must be >= 1 (got {self.bucket_count})")
        if self.outlet_pressure <= 0:
            bad.append(f"outlet_pressure must be > 0 (got {self.outlet_pressure})")
        if self.inlet_pressure < self.outlet_pressure:
            bad.append(
                "inlet_pressure must be >= outlet_pressure "
                f"(got {self.inlet_pressure} < {self.outlet_pressure})"
            )
        if self.source_temperature <= 0:
            bad.append(f"source_temperature must be > 0 (got {self.source_temperature})")
        if not 0.0 < self.airflow_loss_coefficient <= 1.0:
            bad.append(
                "airflow_loss_coefficient must lie in (0, 1] "
                f"(got {self.airflow_loss_coefficient})"
            )
        if not 0.0 < self.speed_ratio <= 1.0:
            bad.append(f"speed_ratio must lie in (0, 1] (got {self.speed_ratio})")
        if not 0.0 < self.power_efficiency <= 1.0:
            bad.append(f"power_efficiency must lie in (0, 1] (got {self.power_efficiency})")
        if bad:
            raise SpecViolation("turbine", bad)
        self.gas.validate()


def tip_mach_number(pitch_diameter: float, speed_rpm: float, gas: GasSpec,
                    temperature: float = 293.15) -> tuple[float, bool]:
    """Peripheral Mach number of the bucket pitch circle.

    Returns (Ma, subsonic) where ``subsonic`` is True while the tip stays
    below the compressibility limit of 0.8.
    """
    tip_speed = math.pi * speed_rpm * pitch_diameter / 60.0
    mach = tip_speed / gas.speed_of_sound(temperature)
    return mach, mach < SUBSONIC_TIP_LIMIT


def nozzle_exit_velocity(spec: TurbineSpec) -> float:
    """Isentropic jet velocity of a converging nozzle expanding to ambient."""
    if spec.inlet_pressure < spec.outlet_pressure:
        raise ValueError(
            "inlet pressure below outlet pressure: "
            f"{spec.inlet_pressure} < {spec.outlet_pressure}"
        )
    k = spec.gas.specific_heat_ratio
    ratio = spec.outlet_pressure / spec.inlet_pressure
    head = 1.0 - ratio ** ((k - 1.0) / k)
    return math.sqrt(
        2.0 * k / (k - 1.0) * spec.gas.gas_constant * spec.source_temperature * head
    )


def ideal_speed_rpm(spec: TurbineSpec) -> float:
    """Free-running speed where buckets travel at the design speed ratio."""
    u = nozzle_exit_velocity(spec)
    return 60.0 * u * spec.airflow_loss_coefficient * spec.speed_ratio / (
        math.pi * spec.pitch_diameter
    )


def nozzle_outlet_density(spec: TurbineSpec) -> float:
    """Gas density at the nozzle exit after isentropic expansion, kg/m^3."""
    k = spec.gas.specific_heat_ratio
    inlet_density = spec.inlet_pressure / (spec.gas.gas_constant * spec.source_temperature)
    return inlet_density * (spec.outlet_pressure / spec.inlet_pressure) ** (1.0 / k)


def mass_flowrate(spec: TurbineSpec) -> float:
    """Mass flow through a single nozzle, kg/s."""
    u = nozzle_exit_velocity(spec)
    area = math.pi * spec.nozzle_diameter ** 2 / 4.0
    return nozzle_outlet_density(spec) * u * area


def jet_power(spec: TurbineSpec) -> float:
    """Kinetic power of all jets combined, W."""
    u = nozzle_exit_velocity(spec)
    return 0.5 * spec.nozzle_count * mass_flowrate(spec) * u ** 2


def shaft_power(torque: float, speed_rpm: float) -> float:
    """Mechanical power for a torque in N m at a speed in rpm."""
    return math.pi * torque * speed_rpm / 30.0


def stall_torque(spec: TurbineSpec) -> float:
    """Torque available at the ideal running point, N m.

    Energy balance: shaft power = power_efficiency * jet power, taken at
    the ideal free-running speed. Substituting the nozzle relations
    collapses everything to supply-side quantities; the closed form below
    is that substitution and is kept exact (the cancellation of the jet
    velocity against the ideal speed leaves a single u^2 and the exit
    density expressed through the supply state).
    """
    u = nozzle_exit_velocity(spec)
    k = spec.gas.specific_heat_ratio
    return (
        math.pi
        * spec.power_efficiency
        * spec.nozzle_count
        * spec.pitch_diameter
        * spec.nozzle_diameter ** 2
        * spec.inlet_pressure
        * u ** 2
        * (spec.outlet_pressure / spec.inlet_pressure) ** (1.0 / k)
        / (
            16.0
            * spec.airflow_loss_coefficient
            * spec.speed_ratio
            * spec.gas.gas_constant
            * spec.source_temperature
        )
    )


def windage_torque(friction_coefficient: float, gas_density: float,
                   speed_rad_s: float, radius: float, length: float) -> float:
    """Skin-friction drag torque of one cylindrical journal surface, N m."""
    return (
        friction_coefficient
        * math.pi
        * gas_density
        * speed_rad_s ** 2
        * radius ** 4
        * length
    )


@dataclass(frozen=True)
class TorqueMargin:
    """Drive torque against the worst-case load torque."""

    available: float  # N m
    machining: float  # N m
    windage: float  # N m

    @property
    def load(self) -> float:
        return self.machining + self.windage

    @property
    def margin(self) -> float:
        return self.available - self.load

    @property
    def ratio(self) -> float:
        if self.load <= 0:
            return math.inf
        return self.available / self.load

    @property
    def adequate(self) -> bool:
        return self.margin > 0


def torque_margin(spec: TurbineSpec, machining_torque: float,
                  windage: float) -> TorqueMargin:
    return TorqueMargin(
        available=stall_torque(spec),
        machining=machining_torque,
        windage=windage,
    )


@dataclass(frozen=True)
class TurbineReport:
    """One-shot summary of the drive stage at its operating point."""

    spec: TurbineSpec
    speed_rpm: float
    tip_mach: float
    subsonic: bool
    exit_velocity: float  # m/s
    ideal_speed_rpm: float
    mass_flow_per_nozzle: float  # kg/s
    outlet_density: float  # kg/m^3
    torque: float  # N m
    margin: TorqueMargin


def design_report(spec: TurbineSpec, speed_rpm: float, machining_torque: float,
                  windage: float) -> TurbineReport:
    mach, subsonic = tip_mach_number(
        spec.pitch_diameter, speed_rpm, spec.gas, spec.source_temperature
    )
    return TurbineReport(
        spec=spec,
        speed_rpm=speed_rpm,
        tip_mach=mach,
        subsonic=subsonic,
        exit_velocity=nozzle_exit_velocity(spec),
        ideal_speed_rpm=ideal_speed_rpm(spec),
        mass_flow_per_nozzle=mass_flowrate(spec),
        outlet_density=nozzle_outlet_density(spec),
        torque=stall_torque(spec),
        margin=torque_margin(spec, machining_torque, windage),
    )


def nozzle_sweep(spec: TurbineSpec, diameters: list[float],
                 efficiencies: list[float]) -> dict[float, list[tuple[float, float]]]:
    """Stall torque over a nozzle-diameter sweep, one curve per efficiency.

    Returns {efficiency: [(d_n, torque), ...]}.
    """
    curves: dict[float, list[tuple[float, float]]] = {}
    for eta in efficiencies:
        pts = []
        for d in diameters:
            s = replace(spec, nozzle_diameter=d, power_efficiency=eta)
            pts.append((d, stall_torque(s)))
        curves[eta] = pts
    return curves
