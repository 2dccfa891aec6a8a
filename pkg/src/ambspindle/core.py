"""Shared material / gas / magnet records and unit helpers.

Everything downstream works in SI units (m, kg, s, K, Pa, T, A). Shaft
speeds are stored in rpm only where a quantity is conventionally quoted
that way (operating speed, critical speeds); conversion happens exactly
once through the helpers below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

MU0 = 4.0e-7 * math.pi  # vacuum permeability, H/m
STANDARD_GRAVITY = 9.80665  # m/s^2


class AmbSpindleError(Exception):
    """Base class for toolkit errors."""


class ConfigError(AmbSpindleError):
    """Raised when a project document cannot be parsed or validated."""


class SpecViolation(AmbSpindleError):
    """Raised when a record violates one of its declared invariants.

    ``violations`` lists every failed invariant individually so a caller
    can report all of them at once instead of fixing one field at a time.
    """

    def __init__(self, record: str, violations: list[str]):
        self.record = record
        self.violations = list(violations)
        lines = "; ".join(self.violations)
        super().__init__(f"{record}: {lines}")


class GapClosureError(AmbSpindleError):
    """Rotor displacement reached or exceeded the physical airgap."""


class AnalysisError(AmbSpindleError):
    """An analysis could not produce a result (bad mesh, no convergence...)."""


class OptimizationError(AmbSpindleError):
    """The search could not proceed (e.g. no feasible individual exists)."""


def rpm_to_rad_s(rpm: float) -> float:
    return rpm * math.pi / 30.0


def rad_s_to_rpm(omega: float) -> float:
    return omega * 30.0 / math.pi


def rpm_to_hz(rpm: float) -> float:
    return rpm / 60.0


def hz_to_rpm(freq: float) -> float:
    return freq * 60.0


@dataclass(frozen=True)
class MaterialSpec:
    """Isotropic shaft/stator material."""

    name: str
    density: float  # kg/m^3
    yield_strength: float  # Pa, 0.2% offset
    poisson_ratio: float
    young_modulus: float  # Pa
    relative_permeability: float = 1.0
    linear_flux_limit: float = 1.0  # T, upper end of the linear B-H range

    def validate(self) -> None:
        bad = []
        if not self.name:
            bad.append("name must be non-empty")
        if self.density <= 0:
            bad.append(f"density must be > 0 (got {self.density})")
        if self.yield_strength <= 0:
            bad.append(f"yield_strength must be > 0 (got {self.yield_strength})")
        if not 0.0 < self.poisson_ratio < 0.5:
            bad.append(f"poisson_ratio must lie in (0, 0.5) (got {self.poisson_ratio})")
        if self.young_modulus <= 0:
            bad.append(f"young_modulus must be > 0 (got {self.young_modulus})")
        if self.relative_permeability < 1.0:
            bad.append(
                f"relative_permeability must be >= 1 (got {self.relative_permeability})"
            )
        if self.linear_flux_limit <= 0:
            bad.append(f"linear_flux_limit must be > 0 (got {self.linear_flux_limit})")
        if bad:
            raise SpecViolation(f"material '{self.name}'", bad)

    @property
    def shear_modulus(self) -> float:
        return self.young_modulus / (2.0 * (1.0 + self.poisson_ratio))


@dataclass(frozen=True)
class PermanentMagnetSpec:
    """Rectangular bias magnet, characterised by its catalog recoil line."""

    remanence: float  # T
    coercivity: float  # A/m
    thickness: float  # m, along magnetisation
    width: float  # m
    length: float  # m

    @property
    def pole_face_area(self) -> float:
        return self.width * self.length

    def validate(self) -> None:
        bad = []
        if self.remanence <= 0:
            bad.append(f"remanence must be > 0 (got {self.remanence})")
        if self.coercivity <= 0:
            bad.append(f"coercivity must be > 0 (got {self.coercivity})")
        for name in ("thickness", "width", "length"):
            v = getattr(self, name)
            if v <= 0:
                bad.append(f"{name} must be > 0 (got {v})")
        if bad:
            raise SpecViolation("permanent magnet", bad)


@dataclass(frozen=True)
class GasSpec:
    """Working gas for the drive turbine. Defaults describe dry air."""

    specific_heat_ratio: float = 1.4
    gas_constant: float = 287.05  # J/(kg K)

    def validate(self) -> None:
        bad = []
        if self.specific_heat_ratio <= 1.0:
            bad.append(
                f"specific_heat_ratio must be > 1 (got {self.specific_heat_ratio})"
            )
        if self.gas_constant <= 0:
            bad.append(f"gas_constant must be > 0 (got {self.gas_constant})")
        if bad:
            raise SpecViolation("gas", bad)

    def speed_of_sound(self, temperature: float) -> float:
        """a = sqrt(k R T) for the given static temperature in K."""
        if temperature <= 0:
            raise ValueError(f"temperature must be > 0 K (got {temperature})")
        return math.sqrt(self.specific_heat_ratio * self.gas_constant * temperature)


AISI_410 = MaterialSpec(
    name="AISI 410",
    density=7700.0,
    yield_strength=275.0e6,
    poisson_ratio=0.28,
    young_modulus=200.0e9,
    relative_permeability=700.0,
    linear_flux_limit=1.0,
)

DRY_AIR = GasSpec()
