"""Rotor geometry records and the centrifugal diameter limit.

The shaft is a stack of cylindrical segments (optionally hollow) plus
lumped discs for anything not modelled as a segment. The largest
admissible outer diameter at a given speed follows from the classic
rotating-disc stress limit: the peak tangential stress of a solid disc
spinning at angular speed w equals the yield stress when

    w * r = sqrt(8 sigma / ((3 + nu) rho))

so the peripheral speed, not the diameter alone, is what the material
caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import MaterialSpec, SpecViolation, rad_s_to_rpm, rpm_to_rad_s


def burst_peripheral_speed(material: MaterialSpec) -> float:
    """Peripheral speed at which a solid disc reaches yield, m/s."""
    return math.sqrt(
        8.0 * material.yield_strength
        / ((3.0 + material.poisson_ratio) * material.density)
    )


def max_outer_diameter(material: MaterialSpec, speed_rpm: float) -> float:
    """Largest solid-disc outer diameter that stays below yield, m."""
    if speed_rpm <= 0:
        raise ValueError(f"speed must be > 0 rpm (got {speed_rpm})")
    omega = rpm_to_rad_s(speed_rpm)
    return 2.0 * burst_peripheral_speed(material) / omega


def max_speed_rpm(material: MaterialSpec, outer_diameter: float) -> float:
    """Burst-limited speed for a given solid outer diameter."""
    if outer_diameter <= 0:
        raise ValueError(f"diameter must be > 0 (got {outer_diameter})")
    omega = burst_peripheral_speed(material) / (outer_diameter / 2.0)
    return rad_s_to_rpm(omega)


def diameter_check(material: MaterialSpec, outer_diameter: float,
                   speed_rpm: float) -> tuple[bool, float]:
    """(passes, limit_m): whether the diameter clears the burst limit."""
    limit = max_outer_diameter(material, speed_rpm)
    return outer_diameter <= limit, limit


@dataclass(frozen=True)
class RotorSegment:
    """One cylindrical piece of the shaft stack."""

    length: float  # m
    outer_diameter: float  # m
    inner_diameter: float = 0.0  # m, 0 for solid
    material: MaterialSpec | None = None  # None inherits the rotor default

    def validate(self) -> None:
        bad = []
        if self.length <= 0:
            bad.append(f"length must be > 0 (got {self.length})")
        if self.outer_diameter <= 0:
            bad.append(f"outer_diameter must be > 0 (got {self.outer_diameter})")
        if not 0.0 <= self.inner_diameter < self.outer_diameter:
            bad.append(
                "inner_diameter must lie in [0, outer_diameter) "
                f"(got {self.inner_diameter} vs {self.outer_diameter})"
            )
        if bad:
            raise SpecViolation("rotor segment", bad)

    def cross_section_area(self) -> float:
        return math.pi * (self.outer_diameter ** 2 - self.inner_diameter ** 2) / 4.0

    def area_moment(self) -> float:
        """Second moment of area about a diameter, m^4."""
        return math.pi * (self.outer_diameter ** 4 - self.inner_diameter ** 4) / 64.0


@dataclass(frozen=True)
class PointInertia:
    """Lumped disc attached to the shaft at an axial station."""

    position: float  # m from the tool-end face
    mass: float  # kg
    diametral_inertia: float = 0.0  # kg m^2
    polar_inertia: float = 0.0  # kg m^2

    def validate(self) -> None:
        bad = []
        if self.mass < 0:
            bad.append(f"mass must be >= 0 (got {self.mass})")
        if self.diametral_inertia < 0:
            bad.append(f"diametral_inertia must be >= 0 (got {self.diametral_inertia})")
        if self.polar_inertia < 0:
            bad.append(f"polar_inertia must be >= 0 (got {self.polar_inertia})")
        if bad:
            raise SpecViolation("point inertia", bad)


@dataclass(frozen=True)
class BearingSupport:
    """Isotropic linear spring (and optional damper) acting at a station."""

    position: float  # m from the tool-end face
    stiffness: float  # N/m, same in both lateral directions
    damping: float = 0.0  # N s/m

    def validate(self) -> None:
        bad = []
        if self.stiffness <= 0:
            bad.append(f"stiffness must be > 0 (got {self.stiffness})")
        if self.damping < 0:
            bad.append(f"damping must be >= 0 (got {self.damping})")
        if bad:
            raise SpecViolation("bearing support", bad)


@dataclass(frozen=True)
class RotorModel:
    """Segment stack with supports, ready for lateral analysis."""

    segments: tuple[RotorSegment, ...]
    material: MaterialSpec
    bearings: tuple[BearingSupport, ...] = ()
    point_inertias: tuple[PointInertia, ...] = ()
    shear_coefficient: float = 0.9  # Timoshenko shear factor for solid circles

    def validate(self) -> None:
        if not self.segments:
            raise SpecViolation("rotor", ["at least one segment required"])
        for s in self.segments:
            s.validate()
        self.material.validate()
        L = self.length
        bad = []
        for b in self.bearings:
            b.validate()
            if not 0.0 <= b.position <= L:
                bad.append(f"bearing at {b.position} m outside shaft [0, {L}]")
        for p in self.point_inertias:
            p.validate()
            if not 0.0 <= p.position <= L:
                bad.append(f"point inertia at {p.position} m outside shaft [0, {L}]")
        if not 0.0 < self.shear_coefficient <= 1.0:
            bad.append(
                f"shear_coefficient must lie in (0, 1] (got {self.shear_coefficient})"
            )
        if bad:
            raise SpecViolation("rotor", bad)

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)

    def segment_material(self, seg: RotorSegment) -> MaterialSpec:
        return seg.material if seg.material is not None else self.material

    def mass(self) -> float:
        """Total mass including lumped inertias, kg."""
        m = sum(
            self.segment_material(s).density * s.cross_section_area() * s.length
            for s in self.segments
        )
        return m + sum(p.mass for p in self.point_inertias)

    def weight(self, g: float = 9.80665) -> float:
        return self.mass() * g

    def max_outer_diameter(self) -> float:
        return max(s.outer_diameter for s in self.segments)

    def boundaries(self) -> list[float]:
        """Axial positions of segment interfaces, tool end first."""
        out = [0.0]
        for s in self.segments:
            out.append(out[-1] + s.length)
        return out
