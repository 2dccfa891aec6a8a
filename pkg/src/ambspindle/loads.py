"""Bearing load demands: unbalance, cutting forces, and their spectrum.

Cutting forces enter as a measured (or simulated) force trace sampled
over one tool revolution. The demand model reduces that trace to a small
set of static and harmonic loads, adds the balance-grade unbalance force
at the rotation frequency, and applies per-class safety factors. These
demand points are what the bearing capacity envelope is checked against.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .core import SpecViolation, rpm_to_rad_s


def unbalance_force(grade: float, mass: float, speed_rad_s: float) -> float:
    """Rotating force of a balance-grade residual unbalance, N.

    ``grade`` is the balance quality grade in mm/s (per ISO 1940-1 the
    grade number is the product of specific unbalance and angular
    speed), ``mass`` the rotor mass in kg, ``speed_rad_s`` the rotation
    speed in rad/s. The 1/1000 converts the grade's millimetres to m.
    """
    if grade < 0:
        raise ValueError(f"balance grade must be >= 0 (got {grade})")
    if mass <= 0:
        raise ValueError(f"rotor mass must be > 0 (got {mass})")
    if speed_rad_s < 0:
        raise ValueError(f"speed must be >= 0 (got {speed_rad_s})")
    return grade * mass * speed_rad_s / 1000.0


def cutting_speed(tool_diameter: float, speed_rpm: float) -> float:
    """Peripheral cutting speed in m/min for a tool diameter in m."""
    if tool_diameter <= 0:
        raise ValueError(f"tool diameter must be > 0 (got {tool_diameter})")
    return math.pi * tool_diameter * speed_rpm


def required_speed_rpm(tool_diameter: float, target_speed: float) -> float:
    """Spindle speed needed to reach a cutting speed in m/min."""
    if tool_diameter <= 0:
        raise ValueError(f"tool diameter must be > 0 (got {tool_diameter})")
    if target_speed <= 0:
        raise ValueError(f"target cutting speed must be > 0 (got {target_speed})")
    return target_speed / (math.pi * tool_diameter)


def tooth_passing_frequency(speed_rpm: float, flutes: int) -> float:
    """Flute engagement frequency in Hz."""
    if flutes < 1:
        raise ValueError(f"flute count must be >= 1 (got {flutes})")
    return flutes * speed_rpm / 60.0


MIN_TRACE_SAMPLES = 8


@dataclass(frozen=True)
class ForceTrace:
    """Tool-tip force over one revolution, uniformly sampled in angle.

    ``angles`` must be uniformly spaced and cover exactly one revolution
    (2 pi / n spacing); forces are in N in spindle coordinates with z
    along the rotation axis.
    """

    angles: np.ndarray  # rad
    fx: np.ndarray  # N
    fy: np.ndarray  # N
    fz: np.ndarray  # N

    def validate(self) -> None:
        bad = []
        n = len(self.angles)
        if n < MIN_TRACE_SAMPLES:
            bad.append(f"at least {MIN_TRACE_SAMPLES} samples required (got {n})")
        for name in ("fx", "fy", "fz"):
            if len(getattr(self, name)) != n:
                bad.append(f"{name} length {len(getattr(self, name))} != {n} angles")
        if n >= 2:
            steps = np.diff(self.angles)
            if steps.size and not np.allclose(steps, 2.0 * math.pi / n, rtol=1e-6, atol=1e-9):
                bad.append("angles must be uniform over one revolution")
        if bad:
            raise SpecViolation("force trace", bad)

    def __len__(self) -> int:
        return len(self.angles)


def trace_from_samples(fx, fy, fz) -> ForceTrace:
    """Build a trace from force samples assumed uniform over one turn."""
    fx = np.asarray(fx, dtype=float)
    n = len(fx)
    angles = np.arange(n) * (2.0 * math.pi / max(n, 1))
    t = ForceTrace(angles=angles,
                   fx=fx,
                   fy=np.asarray(fy, dtype=float),
                   fz=np.asarray(fz, dtype=float))
    t.validate()
    return t


def load_trace_csv(path: str | Path) -> ForceTrace:
    """Read a trace CSV with header angle_rad,fx_N,fy_N,fz_N."""
    path = Path(path)
    ang, fx, fy, fz = [], [], [], []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"angle_rad", "fx_N", "fy_N", "fz_N"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise SpecViolation(
                f"trace file {path.name}",
                [f"header must contain {sorted(required)} (got {reader.fieldnames})"],
            )
        for row in reader:
            ang.append(float(row["angle_rad"]))
            fx.append(float(row["fx_N"]))
            fy.append(float(row["fy_N"]))
            fz.append(float(row["fz_N"]))
    trace = ForceTrace(
        angles=np.asarray(ang), fx=np.asarray(fx), fy=np.asarray(fy), fz=np.asarray(fz)
    )
    trace.validate()
    return trace


def save_trace_csv(trace: ForceTrace, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["angle_rad", "fx_N", "fy_N", "fz_N"])
        for a, x, y, z in zip(trace.angles, trace.fx, trace.fy, trace.fz):
            writer.writerow([f"{a:.10g}", f"{x:.10g}", f"{y:.10g}", f"{z:.10g}"])


def fourier_coefficients(samples: np.ndarray, angles: np.ndarray,
                         max_harmonic: int) -> np.ndarray:
    """Complex coefficients c_k = <f(theta) e^{-jk theta}> for k = -K..K.

    Index the returned array with k + max_harmonic. Works for complex
    ``samples`` (the in-plane force is treated as fx + j fy so forward
    and backward rotating parts stay distinct).
    """
    k = np.arange(-max_harmonic, max_harmonic + 1)
    basis = np.exp(-1j * np.outer(k, angles))
    return basis @ np.asarray(samples, dtype=complex) / len(angles)


def harmonic_magnitude(samples: np.ndarray, angles: np.ndarray, harmonic: int) -> float:
    """One-sided amplitude of the +/-k coefficient pair.

    For a real signal this is the usual one-sided spectrum amplitude
    2|c_k|; for a complex (planar) signal it is |c_k| + |c_-k|, the peak
    modulus the pair can produce when the two rotating components align.
    """
    if harmonic < 1:
        raise ValueError(f"harmonic index must be >= 1 (got {harmonic})")
    c = fourier_coefficients(samples, angles, harmonic)
    c_plus = c[harmonic + harmonic]
    c_minus = c[0]
    return abs(c_plus) + abs(c_minus)


@dataclass(frozen=True)
class SafetyFactors:
    """Per-class demand multipliers."""

    unbalance: float = 1.5
    machining_static: float = 2.0
    machining_dynamic: float = 3.0

    def validate(self) -> None:
        bad = [
            f"{name} must be >= 1 (got {getattr(self, name)})"
            for name in ("unbalance", "machining_static", "machining_dynamic")
            if getattr(self, name) < 1.0
        ]
        if bad:
            raise SpecViolation("safety factors", bad)


@dataclass(frozen=True)
class DemandSpectrum:
    """Bearing load demands at one operating speed.

    Frequencies in Hz, magnitudes in N. ``factored`` records whether the
    safety factors have been applied, so they cannot be applied twice.
    """

    speed_rpm: float
    static_radial: float
    dynamic_radial: float
    static_axial: float
    dynamic_axial: float
    unbalance: float
    rotation_frequency: float  # Hz, location of the unbalance line
    tooth_passing: float  # Hz, location of the machining harmonics
    factored: bool = False

    def radial_points(self) -> list[tuple[float, float, str]]:
        """(freq_hz, magnitude_N, label) rows for the radial plane."""
        return [
            (0.0, self.static_radial, "static_radial"),
            (self.rotation_frequency, self.unbalance, "unbalance"),
            (self.tooth_passing, self.dynamic_radial, "dynamic_radial"),
        ]

    def axial_points(self) -> list[tuple[float, float, str]]:
        return [
            (0.0, self.static_axial, "static_axial"),
            (self.tooth_passing, self.dynamic_axial, "dynamic_axial"),
        ]


def raw_demands(trace: ForceTrace, speed_rpm: float, flutes: int,
                balance_grade: float, rotor_mass: float) -> DemandSpectrum:
    """Unfactored demand spectrum from a trace and a balance grade."""
    trace.validate()
    if len(trace) < 2 * (flutes + 1):
        raise SpecViolation(
            "force trace",
            [
                f"{len(trace)} samples cannot resolve harmonic {flutes} "
                f"without aliasing (need >= {2 * (flutes + 1)})"
            ],
        )
    planar = trace.fx + 1j * trace.fy
    mean_planar = planar.mean()
    return DemandSpectrum(
        speed_rpm=speed_rpm,
        static_radial=abs(mean_planar),
        dynamic_radial=harmonic_magnitude(planar - mean_planar, trace.angles, flutes),
        static_axial=abs(trace.fz.mean()),
        dynamic_axial=harmonic_magnitude(
            trace.fz - trace.fz.mean(), trace.angles, flutes
        ),
        unbalance=unbalance_force(balance_grade, rotor_mass, rpm_to_rad_s(speed_rpm)),
        rotation_frequency=speed_rpm / 60.0,
        tooth_passing=tooth_passing_frequency(speed_rpm, flutes),
        factored=False,
    )


def apply_safety_factors(demands: DemandSpectrum, sf: SafetyFactors) -> DemandSpectrum:
    """Scale each demand class by its factor. Refuses to factor twice."""
    if demands.factored:
        raise ValueError("demand spectrum already safety-factored")
    sf.validate()
    return replace(
        demands,
        static_radial=sf.machining_static * demands.static_radial,
        dynamic_radial=sf.machining_dynamic * demands.dynamic_radial,
        static_axial=sf.machining_static * demands.static_axial,
        dynamic_axial=sf.machining_dynamic * demands.dynamic_axial,
        unbalance=sf.unbalance * demands.unbalance,
        factored=True,
    )


def demand_spectrum(trace: ForceTrace, speed_rpm: float, flutes: int,
                    balance_grade: float, rotor_mass: float,
                    sf: SafetyFactors | None = None) -> DemandSpectrum:
    """Safety-factored demand spectrum (factors of 1 give the raw one)."""
    demands = raw_demands(trace, speed_rpm, flutes, balance_grade, rotor_mass)
    return apply_safety_factors(demands, sf if sf is not None else SafetyFactors())


def save_demand_csv(demands: DemandSpectrum, path: str | Path) -> None:
    """Demand points as freq_hz,magnitude_N,label rows."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["freq_hz", "magnitude_N", "label"])
        for freq, mag, label in demands.radial_points() + demands.axial_points():
            writer.writerow([f"{freq:.10g}", f"{mag:.10g}", label])
