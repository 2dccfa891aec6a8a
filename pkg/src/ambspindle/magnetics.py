"""Magnetic bearing force models, gains, and capacity envelopes.

Radial suspension: a homopolar pair of four-pole stators whose bias flux
comes from permanent magnets between the stators and whose control flux
comes from pole coils driven differentially. The magnet recoil line and
the series gap reluctances give the bias density per pole loop; the
control MMF of the two opposing pole coils drives a density that adds in
one gap and subtracts in the opposite one. Iron is treated as ideal and
three dimensionless correction factors (k_m on the bias-path gap term,
k_l on the bias-path magnet/leakage term, k_c on the control path)
absorb what a field solution would add; they default to 1.

Axial suspension: two opposed U-core reluctance actuators sharing one
winding count, operated with bias plus differential control current. A
single factor k_ax corrects both actuators.

Force slew above the amplifier voltage limit rolls capacity off as 1/f;
the envelope is the pointwise minimum of the static capacity and that
roll-off.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .core import MU0, GapClosureError, PermanentMagnetSpec, SpecViolation

DEFAULT_STIFFNESS_BAND = (1.4e4, 1.4e5)  # N/m, open-loop negative stiffness
DEFAULT_CURRENT_DENSITY_BAND = (2.0e6, 5.0e6)  # A/m^2
DEFAULT_CURRENT_DENSITY_TARGET = 4.0e6  # A/m^2


@dataclass(frozen=True)
class CorrectionFactors:
    """Lumped corrections for the radial circuit, 1 = ideal-iron model."""

    bias_gap: float = 1.0  # k_m, scales the gap term of the bias loop
    control: float = 1.0  # k_c, scales the control-path reluctance
    bias_leak: float = 1.0  # k_l, scales the magnet term of the bias loop

    def validate(self) -> None:
        bad = [
            f"{name} must be > 0 (got {getattr(self, name)})"
            for name in ("bias_gap", "control", "bias_leak")
            if getattr(self, name) <= 0
        ]
        if bad:
            raise SpecViolation("correction factors", bad)


@dataclass(frozen=True)
class RadialAmbDesign:
    """Geometry and winding of one homopolar radial bearing."""

    stator_inner_radius: float  # m, yoke bore that the poles grow from
    stator_radial_thickness: float  # m, yoke ring radial depth
    pole_length: float  # m, lamination stack (axial) length
    pole_width: float  # m, pole tangential width
    pole_face_radius: float  # m, radius of the pole face at the gap
    magnet: PermanentMagnetSpec
    airgap: float  # m, radial gap at the centered position
    turns_per_pole: int
    max_control_current: float  # A
    control_current_design: float  # A, rated control current
    correction: CorrectionFactors = CorrectionFactors()
    amplifier_voltage: float = 0.0  # V, 0 = no slew limit modelled
    wire_cross_section: float = 0.0  # m^2, 0 = not specified
    flux_limit: float = 1.0  # T, linear-range cap for the gap density

    @property
    def pole_face_area(self) -> float:
        return self.pole_width * self.pole_length

    @property
    def pole_height(self) -> float:
        return self.stator_inner_radius - self.pole_face_radius

    def validate(self) -> None:
        bad = []
        for name in ("stator_inner_radius", "stator_radial_thickness",
                     "pole_length", "pole_width", "pole_face_radius", "airgap"):
            if getattr(self, name) <= 0:
                bad.append(f"{name} must be > 0 (got {getattr(self, name)})")
        if self.pole_height <= 0:
            bad.append(
                "pole_face_radius must lie inside the yoke bore "
                f"({self.pole_face_radius} >= {self.stator_inner_radius})"
            )
        if self.turns_per_pole < 1:
            bad.append(f"turns_per_pole must be >= 1 (got {self.turns_per_pole})")
        if self.max_control_current <= 0:
            bad.append(
                f"max_control_current must be > 0 (got {self.max_control_current})"
            )
        if not 0.0 <= self.control_current_design <= self.max_control_current:
            bad.append(
                "control_current_design must lie in [0, max_control_current] "
                f"(got {self.control_current_design} vs {self.max_control_current})"
            )
        if self.flux_limit <= 0:
            bad.append(f"flux_limit must be > 0 (got {self.flux_limit})")
        if self.amplifier_voltage < 0:
            bad.append(f"amplifier_voltage must be >= 0 (got {self.amplifier_voltage})")
        if self.wire_cross_section < 0:
            bad.append(f"wire_cross_section must be >= 0 (got {self.wire_cross_section})")
        if bad:
            raise SpecViolation("radial bearing", bad)
        self.magnet.validate()
        self.correction.validate()


def _bias_denominator(d: RadialAmbDesign, gap: float) -> float:
    m = d.magnet
    return (
        2.0 * d.correction.bias_gap * m.pole_face_area * m.remanence * gap
        + MU0 * d.correction.bias_leak * d.pole_face_area * m.coercivity * m.thickness
    )


def radial_bias_density(d: RadialAmbDesign, gap: float) -> float:
    """Bias gap density of one pole loop at the given running gap, T."""
    m = d.magnet
    num = MU0 * m.pole_face_area * m.remanence * m.coercivity * m.thickness
    return num / _bias_denominator(d, gap)


def radial_control_density(d: RadialAmbDesign, current: float) -> float:
    """Control density from the differential pole pair, T.

    The two opposing pole coils act in series on the control loop, so
    the loop MMF is 2 n i across a gap path of total length 2 airgap;
    the gap terms cancel the 2 and the density is independent of rotor
    position as long as neither gap closes.
    """
    return MU0 * d.turns_per_pole * current / (d.correction.control * d.airgap)


def radial_flux_densities(d: RadialAmbDesign, displacement: float,
                          current: float) -> tuple[float, float]:
    """(loaded-side, opposite-side) gap densities at an operating point.

    ``displacement`` moves the rotor toward the loaded pole, shrinking
    that gap; positive control current reinforces the loaded side.
    """
    if abs(displacement) >= d.airgap:
        raise GapClosureError(
            f"displacement {displacement} m reaches the {d.airgap} m airgap"
        )
    control = radial_control_density(d, current)
    b_loaded = radial_bias_density(d, d.airgap - displacement) + control
    b_opposite = radial_bias_density(d, d.airgap + displacement) - control
    return b_loaded, b_opposite


def force_from_flux_densities(b_loaded: float, b_opposite: float,
                              pole_face_area: float, stator_count: int = 2) -> float:
    """Maxwell-stress resultant of the opposing pole pair, N."""
    return stator_count * pole_face_area * (b_loaded ** 2 - b_opposite ** 2) / (2.0 * MU0)


def radial_force(d: RadialAmbDesign, displacement: float, current: float) -> float:
    """Net radial force along the loaded axis, N. Positive with current."""
    b_loaded, b_opposite = radial_flux_densities(d, displacement, current)
    return force_from_flux_densities(b_loaded, b_opposite, d.pole_face_area)


def radial_gains(d: RadialAmbDesign) -> tuple[float, float]:
    """(displacement stiffness, current gain) of the linearised bearing.

    Closed forms from differentiating the force model at the centered,
    zero-current point. The displacement stiffness is positive in the
    sense force-with-displacement, i.e. destabilising.
    """
    m = d.magnet
    den0 = _bias_denominator(d, d.airgap)
    k_disp = (
        8.0 * MU0 * d.correction.bias_gap * d.pole_face_area
        * m.pole_face_area ** 3 * m.remanence ** 3
        * m.coercivity ** 2 * m.thickness ** 2
        / den0 ** 3
    )
    k_curr = (
        4.0 * MU0 * d.pole_face_area * m.pole_face_area * m.remanence
        * m.coercivity * m.thickness * d.turns_per_pole
        / (d.correction.control * d.airgap * den0)
    )
    return k_disp, k_curr


def radial_current_limit(d: RadialAmbDesign) -> float:
    """Largest control current before field reversal or saturation, A."""
    bias = radial_bias_density(d, d.airgap)
    per_amp = radial_control_density(d, 1.0)
    i_reversal = bias / per_amp
    i_saturation = max(d.flux_limit - bias, 0.0) / per_amp
    return max(0.0, min(d.max_control_current, i_reversal, i_saturation))


def radial_static_capacity(d: RadialAmbDesign, current: float | None = None) -> float:
    """Centered-rotor force at the usable current, N.

    ``current`` defaults to the design maximum; either way it is clipped
    to the field-reversal and saturation limits.
    """
    i = d.max_control_current if current is None else current
    i = min(i, radial_current_limit(d))
    return radial_force(d, 0.0, i)


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    value: float
    low: float
    high: float
    strict_high: bool = False

    @property
    def passed(self) -> bool:
        if self.value < self.low:
            return False
        return self.value < self.high if self.strict_high else self.value <= self.high


def radial_constraint_checks(
    d: RadialAmbDesign,
    stiffness_band: tuple[float, float] = DEFAULT_STIFFNESS_BAND,
    current_density_band: tuple[float, float] = DEFAULT_CURRENT_DENSITY_BAND,
) -> list[ConstraintCheck]:
    """The four design checks at the rated control current."""
    b_loaded, _ = radial_flux_densities(d, 0.0, d.control_current_design)
    bias = radial_bias_density(d, d.airgap)
    control = radial_control_density(d, d.control_current_design)
    k_disp, _ = radial_gains(d)
    checks = [
        ConstraintCheck("gap_flux_density", b_loaded, 0.0, d.flux_limit),
        ConstraintCheck("control_vs_bias", control, 0.0, bias, strict_high=True),
        ConstraintCheck("negative_stiffness", k_disp,
                        stiffness_band[0], stiffness_band[1]),
    ]
    if d.wire_cross_section > 0:
        j = d.control_current_design / d.wire_cross_section
        checks.append(ConstraintCheck("current_density", j,
                                      current_density_band[0],
                                      current_density_band[1]))
    return checks


def coil_inductance(effective_turns: int, gaps: list[tuple[float, float]],
                    correction: float = 1.0) -> float:
    """Inductance of a winding across series airgaps, H.

    ``gaps`` is a list of (length, area) pairs; the correction factor
    scales the total reluctance the way it scales the force-model paths.
    """
    if not gaps:
        raise ValueError("at least one airgap required")
    reluctance = correction * sum(l / (MU0 * a) for l, a in gaps)
    return effective_turns ** 2 / reluctance


def radial_coil_inductance(d: RadialAmbDesign) -> float:
    """Control-circuit inductance of one radial axis (two poles), H."""
    return coil_inductance(
        2 * d.turns_per_pole,
        [(d.airgap, d.pole_face_area), (d.airgap, d.pole_face_area)],
        d.correction.control,
    )


# --- axial bearing -----------------------------------------------------------


@dataclass(frozen=True)
class AxialAmbDesign:
    """Opposed pair of U-core thrust actuators on a shared disc."""

    airgap: float  # m per side at the centered position
    pole_area: float  # m^2, total face area of one actuator
    turns: int  # per actuator
    bias_current: float  # A
    max_current: float  # A per coil
    correction: float = 1.0  # k_ax
    amplifier_voltage: float = 0.0  # V
    flux_limit: float = 1.0  # T

    def validate(self) -> None:
        bad = []
        if self.airgap <= 0:
            bad.append(f"airgap must be > 0 (got {self.airgap})")
        if self.pole_area <= 0:
            bad.append(f"pole_area must be > 0 (got {self.pole_area})")
        if self.turns < 1:
            bad.append(f"turns must be >= 1 (got {self.turns})")
        if self.bias_current <= 0:
            bad.append(f"bias_current must be > 0 (got {self.bias_current})")
        if not self.bias_current <= self.max_current:
            bad.append(
                f"max_current must be >= bias_current "
                f"(got {self.max_current} < {self.bias_current})"
            )
        if self.correction <= 0:
            bad.append(f"correction must be > 0 (got {self.correction})")
        if self.amplifier_voltage < 0:
            bad.append(f"amplifier_voltage must be >= 0 (got {self.amplifier_voltage})")
        if bad:
            raise SpecViolation("axial bearing", bad)


def axial_force(d: AxialAmbDesign, displacement: float, control_current: float) -> float:
    """Net thrust of the opposed pair, N, positive toward actuator 1.

    Actuator 1 carries bias + control across the gap the displacement
    shrinks; actuator 2 carries bias - control across the widening gap.
    """
    if abs(displacement) >= d.airgap:
        raise GapClosureError(
            f"displacement {displacement} m reaches the {d.airgap} m airgap"
        )
    i1 = d.bias_current + control_current
    i2 = d.bias_current - control_current
    l1 = d.airgap - displacement
    l2 = d.airgap + displacement
    scale = MU0 * d.turns ** 2 * d.pole_area / (4.0 * d.correction ** 2)
    return scale * ((i1 / l1) ** 2 - (i2 / l2) ** 2)


def axial_gains(d: AxialAmbDesign) -> tuple[float, float]:
    """(displacement stiffness, current gain) at center and bias, exact."""
    base = MU0 * d.turns ** 2 * d.pole_area / d.correction ** 2
    k_disp = base * d.bias_current ** 2 / d.airgap ** 3
    k_curr = base * d.bias_current / d.airgap ** 2
    return k_disp, k_curr


def axial_static_capacity(d: AxialAmbDesign) -> float:
    """Centered thrust with one coil at its current limit, N."""
    control = d.max_current - d.bias_current
    return axial_force(d, 0.0, control)


def axial_bias_offset_for_load(d: AxialAmbDesign, load: float) -> float:
    """Differential current that statically carries ``load`` at center, A.

    The centered force is exactly linear in the control current, so the
    offset is load / current gain; it must stay within the coil limit.
    """
    _, k_curr = axial_gains(d)
    offset = load / k_curr
    if d.bias_current + abs(offset) > d.max_current:
        raise SpecViolation(
            "axial bearing",
            [
                f"load {load} N needs offset {offset:.3f} A, exceeding "
                f"max_current {d.max_current} A over bias {d.bias_current} A"
            ],
        )
    return offset


def axial_coil_inductance(d: AxialAmbDesign) -> float:
    """Winding inductance of one actuator (two series gap crossings), H."""
    return coil_inductance(
        d.turns, [(2.0 * d.airgap, d.pole_area)], d.correction
    )


# --- capacity envelope -------------------------------------------------------


@dataclass(frozen=True)
class CapacityEnvelope:
    """Force capacity versus frequency for one control axis.

    Below the knee the static capacity holds; above it the amplifier
    voltage limits current slew and capacity falls as
    gain * voltage / (2 pi f inductance).
    """

    static_capacity: float  # N
    slew_constant: float  # N * rad/s, gain * voltage / inductance

    @property
    def knee_frequency(self) -> float:
        """Unique frequency where the two branches meet, Hz."""
        if self.static_capacity <= 0:
            return math.inf
        return self.slew_constant / (2.0 * math.pi * self.static_capacity)

    def dynamic_capacity(self, frequency: float) -> float:
        if frequency <= 0:
            return math.inf
        return self.slew_constant / (2.0 * math.pi * frequency)

    def capacity(self, frequency: float) -> float:
        if frequency < 0:
            raise ValueError(f"frequency must be >= 0 (got {frequency})")
        return min(self.static_capacity, self.dynamic_capacity(frequency))


def capacity_envelope(static_capacity: float, current_gain: float,
                      amplifier_voltage: float,
                      inductance: float) -> CapacityEnvelope:
    if static_capacity < 0:
        raise ValueError(f"static capacity must be >= 0 (got {static_capacity})")
    if current_gain <= 0 or inductance <= 0:
        raise ValueError("current gain and inductance must be > 0")
    if amplifier_voltage <= 0:
        raise ValueError(f"amplifier voltage must be > 0 (got {amplifier_voltage})")
    return CapacityEnvelope(
        static_capacity=static_capacity,
        slew_constant=current_gain * amplifier_voltage / inductance,
    )


@dataclass(frozen=True)
class DemandVerdict:
    label: str
    frequency: float  # Hz
    demand: float  # N
    capacity: float  # N

    @property
    def passed(self) -> bool:
        return self.demand <= self.capacity


def envelope_verdicts(envelope: CapacityEnvelope,
                      points: list[tuple[float, float, str]]) -> list[DemandVerdict]:
    """Check (freq, magnitude, label) demand points against the envelope."""
    return [
        DemandVerdict(label=label, frequency=freq, demand=mag,
                      capacity=envelope.capacity(freq))
        for freq, mag, label in points
    ]


def save_envelope_csv(envelope: CapacityEnvelope, frequencies: list[float],
                      path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["freq_hz", "capacity_N"])
        for f in frequencies:
            writer.writerow([f"{f:.10g}", f"{envelope.capacity(f):.10g}"])


# --- packaging volume --------------------------------------------------------


def radial_amb_volume(d: RadialAmbDesign, connector_thickness: float | None = None,
                      fill_factor: float = 0.45) -> float:
    """Installed volume of the radial bearing pair, m^3.

    Counts both stator rings with their poles, the four bias magnets,
    four connector blocks of the same footprint (thickness defaults to
    the magnet thickness), and the coil copper with a mean turn length
    of one pole-perimeter. A coarse but monotone packaging measure for
    trading against capacity.
    """
    outer = d.stator_inner_radius + d.stator_radial_thickness
    ring = math.pi * (outer ** 2 - d.stator_inner_radius ** 2) * d.pole_length
    poles = 4.0 * d.pole_width * d.pole_height * d.pole_length
    m = d.magnet
    magnet_block = m.thickness * m.width * m.length
    if connector_thickness is None:
        connector_thickness = m.thickness
    connector_block = connector_thickness * m.width * m.length
    if d.wire_cross_section > 0:
        turn_length = 2.0 * (d.pole_width + d.pole_length)
        coils = 8.0 * d.turns_per_pole * d.wire_cross_section * turn_length / fill_factor
    else:
        coils = 0.0
    return 2.0 * (ring + poles) + 4.0 * magnet_block + 4.0 * connector_block + coils


def coil_window_area(d: RadialAmbDesign) -> float:
    """Winding window available to one coil side between adjacent poles, m^2."""
    mid_radius = 0.5 * (d.pole_face_radius + d.stator_inner_radius)
    pitch_arc = 2.0 * math.pi * mid_radius / 4.0
    clear = pitch_arc - d.pole_width
    return max(clear, 0.0) / 2.0 * d.pole_height
