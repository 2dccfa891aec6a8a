"""Lateral rotordynamics on two-node Timoshenko shaft elements.

Each node carries four degrees of freedom: translations (ux, uy) and
right-hand rotations (tx, ty) about the x and y axes, with the shaft
axis along z and spin about +z. Bending in the two planes uses the
standard shear-deformable cubic shape functions; consistent
translational and rotary inertia plus the spin-speed-proportional
gyroscopic matrix follow from the same interpolation, so forward and
backward whirl branches come out of one quadratic eigenproblem

    M qdd + (C + speed * G) qd + K q = 0

solved in state-space form at each spin speed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .core import AnalysisError, rpm_to_rad_s
from .rotor import RotorModel

# Planar DOF maps: the x-z plane bends with slope +d(ux)/dz = ty, the
# y-z plane with slope +d(uy)/dz = -tx. Node order (ux, uy, tx, ty).
_XPLANE = ((0, 1.0), (3, 1.0), (4, 1.0), (7, 1.0))
_YPLANE = ((1, 1.0), (2, -1.0), (5, 1.0), (6, -1.0))


def _plane_map(entries) -> np.ndarray:
    T = np.zeros((4, 8))
    for row, (col, sign) in enumerate(entries):
        T[row, col] = sign
    return T


_TX = _plane_map(_XPLANE)
_TY = _plane_map(_YPLANE)


def _planar_stiffness(EI: float, L: float, phi: float) -> np.ndarray:
    c = EI / ((1.0 + phi) * L ** 3)
    return c * np.array([
        [12.0, 6.0 * L, -12.0, 6.0 * L],
        [6.0 * L, (4.0 + phi) * L ** 2, -6.0 * L, (2.0 - phi) * L ** 2],
        [-12.0, -6.0 * L, 12.0, -6.0 * L],
        [6.0 * L, (2.0 - phi) * L ** 2, -6.0 * L, (4.0 + phi) * L ** 2],
    ])


def _planar_translational_mass(rhoA: float, L: float, phi: float) -> np.ndarray:
    m1 = 13.0 / 35.0 + 7.0 * phi / 10.0 + phi ** 2 / 3.0
    m2 = 11.0 / 210.0 + 11.0 * phi / 120.0 + phi ** 2 / 24.0
    m3 = 9.0 / 70.0 + 3.0 * phi / 10.0 + phi ** 2 / 6.0
    m4 = 13.0 / 420.0 + 3.0 * phi / 40.0 + phi ** 2 / 24.0
    m5 = 1.0 / 105.0 + phi / 60.0 + phi ** 2 / 120.0
    m6 = 1.0 / 140.0 + phi / 60.0 + phi ** 2 / 120.0
    c = rhoA * L / (1.0 + phi) ** 2
    return c * np.array([
        [m1, m2 * L, m3, -m4 * L],
        [m2 * L, m5 * L ** 2, m4 * L, -m6 * L ** 2],
        [m3, m4 * L, m1, -m2 * L],
        [-m4 * L, -m6 * L ** 2, -m2 * L, m5 * L ** 2],
    ])


def _planar_rotary_mass(rhoI: float, L: float, phi: float) -> np.ndarray:
    r1 = 6.0 / 5.0
    r2 = 1.0 / 10.0 - phi / 2.0
    r3 = 2.0 / 15.0 + phi / 6.0 + phi ** 2 / 3.0
    r4 = 1.0 / 30.0 + phi / 6.0 - phi ** 2 / 6.0
    c = rhoI / ((1.0 + phi) ** 2 * L)
    return c * np.array([
        [r1, r2 * L, -r1, r2 * L],
        [r2 * L, r3 * L ** 2, -r2 * L, -r4 * L ** 2],
        [-r1, -r2 * L, r1, -r2 * L],
        [r2 * L, -r4 * L ** 2, -r2 * L, r3 * L ** 2],
    ])


@dataclass
class FEModel:
    """Assembled system matrices for one rotor."""

    nodes: np.ndarray  # axial positions, m
    mass: np.ndarray
    stiffness: np.ndarray
    gyro: np.ndarray  # multiply by spin speed in rad/s
    damping: np.ndarray

    @property
    def n_dof(self) -> int:
        return self.mass.shape[0]


def _mesh_nodes(model: RotorModel, target_elements: int) -> np.ndarray:
    """Node positions honouring segment interfaces and attachment points."""
    anchors = set(model.boundaries())
    anchors.update(b.position for b in model.bearings)
    anchors.update(p.position for p in model.point_inertias)
    anchors = sorted(anchors)
    h = model.length / max(target_elements, 1)
    nodes = [anchors[0]]
    for a, b in zip(anchors, anchors[1:]):
        span = b - a
        n = max(1, math.ceil(span / h - 1e-12))
        for i in range(1, n + 1):
            nodes.append(a + span * i / n)
    return np.asarray(nodes)


def assemble(model: RotorModel, target_elements: int = 24) -> FEModel:
    """Mesh the segment stack and assemble M, K, G and C."""
    model.validate()
    nodes = _mesh_nodes(model, target_elements)
    n = len(nodes)
    ndof = 4 * n
    M = np.zeros((ndof, ndof))
    K = np.zeros((ndof, ndof))
    G = np.zeros((ndof, ndof))
    C = np.zeros((ndof, ndof))

    boundaries = model.boundaries()
    # element -> owning segment via midpoint lookup
    for e in range(n - 1):
        z0, z1 = nodes[e], nodes[e + 1]
        mid = 0.5 * (z0 + z1)
        seg = None
        for s, (a, b) in zip(model.segments, zip(boundaries, boundaries[1:])):
            if a - 1e-12 <= mid <= b + 1e-12:
                seg = s
                break
        if seg is None:
            raise AnalysisError(f"element at {mid} m not inside any segment")
        mat = model.segment_material(seg)
        L = z1 - z0
        A = seg.cross_section_area()
        I = seg.area_moment()
        EI = mat.young_modulus * I
        phi = 12.0 * EI / (
            model.shear_coefficient * mat.shear_modulus * A * L ** 2
        )
        Kp = _planar_stiffness(EI, L, phi)
        Mp = _planar_translational_mass(mat.density * A, L, phi)
        Rd = _planar_rotary_mass(mat.density * I, L, phi)
        Rp = _planar_rotary_mass(mat.density * 2.0 * I, L, phi)  # polar = 2 I_d
        Ke = _TX.T @ Kp @ _TX + _TY.T @ Kp @ _TY
        Me = _TX.T @ (Mp + Rd) @ _TX + _TY.T @ (Mp + Rd) @ _TY
        Ge = _TX.T @ Rp @ _TY - _TY.T @ Rp @ _TX
        sl = np.r_[4 * e:4 * e + 8]
        M[np.ix_(sl, sl)] += Me
        K[np.ix_(sl, sl)] += Ke
        G[np.ix_(sl, sl)] += Ge

    def node_index(pos: float) -> int:
        i = int(np.argmin(np.abs(nodes - pos)))
        if abs(nodes[i] - pos) > 1e-9:
            raise AnalysisError(f"no mesh node at attachment position {pos} m")
        return i

    for b in model.bearings:
        i = node_index(b.position)
        for axis in (0, 1):
            K[4 * i + axis, 4 * i + axis] += b.stiffness
            C[4 * i + axis, 4 * i + axis] += b.damping
    for p in model.point_inertias:
        i = node_index(p.position)
        M[4 * i + 0, 4 * i + 0] += p.mass
        M[4 * i + 1, 4 * i + 1] += p.mass
        M[4 * i + 2, 4 * i + 2] += p.diametral_inertia
        M[4 * i + 3, 4 * i + 3] += p.diametral_inertia
        G[4 * i + 2, 4 * i + 3] += p.polar_inertia
        G[4 * i + 3, 4 * i + 2] -= p.polar_inertia
    return FEModel(nodes=nodes, mass=M, stiffness=K, gyro=G, damping=C)


@dataclass(frozen=True)
class Mode:
    frequency: float  # Hz
    whirl: str  # "forward" / "backward" / "planar"
    label: str  # "cylindrical" / "conical" / "bending-k"
    shape: np.ndarray  # complex nodal displacements, ux then uy rows


def _whirl(ux: np.ndarray, uy: np.ndarray) -> str:
    """Orbit sense from the complex mode shape.

    With the time convention q(t) = Re(v exp(i w t)), w > 0, a node
    orbits in the spin sense (forward) when Im(ux conj(uy)) > 0.
    """
    w = float(np.sum(np.imag(ux * np.conj(uy))))
    scale = float(np.sum(np.abs(ux) ** 2 + np.abs(uy) ** 2))
    if scale == 0.0 or abs(w) < 1e-9 * scale:
        return "planar"
    return "forward" if w > 0 else "backward"


def _classify(ux: np.ndarray, uy: np.ndarray) -> str:
    """Label a mode by its translational shape along the shaft."""
    u = ux if np.abs(ux).max() >= np.abs(uy).max() else uy
    peak = np.argmax(np.abs(u))
    if np.abs(u[peak]) == 0.0:
        return "cylindrical"
    u = u * np.exp(-1j * np.angle(u[peak]))
    prof = np.real(u)
    floor = 0.05 * np.abs(prof).max()
    signs = [p for p in prof if abs(p) > floor]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)
    if changes == 0:
        return "cylindrical"
    if changes == 1:
        return "conical"
    return f"bending-{changes - 1}"


def modal_analysis(fe: FEModel, speed_rpm: float, n_modes: int = 8,
                   frequency_floor: float = 1.0) -> list[Mode]:
    """Damped natural frequencies and whirl at one spin speed.

    ``frequency_floor`` (Hz) drops numerically-zero rigid modes of an
    unsupported rotor.
    """
    n = fe.n_dof
    omega = rpm_to_rad_s(speed_rpm)
    Minv = np.linalg.inv(fe.mass)
    A = np.zeros((2 * n, 2 * n))
    A[:n, n:] = np.eye(n)
    A[n:, :n] = -Minv @ fe.stiffness
    A[n:, n:] = -Minv @ (fe.damping + omega * fe.gyro)
    vals, vecs = scipy.linalg.eig(A)
    order = np.argsort(np.abs(vals.imag))
    out: list[Mode] = []
    for idx in order:
        w = vals.imag[idx]
        if w <= 0:  # keep one of each conjugate pair, the +w member
            continue
        f = w / (2.0 * math.pi)
        if f < frequency_floor:
            continue
        v = vecs[:n, idx]
        ux = v[0::4]
        uy = v[1::4]
        out.append(Mode(frequency=f, whirl=_whirl(ux, uy),
                        label=_classify(ux, uy), shape=np.vstack([ux, uy])))
        if len(out) >= n_modes:
            break
    return out


@dataclass(frozen=True)
class CriticalSpeed:
    speed_rpm: float
    frequency: float  # Hz at the crossing
    whirl: str
    label: str


@dataclass
class CampbellResult:
    speeds_rpm: np.ndarray
    modes: list[list[Mode]]  # per speed, low to high frequency
    criticals: list[CriticalSpeed]

    def frequency_table(self) -> np.ndarray:
        """(n_speeds, n_modes) array of frequencies in Hz."""
        n_modes = min(len(m) for m in self.modes)
        return np.array([[m[i].frequency for i in range(n_modes)]
                         for m in self.modes])


def campbell(fe: FEModel, speed_max_rpm: float, n_points: int = 25,
             n_modes: int = 8, frequency_floor: float = 1.0) -> CampbellResult:
    """Sweep spin speed, track modes, and locate synchronous crossings.

    Mode branches are tracked by sorted frequency order, which is
    adequate while branches do not cross between grid points; the grid
    should be dense enough for the rotor at hand. Critical speeds refine
    sign changes of (branch frequency - spin frequency) by bisection.
    """
    if speed_max_rpm <= 0:
        raise AnalysisError(f"speed_max_rpm must be > 0 (got {speed_max_rpm})")
    speeds = np.linspace(0.0, speed_max_rpm, n_points)
    modes = [modal_analysis(fe, s, n_modes, frequency_floor) for s in speeds]
    n_tracked = min(len(m) for m in modes)
    if n_tracked == 0:
        raise AnalysisError("no modes above the frequency floor")

    criticals: list[CriticalSpeed] = []
    for i in range(n_tracked):

        def gap(speed: float) -> float:
            if speed <= 0.0:
                speed = 1e-6
            ms = modal_analysis(fe, speed, n_modes, frequency_floor)
            return ms[i].frequency - speed / 60.0

        for k in range(n_points - 1):
            g0 = modes[k][i].frequency - speeds[k] / 60.0
            g1 = modes[k + 1][i].frequency - speeds[k + 1] / 60.0
            if g0 == 0.0 or g0 * g1 >= 0.0:
                continue
            lo, hi = speeds[k], speeds[k + 1]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if gap(mid) * (g0 if g0 != 0 else 1.0) > 0:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < 1e-3:
                    break
            s_star = 0.5 * (lo + hi)
            m_star = modal_analysis(fe, s_star, n_modes, frequency_floor)[i]
            criticals.append(CriticalSpeed(
                speed_rpm=s_star, frequency=m_star.frequency,
                whirl=m_star.whirl, label=m_star.label,
            ))
    criticals.sort(key=lambda c: c.speed_rpm)
    return CampbellResult(speeds_rpm=speeds, modes=modes, criticals=criticals)


def separation_verdict(result: CampbellResult, operating_rpm: float,
                       margin: float = 0.2) -> tuple[bool, list[CriticalSpeed]]:
    """Flag bending-class criticals below operating speed times (1+margin).

    Rigid-body suspension criticals are traversed during run-up by
    design and are reported but do not fail the verdict.
    """
    window = operating_rpm * (1.0 + margin)
    offenders = [c for c in result.criticals
                 if c.label.startswith("bending") and c.speed_rpm <= window]
    return (len(offenders) == 0, offenders)


def save_campbell_csv(result: CampbellResult, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["speed_rpm", "mode_index", "freq_hz", "whirl", "class"])
        for speed, modes in zip(result.speeds_rpm, result.modes):
            for i, m in enumerate(modes):
                writer.writerow([
                    f"{speed:.10g}", i, f"{m.frequency:.10g}", m.whirl, m.label,
                ])
