"""Polarizing-Sagnac pump preparation in Jones x OAM space.

The chain modelled here is

    |V>|0>  --HWP1(theta1)-->  Sagnac + SPP  --HWP2(theta2)-->  crystal

where the crystal down-converts a single polarization and therefore acts as
a polarizer on the pump. Jones vectors use (H, V) ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateStateError, InvalidStageError, UnsupportedOrderError
from .modes import HGIndex, lg_to_hg

POLARIZATIONS = ("H", "V")

NORM_TOL = 1e-12


@dataclass(frozen=True)
class JonesOAMState:
    """Pure state sum_j a_j |pol_j>|l_j> with unit norm."""

    terms: tuple[tuple[str, int, complex], ...]

    def __post_init__(self):
        seen = set()
        for pol, l, _ in self.terms:
            if pol not in POLARIZATIONS:
                raise ValueError(f"polarization must be 'H' or 'V', got {pol!r}")
            if (pol, l) in seen:
                raise ValueError(f"duplicate term ({pol}, {l})")
            seen.add((pol, l))
        norm2 = sum(abs(a) ** 2 for *_, a in self.terms)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 is {norm2!r}, expected 1")

    @classmethod
    def from_dict(cls, amplitudes: dict[tuple[str, int], complex]) -> "JonesOAMState":
        terms = tuple((pol, l, complex(a)) for (pol, l), a in sorted(amplitudes.items()) if a != 0)
        return cls(terms)

    def as_dict(self) -> dict[tuple[str, int], complex]:
        return {(pol, l): a for pol, l, a in self.terms}

    def amplitude(self, pol: str, l: int) -> complex:
        return self.as_dict().get((pol, l), 0j)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for *_, a in self.terms))


@dataclass(frozen=True)
class PumpField:
    """Down-converted part of the pump as a unit-norm LG superposition.

    ``success_probability`` is the squared norm of the selected polarization
    component before renormalization.
    """

    lg_terms: tuple[tuple[int, complex], ...]
    waist: float = 1.0
    success_probability: float = 1.0
    metadata: dict = field(default_factory=dict, compare=False)

    def amplitude(self, l: int) -> complex:
        return dict(self.lg_terms).get(l, 0j)


def hwp_matrix(theta: float) -> np.ndarray:
    """Jones matrix of a half-wave plate with fast axis at ``theta``."""
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return np.array([[c, s], [s, -c]])


def apply_hwp(state: JonesOAMState, theta: float) -> JonesOAMState:
    mat = hwp_matrix(theta)
    amps = state.as_dict()
    out: dict[tuple[str, int], complex] = {}
    for l in sorted({l for _, l in amps}):
        vec = np.array([amps.get(("H", l), 0j), amps.get(("V", l), 0j)])
        h, v = mat @ vec
        out[("H", l)] = complex(h)
        out[("V", l)] = complex(v)
    return JonesOAMState.from_dict(out)


def apply_sagnac_spp(state: JonesOAMState, v_arm_phase: complex = -1.0) -> JonesOAMState:
    """Single pass through the polarizing Sagnac loop with a charge-1 SPP.

    H light traverses the plate forwards (l: 0 -> +1), V light backwards
    (l: 0 -> -1). ``v_arm_phase`` is the relative phase picked up by the V
    arm; the default -1 yields sin2t|H>|+1> + cos2t|V>|-1> from the HWP1
    output, and 1 leaves amplitudes untouched.
    """
    out = {}
    for pol, l, a in state.terms:
        if l != 0:
            raise InvalidStageError(f"SPP stage expects l = 0 input, got l = {l}")
        if pol == "H":
            out[("H", 1)] = a
        else:
            out[("V", -1)] = a * v_arm_phase
    return JonesOAMState.from_dict(out)


def select_downconverted(state: JonesOAMState, axis: str = "H", waist: float = 1.0) -> PumpField:
    """Project onto the crystal's down-converting polarization and renormalize."""
    if axis not in POLARIZATIONS:
        raise ValueError(f"axis must be 'H' or 'V', got {axis!r}")
    kept = [(l, a) for pol, l, a in state.terms if pol == axis]
    prob = sum(abs(a) ** 2 for _, a in kept)
    if prob <= NORM_TOL**2:
        raise DegenerateStateError(f"no pump amplitude in the {axis} polarization")
    scale = 1 / math.sqrt(prob)
    terms = tuple(sorted(((l, a * scale) for l, a in kept), reverse=True))
    return PumpField(terms, waist=waist, success_probability=prob)


def input_state() -> JonesOAMState:
    """Vertically polarized Gaussian, |V>|0>."""
    return JonesOAMState((("V", 0, 1 + 0j),))


def prepare_pump(theta1: float, theta2: float = math.pi / 8, axis: str = "H",
                 waist: float = 1.0) -> PumpField:
    """Full preparation chain; at theta2 = pi/8 and axis H this gives
    sin(2 theta1)|+1> + cos(2 theta1)|-1>."""
    state = apply_hwp(input_state(), theta1)
    state = apply_sagnac_spp(state)
    state = apply_hwp(state, theta2)
    pump = select_downconverted(state, axis, waist)
    return replace(pump, metadata={"theta1": theta1, "theta2": theta2, "axis": axis})


def pump_in_hg(pump: PumpField, *, post_selected_norm: bool = False) -> list[tuple[HGIndex, complex]]:
    """Rewrite an l = +/-1 pump over HG_{1,0} and HG_{0,1}.

    The result has the same norm as ``pump``. With ``post_selected_norm``
    the coefficients are scaled by sqrt(success_probability), i.e. they
    describe the pump amplitude that actually reaches the crystal.
    """
    coeffs = {HGIndex(1, 0): 0j, HGIndex(0, 1): 0j}
    for l, a in pump.lg_terms:
        if a == 0:
            continue
        if l not in (1, -1):
            raise UnsupportedOrderError(f"pump term l = {l} cannot be converted")
        for idx, c in lg_to_hg(l):
            coeffs[idx] += a * c
    scale = math.sqrt(pump.success_probability) if post_selected_norm else 1.0
    return [(idx, c * scale) for idx, c in coeffs.items()]


def hg_to_lg(coeffs) -> dict[int, complex]:
    """Inverse of the first-order LG -> HG change of basis."""
    c = dict(coeffs)
    a10 = c.get(HGIndex(1, 0), 0j)
    a01 = c.get(HGIndex(0, 1), 0j)
    r = 1 / math.sqrt(2)
    return {1: r * (a10 - 1j * a01), -1: r * (a10 + 1j * a01)}
