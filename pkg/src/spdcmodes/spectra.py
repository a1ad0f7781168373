"""Closed-form two-photon spectra for the tunable l = +/-1 vortex pump.

Two normalizations are offered for each basis:

``"overlap"`` (default)
    The value of the mode-overlap integral with unit-normalized modes, i.e.
    what :mod:`spdcmodes.oracle` computes by quadrature.

``"printed"``
    The closed forms with their printed prefactors. These differ from the
    overlap integrals by an index-independent factor (LG: sqrt(2); HG: a
    waist-dependent constant and the (-i)**(m+n) phase convention), so all
    probabilities and Schmidt numbers agree between the two.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import brentq

from .errors import OrderRangeError
from .modes import WaistConfig, b_coeff, hermite_function

LG_INDEX_CAP = 64
HG_INDEX_CAP = 32
NORMALIZATIONS = ("overlap", "printed")

LG_CONVENTION_WARNING = "LG closed form assumes w_p == w_s == w_i"
HG_CONVENTION_WARNING = "HG closed form assumes w_s == w_i == sqrt(2) * w_p"


# Trig weights below this are rounding residue of angles such as pi/8 or
# pi/4 (|error| ~ 1e-16) and are treated as exact zeros.
WEIGHT_FLOOR = 1e-15


def _snap(x: float) -> float:
    return 0.0 if abs(x) < WEIGHT_FLOOR else x


def pump_weights(theta1: float) -> tuple[float, float]:
    """(sin 2theta1, cos 2theta1) with rounding residue removed."""
    return _snap(math.sin(2 * theta1)), _snap(math.cos(2 * theta1))


def _check_normalization(normalization: str) -> None:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")


def _log_radial_factor(two_alpha: int) -> float:
    """Log of the radial overlap factor for alpha = two_alpha / 2.

    For integer alpha this is (2/3)**(alpha+1) * alpha!; the half-integer
    branch uses sqrt(pi) (1/3)**(alpha+1) prod_{n=1}^{alpha+1/2} (2n - 1).
    """
    alpha = two_alpha / 2
    if two_alpha % 2:
        k = (two_alpha + 1) // 2
        log_odd_product = math.lgamma(2 * k + 1) - k * math.log(2) - math.lgamma(k + 1)
        return 0.5 * math.log(math.pi) + (alpha + 1) * math.log(1 / 3) + log_odd_product
    return (alpha + 1) * math.log(2 / 3) + math.lgamma(alpha + 1)


def lg_amplitude(l_s: int, l_i: int, theta1: float, w_p: float = 1.0,
                 normalization: str = "overlap") -> complex:
    """Joint amplitude C_{l_s, l_i} for p = 0 projections and equal waists."""
    _check_normalization(normalization)
    if abs(l_s) > LG_INDEX_CAP or abs(l_i) > LG_INDEX_CAP:
        raise OrderRangeError(f"|l| must be <= {LG_INDEX_CAP}")
    total = l_s + l_i
    if total not in (1, -1):
        return 0j
    sin2, cos2 = pump_weights(theta1)
    weight = sin2 if total == 1 else cos2
    if weight == 0:
        return 0j
    a_s, a_i = abs(l_s), abs(l_i)
    log_mag = (0.5 * (2 * math.log(w_p) - math.log(math.pi) - math.lgamma(a_s + 1) - math.lgamma(a_i + 1))
               + _log_radial_factor(1 + a_s + a_i))
    if normalization == "overlap":
        log_mag -= 0.5 * math.log(2)
    return complex(weight * math.exp(log_mag), 0.0)


def _hg_profile_at_origin(m: int, n: int, w: float, printed: bool) -> complex:
    if m < 0 or n < 0:
        return 0j
    if printed:
        return complex(hermite_function(m, w, 0.0) * hermite_function(n, w, 0.0))
    return complex(hermite_function(m, w, 0.0, phase=False) * hermite_function(n, w, 0.0, phase=False))


def hg_amplitude(m_s: int, n_s: int, m_i: int, n_i: int, theta1: float, w_p: float = 1.0,
                 normalization: str = "overlap") -> complex:
    """Joint amplitude C_{m_s,n_s}^{m_i,n_i} for collection waists sqrt(2) w_p.

    Both normalizations share the structure

        pref * [(s + c) b(m_s,m_i,M-1) b(n_s,n_i,N)   u_{M-1,N}(0,0)
                + i (s - c) b(m_s,m_i,M) b(n_s,n_i,N-1) u_{M,N-1}(0,0)]

    with s, c = sin 2theta1, cos 2theta1. ``"printed"`` uses pref = sqrt(pi/8)
    and the phased unit-norm mode at the pump waist; ``"overlap"`` uses
    pref = pi / w_p**2 and the real (phase-free) mode profile.
    """
    _check_normalization(normalization)
    if max(m_s, n_s, m_i, n_i) > HG_INDEX_CAP:
        raise OrderRangeError(f"HG indices must be <= {HG_INDEX_CAP}")
    if min(m_s, n_s, m_i, n_i) < 0:
        raise OrderRangeError("HG indices must be >= 0")
    printed = normalization == "printed"
    s, c = pump_weights(theta1)
    big_m, big_n = m_s + m_i, n_s + n_i
    first = _snap(s + c) * b_coeff(m_s, m_i, big_m - 1) * b_coeff(n_s, n_i, big_n)
    if first:
        first *= _hg_profile_at_origin(big_m - 1, big_n, w_p, printed)
    second = _snap(s - c) * b_coeff(m_s, m_i, big_m) * b_coeff(n_s, n_i, big_n - 1)
    if second:
        second *= _hg_profile_at_origin(big_m, big_n - 1, w_p, printed)
    pref = math.sqrt(math.pi / 8) if printed else math.pi / w_p**2
    return complex(pref * (first + 1j * second))


def hg_selection_allowed(m_s: int, n_s: int, m_i: int, n_i: int, pump_mode=(1, 0)) -> bool:
    """Selection rule for the HG_{1,0} (default) or HG_{0,1} pump term.

    HG_{1,0}: m_s + m_i odd (hence >= 1) and n_s + n_i even.
    HG_{0,1}: the same with the roles of the m and n sums exchanged.
    """
    pump_mode = tuple(pump_mode)
    big_m, big_n = m_s + m_i, n_s + n_i
    if pump_mode == (1, 0):
        return big_m >= 1 and big_m % 2 == 1 and big_n % 2 == 0
    if pump_mode == (0, 1):
        return big_n >= 1 and big_n % 2 == 1 and big_m % 2 == 0
    raise ValueError(f"pump_mode must be (1, 0) or (0, 1), got {pump_mode}")


@dataclass
class LGSpectrum:
    """Dense grid ``amplitudes[l_s + l_max, l_i + l_max]``."""

    l_max: int
    amplitudes: np.ndarray
    theta1: float
    theta2: float = math.pi / 8
    waists: WaistConfig = field(default_factory=WaistConfig.lg)
    normalization: str = "overlap"

    basis = "lg"

    @property
    def l_values(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def __getitem__(self, key) -> complex:
        l_s, l_i = key
        return self.amplitudes[l_s + self.l_max, l_i + self.l_max]

    def entries(self):
        """Yield ((l_s, l_i), amplitude) in row-major order."""
        for l_s, l_i in product(self.l_values.tolist(), repeat=2):
            yield (l_s, l_i), self[l_s, l_i]


@dataclass
class HGSpectrum:
    """Dense grid ``amplitudes[m_s, n_s, m_i, n_i]``."""

    m_max: int
    n_max: int
    amplitudes: np.ndarray
    theta1: float
    theta2: float = math.pi / 8
    waists: WaistConfig = field(default_factory=WaistConfig.hg)
    normalization: str = "overlap"

    basis = "hg"

    def __getitem__(self, key) -> complex:
        return self.amplitudes[tuple(key)]

    def entries(self):
        """Yield ((m_s, n_s, m_i, n_i), amplitude) in row-major order."""
        m = range(self.m_max + 1)
        n = range(self.n_max + 1)
        for idx in product(m, n, m, n):
            yield idx, self.amplitudes[idx]


def lg_spectrum(theta1: float, l_max: int = 4, waists: WaistConfig | None = None,
                theta2: float = math.pi / 8, normalization: str = "overlap") -> LGSpectrum:
    if l_max < 1 or l_max > LG_INDEX_CAP:
        raise OrderRangeError(f"l_max must be in [1, {LG_INDEX_CAP}], got {l_max}")
    waists = waists or WaistConfig.lg()
    if not waists.is_lg_convention:
        warnings.warn(LG_CONVENTION_WARNING, stacklevel=2)
    ls = range(-l_max, l_max + 1)
    amps = np.array([[lg_amplitude(a, b, theta1, waists.w_p, normalization) for b in ls] for a in ls])
    return LGSpectrum(l_max, amps, theta1, theta2, waists, normalization)


def hg_spectrum(theta1: float, caps=(3, 3), waists: WaistConfig | None = None,
                theta2: float = math.pi / 8, normalization: str = "overlap") -> HGSpectrum:
    m_max, n_max = (caps, caps) if isinstance(caps, int) else caps
    if min(m_max, n_max) < 0 or max(m_max, n_max) > HG_INDEX_CAP:
        raise OrderRangeError(f"caps must be in [0, {HG_INDEX_CAP}], got {caps}")
    waists = waists or WaistConfig.hg()
    if not waists.is_hg_convention:
        warnings.warn(HG_CONVENTION_WARNING, stacklevel=2)
    amps = np.zeros((m_max + 1, n_max + 1, m_max + 1, n_max + 1), dtype=complex)
    for idx in product(range(m_max + 1), range(n_max + 1), range(m_max + 1), range(n_max + 1)):
        amps[idx] = hg_amplitude(*idx, theta1, waists.w_p, normalization)
    return HGSpectrum(m_max, n_max, amps, theta1, theta2, waists, normalization)


@dataclass
class Sweep:
    """|C|^2 for several (l_s, l_i) pairs over a grid of HWP1 angles.

    ``values[j, k]`` belongs to ``thetas[j]`` and ``pairs[k]``.
    """

    pairs: list[tuple[int, int]]
    thetas: np.ndarray
    values: np.ndarray
    w_p: float = 1.0

    def column(self, pair) -> np.ndarray:
        return self.values[:, self.pairs.index(tuple(pair))]

    def evaluate(self, pair, theta1: float) -> float:
        return abs(lg_amplitude(*pair, theta1, self.w_p)) ** 2


def sweep_theta1(pairs, thetas, w_p: float = 1.0) -> Sweep:
    pairs = [tuple(int(v) for v in pair) for pair in pairs]
    thetas = np.asarray(thetas, dtype=float)
    values = np.array([[abs(lg_amplitude(*pair, t, w_p)) ** 2 for pair in pairs] for t in thetas])
    return Sweep(pairs, thetas, values.reshape(len(thetas), len(pairs)), w_p)


def refine_crossing(sweep: Sweep, pair_a, pair_b, lo: float, hi: float) -> float:
    """Root of |C_a|^2 - |C_b|^2 in [lo, hi] from the closed form."""
    return brentq(lambda t: sweep.evaluate(pair_a, t) - sweep.evaluate(pair_b, t), lo, hi,
                  xtol=1e-14, rtol=1e-15)
