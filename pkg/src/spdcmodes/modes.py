"""Laguerre-Gaussian and Hermite-Gaussian mode functions in momentum space.

All mode functions accept scalars or numpy arrays for the coordinates and
broadcast in the usual way. Complex amplitudes are plain Python/numpy
``complex`` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, OrderRangeError, UnsupportedOrderError

MAX_ORDER = 64

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, order=True)
class LGIndex:
    p: int
    l: int

    def __post_init__(self):
        if self.p < 0:
            raise DomainError(f"radial index must be >= 0, got {self.p}")


@dataclass(frozen=True, order=True)
class HGIndex:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError(f"HG orders must be >= 0, got ({self.m}, {self.n})")

    @property
    def order(self) -> int:
        return self.m + self.n


@dataclass(frozen=True)
class WaistConfig:
    """Pump and collection beam radii.

    The LG closed form assumes ``w_p == w_s == w_i``; the HG closed form
    assumes ``w_s == w_i == sqrt(2) * w_p``.
    """

    w_p: float = 1.0
    w_s: float = 1.0
    w_i: float = 1.0

    def __post_init__(self):
        for name in ("w_p", "w_s", "w_i"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value}")

    @classmethod
    def lg(cls, w_p: float = 1.0) -> "WaistConfig":
        return cls(w_p, w_p, w_p)

    @classmethod
    def hg(cls, w_p: float = 1.0) -> "WaistConfig":
        return cls(w_p, SQRT2 * w_p, SQRT2 * w_p)

    @property
    def is_lg_convention(self) -> bool:
        return math.isclose(self.w_s, self.w_p) and math.isclose(self.w_i, self.w_p)

    @property
    def is_hg_convention(self) -> bool:
        target = SQRT2 * self.w_p
        return math.isclose(self.w_s, target) and math.isclose(self.w_i, target)


def _as_lg(idx) -> LGIndex:
    return idx if isinstance(idx, LGIndex) else LGIndex(*idx)


def _as_hg(idx) -> HGIndex:
    return idx if isinstance(idx, HGIndex) else HGIndex(*idx)


def _check_order(order: int, what: str = "order") -> None:
    if order < 0:
        raise DomainError(f"{what} must be >= 0, got {order}")
    if order > MAX_ORDER:
        raise OrderRangeError(f"{what} {order} exceeds cap {MAX_ORDER}")


def _check_waist(w: float) -> None:
    if not w > 0:
        raise DomainError(f"waist must be positive, got {w}")


def _scalar_or_array(value):
    return value[()] if isinstance(value, np.ndarray) and value.ndim == 0 else value


def hermite(order: int, x):
    """Physicists' Hermite polynomial H_order(x) by three-term recurrence."""
    _check_order(order)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if order == 0:
        return _scalar_or_array(h_prev)
    h = 2.0 * x
    for k in range(1, order):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return _scalar_or_array(h)


def assoc_laguerre(p: int, a: int, x):
    """Associated Laguerre polynomial L_p^a(x) by upward recurrence in p."""
    _check_order(p, "p")
    if a < 0:
        raise DomainError(f"upper index must be >= 0, got {a}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if p == 0:
        return _scalar_or_array(l_prev)
    l = 1.0 + a - x
    for k in range(1, p):
        l_prev, l = l, ((2 * k + 1 + a - x) * l - (k + a) * l_prev) / (k + 1)
    return _scalar_or_array(l)


def lg_mode(idx, w: float, rho, phi):
    """LG_p^l(rho, phi), unit-normalized under the measure rho drho dphi."""
    idx = _as_lg(idx)
    _check_waist(w)
    _check_order(idx.p, "p")
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("rho must be >= 0")
    al = abs(idx.l)
    log_norm = 0.5 * (2 * math.log(w) + math.lgamma(idx.p + 1)
                      - math.log(2 * math.pi) - math.lgamma(idx.p + al + 1))
    u = w * rho / SQRT2
    radial = (math.exp(log_norm) * u**al * assoc_laguerre(idx.p, al, u**2)
              * np.exp(-(w * rho) ** 2 / 4))
    return _scalar_or_array(radial * np.exp(1j * idx.l * np.asarray(phi, dtype=float)))


def hermite_function(order: int, w: float, k, *, unit_norm: bool = True, phase: bool = True):
    """One Cartesian factor of an HG mode in momentum space.

    ``hg_mode(m, n) == hermite_function(m, kx) * hermite_function(n, ky)``.
    With ``unit_norm`` the factor carries sqrt(w) so that the 2D mode is
    unit-normalized; without it the waist-free printed prefactor is used.
    ``phase`` attaches (-i)**order.
    """
    _check_waist(w)
    _check_order(order)
    k = np.asarray(k, dtype=float)
    log_norm = -0.5 * (order * math.log(2) + math.lgamma(order + 1) + 0.5 * math.log(2 * math.pi))
    if unit_norm:
        log_norm += 0.5 * math.log(w)
    value = math.exp(log_norm) * hermite(order, w * k / SQRT2) * np.exp(-(w * k) ** 2 / 4)
    if phase:
        value = (-1j) ** order * value
    return _scalar_or_array(value)


def hg_mode(idx, w: float, kx, ky, *, unit_norm: bool = True, phase: bool = True):
    """HG_{m,n}(kx, ky) with global phase (-i)**(m+n).

    ``unit_norm=False`` drops the overall factor w and reproduces the
    waist-free prefactor 1/sqrt(2**(m+n+1) pi m! n!).
    """
    idx = _as_hg(idx)
    fx = hermite_function(idx.m, w, kx, unit_norm=unit_norm, phase=phase)
    fy = hermite_function(idx.n, w, ky, unit_norm=unit_norm, phase=phase)
    return _scalar_or_array(np.asarray(fx) * np.asarray(fy))


def _derivative_sum(m: int, n: int, k: int) -> int:
    """Coefficient of t**k in (1 - t)**m (1 + t)**n, exact."""
    return sum((-1) ** j * math.comb(m, j) * math.comb(n, k - j)
               for j in range(max(0, k - n), min(k, m) + 1))


def b_coeff(m: int, n: int, k: int) -> float:
    """Rotation coefficient b(m, n, k); zero outside 0 <= k <= m + n.

    b(m, n, k) = sqrt((m+n-k)! k! / (2**(m+n) m! n!)) / k!
                 * d^k/dt^k [(1 - t)**m (1 + t)**n] at t = 0
    """
    _check_order(m, "m")
    _check_order(n, "n")
    if k < 0 or k > m + n:
        return 0.0
    coeff = _derivative_sum(m, n, k)
    if coeff == 0:
        return 0.0
    ratio = Fraction(math.factorial(m + n - k) * math.factorial(k),
                     2 ** (m + n) * math.factorial(m) * math.factorial(n))
    return math.copysign(math.sqrt(ratio * coeff * coeff), coeff)


def lg_to_hg(l: int) -> list[tuple[HGIndex, complex]]:
    """HG expansion of the first-order LG mode LG_0^{l}, l = +1 or -1.

    The weights reproduce ``lg_mode`` exactly when the HG modes are taken
    without the (-i)**(m+n) phase; with it, the sum equals -i * LG_0^l.
    """
    if l not in (1, -1):
        raise UnsupportedOrderError(f"only l = +1 or -1 is supported, got {l}")
    r = 1 / SQRT2
    return [(HGIndex(1, 0), complex(r, 0.0)), (HGIndex(0, 1), complex(0.0, l * r))]


def dhg_expand(idx) -> list[tuple[HGIndex, float]]:
    """Expand a diagonal HG mode over ordinary HG modes.

    Returns weights c_a such that, with kx' = (kx + ky)/sqrt(2) and
    ky' = (kx - ky)/sqrt(2),

        u_{m,n}(kx', ky') = sum_a c_a u_{m+n-a, a}(kx, ky),

    where c_a = (-1)**a * b(m, n, a).
    """
    idx = _as_hg(idx)
    total = idx.m + idx.n
    _check_order(total, "m + n")
    return [(HGIndex(total - a, a), (-1) ** a * b_coeff(idx.m, idx.n, a))
            for a in range(total + 1)]
