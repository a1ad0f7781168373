"""Brute-force quadrature of the three-field overlap integrals.

These routines never touch the closed forms in :mod:`spdcmodes.spectra`;
they integrate the mode functions from :mod:`spdcmodes.modes` against the
pump produced by :mod:`spdcmodes.pump`.

LG: pump, signal and idler share one transverse coordinate and the
azimuthal integral is done analytically (2 pi times a Kronecker delta); the
radial integral uses Gauss-Legendre on [0, cutoff / w].

HG: the 4D momentum integral over (k_s, k_i) factorizes into an x and a y
part per pump HG term. Each part is a 2D Gaussian-weighted integral, done
with tensor Gauss-Hermite after whitening the full quadratic exponent, so
the rule is exact for polynomial degree < 2 * nodes per axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from .errors import NonConvergenceError
from .modes import (
    HGIndex,
    LGIndex,
    SQRT2,
    WaistConfig,
    dhg_expand,
    hermite_function,
    hg_mode,
    lg_mode,
)
from .pump import prepare_pump, pump_in_hg


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 200
    radial_cutoff: float = 12.0
    hermite_nodes_per_axis: int = 48
    convergence_factor: float = 1e-8

    def __post_init__(self):
        if self.radial_nodes < 8 or self.hermite_nodes_per_axis < 8:
            raise ValueError("node counts must be >= 8")
        if not self.radial_cutoff > 0:
            raise ValueError("radial_cutoff must be positive")


DEFAULT_SPEC = QuadratureSpec()


def _converged(coarse: complex, fine: complex, tol: float) -> complex:
    if abs(fine - coarse) >= tol:
        raise NonConvergenceError(coarse, fine, tol)
    return fine


@lru_cache(maxsize=None)
def _legendre(n: int):
    return leggauss(n)


@lru_cache(maxsize=None)
def _hermite(n: int):
    return hermgauss(n)


def _radial_overlap(l_p: int, l_s: int, l_i: int, waists: WaistConfig, upper: float, n: int) -> float:
    x, wts = _legendre(n)
    rho = 0.5 * upper * (x + 1)
    integrand = (lg_mode(LGIndex(0, l_p), waists.w_p, rho, 0.0)
                 * lg_mode(LGIndex(0, l_s), waists.w_s, rho, 0.0)
                 * lg_mode(LGIndex(0, l_i), waists.w_i, rho, 0.0) * rho)
    return 0.5 * upper * float(np.sum(wts * integrand.real))


def lg_overlap_numeric(l_s: int, l_i: int, theta1: float, waists: WaistConfig | None = None,
                       spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Quadrature of int dphi int rho drho E_p LG_{l_s}^* LG_{l_i}^*.

    E_p = sin(2 theta1) LG^{+1} + cos(2 theta1) LG^{-1}, the renormalized
    down-converted pump at theta2 = pi/8.
    """
    waists = waists or WaistConfig.lg()
    pump = prepare_pump(theta1, waist=waists.w_p)
    upper = spec.radial_cutoff / min(waists.w_p, waists.w_s, waists.w_i)
    n = spec.radial_nodes
    coarse = fine = 0j
    for l_p, a in pump.lg_terms:
        if l_p != l_s + l_i:
            continue
        coarse += 2 * math.pi * a * _radial_overlap(l_p, l_s, l_i, waists, upper, n)
        fine += 2 * math.pi * a * _radial_overlap(l_p, l_s, l_i, waists, upper, 2 * n)
    return _converged(complex(coarse), complex(fine), spec.convergence_factor)


def _whitening(quad_form: np.ndarray):
    """Return (T, det T) with x = T z mapping exp(-x.A.x) to exp(-z.z)."""
    chol = np.linalg.cholesky(quad_form)
    t = np.linalg.inv(chol.T)
    return t, abs(np.linalg.det(t))


def gaussian_weighted_integral(func, quad_form: np.ndarray, n: int) -> complex:
    """Integrate ``func(x)`` over R^d, d = len(quad_form), by Gauss-Hermite.

    ``func`` must contain the factor exp(-x.A.x) with A = ``quad_form``
    (it is divided out at the nodes); ``func`` receives an array of shape
    (d, n**d).
    """
    d = quad_form.shape[0]
    z, w = _hermite(n)
    grids = np.meshgrid(*([z] * d), indexing="ij")
    zs = np.stack([g.ravel() for g in grids])
    weights = np.ones(zs.shape[1])
    for g in np.meshgrid(*([w] * d), indexing="ij"):
        weights = weights * g.ravel()
    t, det = _whitening(quad_form)
    xs = t @ zs
    values = func(xs) * np.exp(np.sum(zs**2, axis=0))
    return complex(det * np.sum(weights * values))


def _axis_form(w_p: float, w_s: float, w_i: float) -> np.ndarray:
    # exponent of pump(k_s + k_i) * signal(k_s) * idler(k_i) along one axis
    return 0.25 * np.array([[w_p**2 + w_s**2, w_p**2], [w_p**2, w_p**2 + w_i**2]])


@lru_cache(maxsize=4096)
def _axis_overlap(q: int, m_s: int, m_i: int, w_p: float, w_s: float, w_i: float, n: int) -> complex:
    """int int f_q(a + b; w_p) f_{m_s}(a; w_s)^* f_{m_i}(b; w_i)^* da db."""

    def integrand(x):
        a, b = x
        return (hermite_function(q, w_p, a + b)
                * np.conj(hermite_function(m_s, w_s, a))
                * np.conj(hermite_function(m_i, w_i, b)))

    return gaussian_weighted_integral(integrand, _axis_form(w_p, w_s, w_i), n)


def _hg_pump_terms(theta1: float, w_p: float):
    # Pump amplitude reaching the crystal: (1/2)[(s+c) u10 + i (s-c) u01].
    return pump_in_hg(prepare_pump(theta1, waist=w_p), post_selected_norm=True)


def _hg_overlap(m_s, n_s, m_i, n_i, theta1, waists, n) -> complex:
    total = 0j
    for idx, weight in _hg_pump_terms(theta1, waists.w_p):
        if weight == 0:
            continue
        ix = _axis_overlap(idx.m, m_s, m_i, waists.w_p, waists.w_s, waists.w_i, n)
        iy = _axis_overlap(idx.n, n_s, n_i, waists.w_p, waists.w_s, waists.w_i, n)
        total += weight * ix * iy
    return total


def hg_overlap_numeric(m_s: int, n_s: int, m_i: int, n_i: int, theta1: float,
                       waists: WaistConfig | None = None,
                       spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Separable quadrature of the 4D HG overlap integral."""
    waists = waists or WaistConfig.hg()
    n = spec.hermite_nodes_per_axis
    coarse = _hg_overlap(m_s, n_s, m_i, n_i, theta1, waists, n)
    fine = _hg_overlap(m_s, n_s, m_i, n_i, theta1, waists, 2 * n)
    return _converged(coarse, fine, spec.convergence_factor)


def hg_overlap_direct(m_s: int, n_s: int, m_i: int, n_i: int, theta1: float,
                      waists: WaistConfig | None = None, nodes: int = 24) -> complex:
    """Non-separable 4D tensor quadrature; slow cross-check of the above."""
    waists = waists or WaistConfig.hg()
    form2 = _axis_form(waists.w_p, waists.w_s, waists.w_i)
    # variable order (k_sx, k_ix, k_sy, k_iy)
    form4 = np.zeros((4, 4))
    form4[:2, :2] = form2
    form4[2:, 2:] = form2
    pump_terms = _hg_pump_terms(theta1, waists.w_p)

    def integrand(x):
        ksx, kix, ksy, kiy = x
        pump = sum(weight * hg_mode(idx, waists.w_p, ksx + kix, ksy + kiy) for idx, weight in pump_terms)
        return (pump * np.conj(hg_mode((m_s, n_s), waists.w_s, ksx, ksy))
                * np.conj(hg_mode((m_i, n_i), waists.w_i, kix, kiy)))

    return gaussian_weighted_integral(integrand, form4, nodes)


def hg_gram_matrix(max_order: int, w: float = 1.0, nodes: int = 48) -> tuple[list[HGIndex], np.ndarray]:
    """Overlap matrix <u_a | u_b> over all HG modes with m, n <= max_order."""
    modes = [HGIndex(m, n) for m, n in product(range(max_order + 1), repeat=2)]
    form = 0.5 * w**2 * np.eye(2)

    def overlap(a, b):
        return gaussian_weighted_integral(
            lambda x: hg_mode(a, w, x[0], x[1]) * np.conj(hg_mode(b, w, x[0], x[1])), form, nodes)

    gram = np.array([[overlap(b, a) for b in modes] for a in modes])
    return modes, gram


def lg_norm_numeric(l: int, w: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int |LG_0^l|^2 rho drho dphi by Gauss-Legendre."""
    upper = spec.radial_cutoff / w
    x, wts = _legendre(spec.radial_nodes)
    rho = 0.5 * upper * (x + 1)
    dens = np.abs(lg_mode(LGIndex(0, l), w, rho, 0.0)) ** 2 * rho
    return float(2 * math.pi * 0.5 * upper * np.sum(wts * dens))


def _check(name, deviation, tolerance, **extra):
    return {"name": name, "passed": bool(deviation <= tolerance),
            "max_deviation": float(deviation), "tolerance": tolerance, **extra}


def _jacobian_check(spec: QuadratureSpec) -> dict:
    w_p, w_s = 1.0, SQRT2
    n = 16

    def kernel(ks, ki):
        # polynomial x SPDC-type Gaussian, not separable in (k_s, k_i)
        return ((1 + ks * ki + ks**2) * np.exp(-0.25 * (w_p**2 * (ks + ki) ** 2 + w_s**2 * (ks**2 + ki**2))))

    form_k = _axis_form(w_p, w_s, w_s)
    direct_axis = gaussian_weighted_integral(lambda x: kernel(x[0], x[1]), form_k, n)
    # k_s = (Q + P)/2, k_i = (Q - P)/2
    jac = np.array([[0.5, 0.5], [0.5, -0.5]])
    form_qp = jac.T @ form_k @ jac
    qp_axis = gaussian_weighted_integral(lambda x: kernel((x[0] + x[1]) / 2, (x[0] - x[1]) / 2), form_qp, n)
    per_axis = abs(np.linalg.det(jac))
    # 4D: (k_sx, k_ix, k_sy, k_iy) with a kernel that couples x and y
    form4 = np.zeros((4, 4))
    form4[:2, :2] = form_k
    form4[2:, 2:] = form_k
    form4[0, 2] = form4[2, 0] = 0.05

    def kernel4(x):
        ksx, kix, ksy, kiy = x
        quad = np.einsum("ij,i...,j...->...", form4, np.array(x), np.array(x))
        return (1 + ksx * kiy + ksy**2 * kix) * np.exp(-quad)

    direct4 = gaussian_weighted_integral(kernel4, form4, 10)
    jac4 = np.zeros((4, 4))
    jac4[:2, :2] = jac
    jac4[2:, 2:] = jac
    form4_qp = jac4.T @ form4 @ jac4

    def kernel4_qp(y):
        return kernel4(jac4 @ y)

    qp4 = gaussian_weighted_integral(kernel4_qp, form4_qp, 10) * per_axis**2
    deviation = max(abs(direct_axis - per_axis * qp_axis), abs(direct4 - qp4))
    return _check("qp_jacobian", deviation, 1e-10, jacobian_per_axis=per_axis,
                  jacobian_4d=per_axis**2)


def _waist_identity_check(rng) -> dict:
    w_p = 1.0
    k = rng.normal(scale=1.5, size=(2, 20))
    deviation = 0.0
    ratios = []
    for m, n in product(range(4), repeat=2):
        lhs = hg_mode((m, n), SQRT2 * w_p, k[0] / SQRT2, k[1] / SQRT2, unit_norm=False)
        rhs = hg_mode((m, n), w_p, k[0], k[1], unit_norm=False)
        deviation = max(deviation, float(np.max(np.abs(lhs - rhs))))
        lhs_u = hg_mode((m, n), SQRT2 * w_p, k[0] / SQRT2, k[1] / SQRT2)
        rhs_u = hg_mode((m, n), w_p, k[0], k[1])
        mask = np.abs(rhs_u) > 1e-8
        ratios.extend(np.abs(lhs_u[mask] / rhs_u[mask]).tolist())
    return _check("waist_identity", deviation, 1e-12,
                  unit_norm_ratio=float(np.mean(ratios)))


def _dhg_product_check(rng) -> dict:
    # u*_{ms,ns}(k_s) u*_{mi,ni}(k_i) = sum c_a c_b U*_{M-a,N-b}(Q) U*_{a,b}(P)
    w_p = 1.0
    w = SQRT2 * w_p
    q = rng.normal(size=(2, 20))
    p = rng.normal(size=(2, 20))
    ks = (q + p) / 2
    ki = (q - p) / 2
    deviation = 0.0
    for ms, ns, mi, ni in product(range(3), repeat=4):
        lhs = np.conj(hg_mode((ms, ns), w, *ks, unit_norm=False) * hg_mode((mi, ni), w, *ki, unit_norm=False))
        rhs = 0j
        for (ax, ca) in dhg_expand((ms, mi)):
            for (ay, cb) in dhg_expand((ns, ni)):
                # ax = (M - a, a), ay = (N - b, b)
                rhs = rhs + ca * cb * np.conj(
                    hg_mode((ax.m, ay.m), w_p, *q, unit_norm=False)
                    * hg_mode((ax.n, ay.n), w_p, *p, unit_norm=False))
        deviation = max(deviation, float(np.max(np.abs(lhs - rhs))))
    return _check("dhg_product", deviation, 1e-9)


def verify_momentum_kernel(spec: QuadratureSpec = DEFAULT_SPEC, seed: int = 7) -> list[dict]:
    """Numerical checks of the coordinate change and mode identities.

    Returns one record per identity with ``passed``, ``max_deviation`` and
    ``tolerance``.
    """
    rng = np.random.default_rng(seed)
    return [_jacobian_check(spec), _waist_identity_check(rng), _dhg_product_check(rng)]


def schmidt_window_scan(basis: str, theta1: float, windows) -> list[dict]:
    """Schmidt number of the closed-form spectrum for each window.

    LG windows are l_max values; HG windows are caps (int or (m_max, n_max)).
    """
    from .analysis import normalize, schmidt_number
    from .spectra import hg_spectrum, lg_spectrum

    rows = []
    for window in windows:
        if basis.lower() == "lg":
            spectrum = lg_spectrum(theta1, int(window))
        elif basis.lower() == "hg":
            spectrum = hg_spectrum(theta1, window)
        else:
            raise ValueError(f"basis must be 'lg' or 'hg', got {basis!r}")
        probs = normalize(spectrum)
        rows.append({"basis": basis.lower(), "theta1": theta1, "window": window,
                     "nonzero": int(np.count_nonzero(probs.probs)),
                     "K": schmidt_number(probs).value})
    return rows


def select_window(rows: list[dict], target: float) -> dict:
    """Row whose Schmidt number is closest to ``target``."""
    return min(rows, key=lambda row: abs(row["K"] - target))
