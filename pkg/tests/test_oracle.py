import math

import numpy as np
import pytest
from scipy import integrate

from spdcmodes.errors import NonConvergenceError
from spdcmodes.modes import WaistConfig, lg_mode
from spdcmodes.oracle import (
    DEFAULT_SPEC,
    QuadratureSpec,
    gaussian_weighted_integral,
    hg_gram_matrix,
    hg_overlap_direct,
    hg_overlap_numeric,
    lg_norm_numeric,
    lg_overlap_numeric,
    schmidt_window_scan,
    select_window,
    verify_momentum_kernel,
)
from spdcmodes.pump import prepare_pump
from spdcmodes.spectra import hg_amplitude, lg_amplitude

PI8 = math.pi / 8


def test_lg_oracle_reference_point():
    assert lg_overlap_numeric(1, 0, PI8) == pytest.approx(lg_amplitude(1, 0, PI8), rel=1e-6)


def test_lg_oracle_against_scipy_quad():
    # independent adaptive quadrature of the same radial overlap
    theta = 0.3
    pump = prepare_pump(theta)
    l_s, l_i = 2, -1
    l_p = l_s + l_i

    def integrand(r):
        return (pump.amplitude(l_p) * lg_mode((0, l_p), 1.0, r, 0.0)
                * np.conj(lg_mode((0, l_s), 1.0, r, 0.0)) * np.conj(lg_mode((0, l_i), 1.0, r, 0.0)) * r).real

    radial, _ = integrate.quad(integrand, 0, 30, limit=200)
    value = 2 * math.pi * radial
    assert lg_overlap_numeric(l_s, l_i, theta) == pytest.approx(value, rel=1e-8)


def test_lg_oracle_structural_zero():
    assert abs(lg_overlap_numeric(2, 1, 0.3)) <= 1e-12


def test_lg_oracle_mismatched_waists_differ_from_closed_form():
    waists = WaistConfig(1.0, 1.5, 1.5)
    closed = lg_amplitude(1, 0, 0.3)
    assert abs(lg_overlap_numeric(1, 0, 0.3, waists) - closed) / abs(closed) > 1e-3


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(radial_nodes=4)
    with pytest.raises(ValueError):
        QuadratureSpec(radial_cutoff=0)


def test_nonconvergence_raised_for_truncated_rule():
    spec = QuadratureSpec(radial_nodes=8, radial_cutoff=2.0, convergence_factor=1e-14)
    with pytest.raises(NonConvergenceError) as info:
        lg_overlap_numeric(4, -3, 0.3, spec=spec)
    assert info.value.tolerance == 1e-14


def test_gaussian_weighted_integral_moments():
    form = np.array([[2.0, 0.5], [0.5, 1.0]])
    cov = np.linalg.inv(2 * form)
    norm = math.pi / math.sqrt(np.linalg.det(form))

    def gauss(x):
        return np.exp(-np.einsum("i...,ij,j...->...", x, form, x))

    assert gaussian_weighted_integral(gauss, form, 10) == pytest.approx(norm)
    assert gaussian_weighted_integral(lambda x: x[0] * x[1] * gauss(x), form, 10) == pytest.approx(norm * cov[0, 1])


@pytest.mark.parametrize("idx", [(1, 0, 0, 0), (2, 1, 1, 1), (0, 1, 1, 0), (3, 0, 0, 2)])
@pytest.mark.parametrize("theta", [PI8, 0.3])
def test_hg_oracle_separable_matches_direct(idx, theta):
    sep = hg_overlap_numeric(*idx, theta)
    direct = hg_overlap_direct(*idx, theta, nodes=12)
    assert direct == pytest.approx(sep, abs=1e-10)


def test_hg_oracle_reference_point():
    assert hg_overlap_numeric(1, 0, 0, 0, PI8) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-10)
    assert hg_overlap_numeric(2, 1, 1, 1, 0.3) == pytest.approx(hg_amplitude(2, 1, 1, 1, 0.3), rel=1e-8)


def test_hg_gram_identity():
    modes, gram = hg_gram_matrix(5, w=1.4)
    assert len(modes) == 36
    np.testing.assert_allclose(gram, np.eye(36), atol=1e-8)


@pytest.mark.parametrize("l", range(-6, 7))
def test_lg_norm_numeric(l):
    assert lg_norm_numeric(l) == pytest.approx(1.0, abs=1e-8)


def test_momentum_kernel_records():
    records = {r["name"]: r for r in verify_momentum_kernel(DEFAULT_SPEC)}
    assert set(records) == {"qp_jacobian", "waist_identity", "dhg_product"}
    for rec in records.values():
        assert rec["passed"], rec
    # the identity needs the waist-free prefactor; unit-norm modes are off by sqrt2
    assert records["waist_identity"]["unit_norm_ratio"] == pytest.approx(math.sqrt(2))


def test_schmidt_scan_and_selection():
    rows = schmidt_window_scan("lg", PI8, [3, 4, 5])
    ks = [r["K"] for r in rows]
    assert ks == sorted(ks)
    assert rows[1]["nonzero"] == 16
    assert select_window(rows, 14.0)["window"] == 4
    with pytest.raises(ValueError):
        schmidt_window_scan("xx", PI8, [1])
