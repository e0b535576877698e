import numpy as np
import pytest

from dotcav import cmt, spectra
from dotcav.cmt import CmtParams, drop_efficiency, transmission, transmission_at

OMEGA0 = 2.0276e6  # rad/ns, the 929 nm dipole mode


def test_decoupled_cavity_transmits_everything():
    p = CmtParams(omega0=OMEGA0, kappa_wg=0.0, kappa_loss=100.0)
    curve = transmission(p, cmt.default_grid(p))
    np.testing.assert_allclose(curve.t, 1.0, atol=1e-12)
    assert drop_efficiency(p) == 0.0


def test_loss_free_cavity_drops_everything_on_resonance():
    p = CmtParams(omega0=OMEGA0, kappa_wg=225.0, kappa_loss=0.0)
    assert transmission_at(p, OMEGA0) == 0.0
    assert drop_efficiency(p) == 1.0


def test_matched_rates_quarter_transmission():
    p = CmtParams(omega0=OMEGA0, kappa_wg=150.0, kappa_loss=150.0)
    assert transmission_at(p, OMEGA0) == pytest.approx(0.25, abs=1e-12)
    assert drop_efficiency(p) == pytest.approx(0.75, abs=1e-12)


def test_transmission_bounded():
    rng = np.random.default_rng(10)
    for _ in range(50):
        p = CmtParams(omega0=OMEGA0, kappa_wg=rng.uniform(0, 300), kappa_loss=rng.uniform(1e-3, 300))
        t = transmission(p, cmt.default_grid(p)).t
        assert np.all(t >= 0.0) and np.all(t <= 1.0)


def test_translation_invariance_in_detuning():
    p1 = CmtParams(omega0=OMEGA0, kappa_wg=120.0, kappa_loss=30.0)
    p2 = CmtParams(omega0=OMEGA0 + 5000.0, kappa_wg=120.0, kappa_loss=30.0)
    det = np.linspace(-1000.0, 1000.0, 501)
    t1 = transmission(p1, p1.omega0 + det).t
    t2 = transmission(p2, p2.omega0 + det).t
    np.testing.assert_allclose(t1, t2, rtol=1e-12)


def test_dip_fwhm():
    p = CmtParams(omega0=OMEGA0, kappa_wg=180.0, kappa_loss=45.0)
    grid = cmt.default_grid(p, half_widths=8.0, n_points=200001)
    curve = transmission(p, grid)
    dip = 1.0 - curve.t
    half = dip.max() / 2.0
    above = grid[dip >= half]
    fwhm = above[-1] - above[0]
    assert fwhm == pytest.approx(2.0 * p.kappa_total, rel=1e-3)


def test_far_detuned_transmission_recovers():
    p = CmtParams(omega0=OMEGA0, kappa_wg=200.0, kappa_loss=50.0)
    far = 100.0 * p.kappa_total
    assert transmission_at(p, OMEGA0 + far) > 0.999
    assert transmission_at(p, OMEGA0 - far) > 0.999


def test_loaded_q_cross_check_with_lorentzian_fit():
    # fitting 1-T with the spectral fitter must reproduce omega0/(2 kappa_total)
    p = CmtParams(omega0=OMEGA0, kappa_wg=200.0, kappa_loss=60.0)
    grid = cmt.default_grid(p, half_widths=15.0, n_points=4001)
    curve = transmission(p, grid)
    fit = spectra.fit_lorentzian(spectra.Spectrum(wavelengths=grid, counts=1.0 - curve.t))
    assert fit.q == pytest.approx(p.loaded_q, rel=0.01)


def test_params_validation():
    with pytest.raises(ValueError):
        CmtParams(omega0=OMEGA0, kappa_wg=0.0, kappa_loss=0.0)
    with pytest.raises(ValueError):
        CmtParams(omega0=OMEGA0, kappa_wg=-1.0, kappa_loss=10.0)
    with pytest.raises(ValueError):
        CmtParams(omega0=-1.0, kappa_wg=1.0, kappa_loss=1.0)
    with pytest.raises(ValueError):
        transmission(CmtParams(omega0=OMEGA0, kappa_wg=1.0, kappa_loss=1.0), [])


def test_curve_export(tmp_path):
    p = CmtParams(omega0=OMEGA0, kappa_wg=150.0, kappa_loss=150.0)
    curve = transmission(p, cmt.default_grid(p, n_points=11))
    path = tmp_path / "curve.csv"
    cmt.write_curve(path, curve)
    lines = path.read_text().splitlines()
    assert lines[0] == "omega_rad_per_ns,transmission"
    assert len(lines) == 12
    cmt.write_curve(path, curve, inverted=True)
    lines = path.read_text().splitlines()
    assert lines[0] == "omega_rad_per_ns,one_minus_transmission"
    w, v = lines[6].split(",")
    assert float(w) == pytest.approx(OMEGA0, rel=1e-12)   # grid midpoint is omega0
    assert float(v) == pytest.approx(0.75, abs=1e-12)     # 1 - T(omega0)
