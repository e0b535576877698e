import numpy as np
import pytest

from dotcav import spectra
from dotcav.errors import FitFailedError
from dotcav.spectra import Spectrum, fit_lorentzian, synthesize_spectrum


def test_synthesize_noiseless_is_exact_lorentzian():
    spec = synthesize_spectrum(929.0, 4500.0, amplitude=800.0, offset=20.0, noise_rel=0.0)
    fwhm = 929.0 / 4500.0
    expected = spectra.lorentzian(spec.wavelengths, 929.0, fwhm, 800.0, 20.0)
    np.testing.assert_allclose(spec.counts, expected, rtol=1e-14)


def test_synthesize_fwhm_value():
    fwhm = 929.0 / 4500.0
    assert fwhm == pytest.approx(0.20644, abs=1e-5)


def test_synthesize_deterministic():
    a = synthesize_spectrum(929.0, 4500.0, noise_rel=0.02, seed=7)
    b = synthesize_spectrum(929.0, 4500.0, noise_rel=0.02, seed=7)
    np.testing.assert_array_equal(a.counts, b.counts)
    c = synthesize_spectrum(929.0, 4500.0, noise_rel=0.02, seed=8)
    assert not np.array_equal(a.counts, c.counts)


def test_fit_noiseless_roundtrip():
    spec = synthesize_spectrum(929.0, 4500.0, amplitude=1000.0, offset=50.0, noise_rel=0.0)
    fit = fit_lorentzian(spec)
    assert fit.lambda0_nm == pytest.approx(929.0, rel=1e-9)
    assert fit.q == pytest.approx(4500.0, rel=1e-6)
    assert fit.amplitude == pytest.approx(1000.0, rel=1e-6)
    assert fit.offset == pytest.approx(50.0, rel=1e-6)
    assert fit.residual_norm < 1e-9


def test_fit_noiseless_roundtrip_random_parameters():
    rng = np.random.default_rng(9)
    for _ in range(50):
        lam0 = rng.uniform(500.0, 1500.0)
        q = rng.uniform(100.0, 50000.0)
        amp = rng.uniform(10.0, 1e5)
        off = rng.uniform(0.0, 0.3 * amp)
        spec = synthesize_spectrum(lam0, q, amplitude=amp, offset=off, noise_rel=0.0,
                                   n_points=int(rng.integers(50, 400)),
                                   span_fwhm=rng.uniform(4.0, 20.0))
        fit = fit_lorentzian(spec)
        assert abs(fit.lambda0_nm - lam0) / lam0 < 1e-6
        assert abs(fit.fwhm_nm - lam0 / q) / (lam0 / q) < 1e-6
        assert abs(fit.amplitude - amp) / amp < 1e-6


def test_fit_q4500_with_noise_20_seeds():
    for seed in range(20):
        spec = synthesize_spectrum(929.0, 4500.0, noise_rel=0.02, n_points=200,
                                   span_fwhm=10.0, seed=seed)
        fit = fit_lorentzian(spec)
        assert abs(fit.q - 4500.0) / 4500.0 < 0.03


def test_fit_flat_spectrum_fails():
    wl = np.linspace(928.0, 930.0, 64)
    with pytest.raises(FitFailedError):
        fit_lorentzian(Spectrum(wavelengths=wl, counts=np.full(64, 100.0)))


def test_fit_translation_equivariance():
    spec = synthesize_spectrum(929.0, 4500.0, noise_rel=0.01, seed=4)
    fit = fit_lorentzian(spec)
    shifted = Spectrum(wavelengths=spec.wavelengths + 250.0, counts=spec.counts)
    fit2 = fit_lorentzian(shifted)
    assert fit2.lambda0_nm - fit.lambda0_nm == pytest.approx(250.0, abs=1e-6)
    assert fit2.fwhm_nm == pytest.approx(fit.fwhm_nm, rel=1e-7)


def test_fit_count_rescaling_invariance():
    spec = synthesize_spectrum(929.0, 4500.0, noise_rel=0.01, seed=4)
    fit = fit_lorentzian(spec)
    scaled = Spectrum(wavelengths=spec.wavelengths, counts=spec.counts * 37.0)
    fit2 = fit_lorentzian(scaled)
    assert fit2.amplitude == pytest.approx(37.0 * fit.amplitude, rel=1e-7)
    assert fit2.offset == pytest.approx(37.0 * fit.offset, rel=1e-6)
    assert fit2.lambda0_nm == pytest.approx(fit.lambda0_nm, abs=1e-9)
    assert fit2.fwhm_nm == pytest.approx(fit.fwhm_nm, rel=1e-9)


def test_spectrum_validation():
    wl = np.linspace(1.0, 2.0, 10)
    with pytest.raises(ValueError):
        Spectrum(wavelengths=wl[::-1].copy(), counts=np.ones(10))
    with pytest.raises(ValueError):
        Spectrum(wavelengths=wl, counts=-np.ones(10))
    with pytest.raises(ValueError):
        Spectrum(wavelengths=wl[:5], counts=np.ones(5))  # too short


def test_synthesize_validation():
    with pytest.raises(ValueError):
        synthesize_spectrum(929.0, -10.0)
    with pytest.raises(ValueError):
        synthesize_spectrum(929.0, 4500.0, n_points=4)


def test_spectrum_csv_roundtrip(tmp_path):
    spec = synthesize_spectrum(929.0, 4500.0, noise_rel=0.02, seed=12)
    path = tmp_path / "spec.csv"
    spectra.write_spectrum(path, spec)
    back = spectra.read_spectrum(path)
    np.testing.assert_array_equal(back.wavelengths, spec.wavelengths)
    np.testing.assert_array_equal(back.counts, spec.counts)


def test_fit_report_key_value(tmp_path):
    fit = fit_lorentzian(synthesize_spectrum(929.0, 4500.0, noise_rel=0.0))
    text = spectra.format_fit_report(fit)
    pairs = dict(line.split(" = ") for line in text.strip().splitlines())
    assert float(pairs["lambda0_nm"]) == pytest.approx(929.0, rel=1e-9)
    assert float(pairs["q"]) == pytest.approx(4500.0, rel=1e-6)
    path = tmp_path / "fit.txt"
    spectra.write_fit_report(path, fit)
    assert path.read_text() == text
