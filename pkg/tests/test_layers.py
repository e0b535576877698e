import cmath

import numpy as np
import pytest

from dotcav import layers
from dotcav.layers import (
    LayerStack,
    optimize_spacing,
    quarter_wave_dbr,
    quarter_wave_reflectance,
    stack_reflectance,
    upward_fraction,
)


def test_bare_interface_fresnel():
    stack = LayerStack(ambient_index=1.0, layers=(), substrate_index=3.46)
    r = stack_reflectance(stack, 929.0)
    assert r == pytest.approx((1.0 - 3.46) / (1.0 + 3.46), abs=1e-15)


def test_index_matched_stack_reflectionless():
    stack = LayerStack(ambient_index=2.0, layers=((2.0, 50.0), (2.0, 120.0)), substrate_index=2.0)
    assert abs(stack_reflectance(stack, 929.0)) < 1e-14


def test_quarter_wave_dbr_reflectance_0990():
    stack = quarter_wave_dbr()  # 15 pairs GaAs/AlAs on GaAs, air ambient
    r = stack_reflectance(stack, 929.0)
    assert abs(r) ** 2 == pytest.approx(0.990, abs=1e-3)


def test_transfer_matrix_matches_closed_form():
    for pairs in range(1, 21):
        stack = quarter_wave_dbr(pairs=pairs)
        big_r = abs(stack_reflectance(stack, 929.0)) ** 2
        closed = quarter_wave_reflectance(3.46, 2.95, pairs, 1.0, 3.46)
        assert abs(big_r - closed) < 1e-10


def test_reflectance_monotone_in_pairs():
    values = [
        abs(stack_reflectance(quarter_wave_dbr(pairs=n), 929.0)) ** 2 for n in range(1, 21)
    ]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_reflectance_amplitude_bounded():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n_layers = int(rng.integers(0, 8))
        stack = LayerStack(
            ambient_index=float(rng.uniform(1.0, 2.0)),
            layers=tuple(
                (float(rng.uniform(1.0, 4.0)), float(rng.uniform(10.0, 500.0)))
                for _ in range(n_layers)
            ),
            substrate_index=float(rng.uniform(1.0, 4.0)),
        )
        assert abs(stack_reflectance(stack, float(rng.uniform(400.0, 1600.0)))) <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# two-beam interference model


def test_no_mirror_is_half():
    for d in (0.0, 123.0, 464.5):
        assert upward_fraction(0j, d, 929.0) == 0.5


def test_high_reflectivity_constructive():
    # |r|^2 = 0.990 tuned constructively
    rho = np.sqrt(0.990)
    f = upward_fraction(rho + 0j, 0.0, 929.0)
    assert f == pytest.approx(0.9975, abs=2e-4)


def test_destructive_tuning():
    f = upward_fraction(0.995 + 0j, 929.0 / 4.0, 929.0)  # theta = pi
    assert f == pytest.approx(0.0025, abs=1e-4)


def test_energy_bookkeeping():
    rng = np.random.default_rng(12)
    for _ in range(100):
        r = rng.uniform(0, 1) * cmath.exp(1j * rng.uniform(0, 2 * np.pi))
        d = rng.uniform(0, 2000.0)
        up = upward_fraction(r, d, 929.0)
        down = layers.downward_fraction(r, d, 929.0)
        assert up + down == pytest.approx(1.0, abs=1e-15)


def test_half_wavelength_periodicity():
    r = 0.9 * cmath.exp(0.7j)
    lam = 929.0
    for d in np.linspace(0.0, 500.0, 37):
        assert upward_fraction(r, d, lam) == pytest.approx(
            upward_fraction(r, d + lam / 2.0, lam), rel=1e-12
        )


def test_amplitude_above_one_rejected():
    with pytest.raises(ValueError):
        upward_fraction(1.5 + 0j, 10.0, 929.0)


# ---------------------------------------------------------------------------
# spacing optimization


def test_optimize_real_positive_mirror_at_half_wave_multiples():
    # a dielectric mirror with arg(r) = 0: optima at m * lambda/2
    stack = LayerStack(ambient_index=1.0, layers=(), substrate_index=3.46)
    r = stack_reflectance(stack, 929.0)
    assert r.real < 0  # ambient->denser substrate flips the sign
    flipped = LayerStack(ambient_index=3.46, layers=(), substrate_index=1.0)
    r2 = stack_reflectance(flipped, 929.0)
    assert r2.real > 0 and abs(r2.imag) < 1e-15
    result = optimize_spacing(flipped, 929.0, (100.0, 1000.0))
    m = result.spacing_nm / (929.0 / 2.0)
    assert m == pytest.approx(round(m), abs=1e-9)


def test_optimize_prefers_smallest_spacing():
    flipped = LayerStack(ambient_index=3.46, layers=(), substrate_index=1.0)
    result = optimize_spacing(flipped, 929.0, (0.0, 2000.0))
    assert result.spacing_nm == pytest.approx(0.0, abs=1e-9)


def test_optimize_dbr_exceeds_90_percent():
    stack = quarter_wave_dbr()
    result = optimize_spacing(stack, 929.0, (0.0, 929.0))
    assert result.f_up > 0.9
    assert result.big_r == pytest.approx(0.990, abs=1e-3)
    # round-trip phase at the optimum is a multiple of 2 pi
    theta = 4 * np.pi * result.spacing_nm / 929.0 + cmath.phase(result.r)
    assert (theta / (2 * np.pi)) == pytest.approx(round(theta / (2 * np.pi)), abs=1e-9)


def test_optimize_no_mirror_flat():
    stack = LayerStack(ambient_index=1.0, layers=(), substrate_index=1.0)
    result = optimize_spacing(stack, 929.0, (50.0, 500.0))
    assert result.f_up == 0.5
    assert result.spacing_nm == 50.0  # ties break toward the smallest spacing


def test_optimize_invalid_range():
    with pytest.raises(ValueError):
        optimize_spacing(quarter_wave_dbr(), 929.0, (500.0, 100.0))


def test_stack_file_roundtrip(tmp_path):
    stack = quarter_wave_dbr(pairs=3)
    path = tmp_path / "dbr.stack"
    layers.write_stack(path, stack)
    back = layers.read_stack(path)
    assert back == stack
    assert stack_reflectance(back, 929.0) == stack_reflectance(stack, 929.0)


def test_stack_file_format(tmp_path):
    path = tmp_path / "custom.stack"
    path.write_text(
        "# comment line\n"
        "ambient 1.0\n"
        "substrate 3.46   # GaAs\n"
        "3.46 67.12\n"
        "2.95 78.73\n"
    )
    stack = layers.read_stack(path)
    assert stack.ambient_index == 1.0
    assert stack.substrate_index == 3.46
    assert stack.layers == ((3.46, 67.12), (2.95, 78.73))
    bad = tmp_path / "bad.stack"
    bad.write_text("3.46 67.12\n")
    with pytest.raises(ValueError):
        layers.read_stack(bad)


def test_sweep_export(tmp_path):
    d, f = layers.spacing_sweep(quarter_wave_dbr(), 929.0, (0.0, 929.0), n_points=21)
    path = tmp_path / "sweep.csv"
    layers.write_sweep(path, d, f)
    lines = path.read_text().splitlines()
    assert lines[0] == "spacing_nm,f_up"
    assert len(lines) == 22
