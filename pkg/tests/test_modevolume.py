import numpy as np
import pytest

from dotcav import modevolume
from dotcav.modevolume import FieldGrid, mode_volume, normalized_mode_volume


def test_uniform_field_gives_domain_volume():
    grid = modevolume.uniform_grid(shape=(5, 7, 3), spacing=(2.0, 3.0, 4.0), eps=2.5, e_sq=0.7)
    domain = 5 * 7 * 3 * 2.0 * 3.0 * 4.0
    assert mode_volume(grid) == pytest.approx(domain, rel=1e-14)


def test_single_nonzero_cell():
    e = np.zeros((4, 4, 4))
    e[1, 2, 3] = 5.0
    grid = FieldGrid(spacing=(1.5, 2.5, 3.5), eps=np.ones((4, 4, 4)), e_sq=e)
    assert mode_volume(grid) == pytest.approx(1.5 * 2.5 * 3.5, rel=1e-14)


def test_sine_box_convergence():
    a, b, c = 400.0, 300.0, 200.0
    exact = a * b * c / 8.0
    errs = []
    for n in (16, 32, 64):
        v = mode_volume(modevolume.sine_box_grid(n_per_axis=n, box_nm=(a, b, c)))
        errs.append(abs(v - exact) / exact)
    assert errs[0] > errs[1] > errs[2]          # monotone mesh convergence
    assert errs[2] < 0.005                      # within 0.5% at 64 per axis


def test_field_rescaling_invariance():
    grid = modevolume.sine_box_grid(n_per_axis=16)
    v = mode_volume(grid)
    for scale in (1e-6, 3.7, 1e8):
        scaled = FieldGrid(spacing=grid.spacing, eps=grid.eps, e_sq=grid.e_sq * scale)
        assert abs(mode_volume(scaled) - v) / v < 1e-12


def test_spacing_scaling_cubes():
    grid = modevolume.sine_box_grid(n_per_axis=16)
    v = mode_volume(grid)
    for s in (0.5, 2.0, 10.0):
        scaled = FieldGrid(
            spacing=tuple(s * d for d in grid.spacing), eps=grid.eps, e_sq=grid.e_sq
        )
        assert mode_volume(scaled) == pytest.approx(s ** 3 * v, rel=1e-12)


def test_partition_independent_summation():
    # summing partitions with fsum reproduces the full fsum to < 1e-12
    grid = modevolume.sine_box_grid(n_per_axis=32)
    v_full = mode_volume(grid)
    import math

    density = (grid.eps * grid.e_sq).ravel()
    peak = density.max()
    cell = grid.cell_volume
    parts = np.array_split(density, 7)
    v_parts = math.fsum(math.fsum(p.tolist()) for p in parts) * cell / peak
    assert abs(v_parts - v_full) / v_full < 1e-12


def test_normalized_mode_volume():
    lam, n = 929.0, 3.46
    unit = (lam / n) ** 3
    assert normalized_mode_volume(unit, lam, n) == pytest.approx(1.0, rel=1e-14)
    assert normalized_mode_volume(9.68e6, lam, n) == pytest.approx(0.50, abs=0.001)
    assert normalized_mode_volume(0.5 * unit, lam, n) == pytest.approx(0.5, rel=1e-14)


def test_normalized_mode_volume_invalid():
    with pytest.raises(ValueError):
        normalized_mode_volume(0.0, 929.0, 3.46)
    with pytest.raises(ValueError):
        normalized_mode_volume(1.0, -1.0, 3.46)


def test_all_zero_energy_rejected():
    with pytest.raises(ValueError):
        FieldGrid(spacing=(1.0, 1.0, 1.0), eps=np.ones((3, 3, 3)), e_sq=np.zeros((3, 3, 3)))


def test_grid_invariants():
    with pytest.raises(ValueError):
        FieldGrid(spacing=(1.0, -1.0, 1.0), eps=np.ones((2, 2, 2)), e_sq=np.ones((2, 2, 2)))
    with pytest.raises(ValueError):
        FieldGrid(spacing=(1.0, 1.0, 1.0), eps=0.5 * np.ones((2, 2, 2)), e_sq=np.ones((2, 2, 2)))
    with pytest.raises(ValueError):
        FieldGrid(
            spacing=(1.0, 1.0, 1.0), eps=np.ones((2, 2, 2)), e_sq=-np.ones((2, 2, 2))
        )


def test_grid_file_roundtrip(tmp_path):
    grid = modevolume.sine_box_grid(n_per_axis=9, box_nm=(123.0, 45.0, 67.0), eps=2.0)
    path = tmp_path / "mode.grid"
    modevolume.write_grid(path, grid)
    back = modevolume.read_grid(path)
    assert back.shape == grid.shape
    assert back.spacing == grid.spacing
    np.testing.assert_array_equal(back.eps, grid.eps)
    np.testing.assert_array_equal(back.e_sq, grid.e_sq)
    assert mode_volume(back) == mode_volume(grid)


def test_grid_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.grid"
    path.write_text("not a grid\n1 2 3\n")
    with pytest.raises(ValueError):
        modevolume.read_grid(path)
    path.write_text("dotcav-grid 1\n2 2 2\n1.0 1.0 1.0\n1.0 2.0\n")
    with pytest.raises(ValueError):
        modevolume.read_grid(path)
