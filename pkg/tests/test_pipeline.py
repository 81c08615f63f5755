import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import stvsr.pipeline as pipeline_module
from stvsr.degrade import DegradationSpec, degrade
from stvsr.fdt import FdtContext, fdt_solve, upsample_zero
from stvsr.kernels import (
    compose_kernels,
    delta_kernel,
    exposure_box_kernel,
    gaussian_spatial_kernel,
)
from stvsr.pipeline import (
    SIGMA_FLOOR,
    HqsConfig,
    HqsSchedule,
    bicubic_linear_baseline,
    build_schedule,
    data_residual,
    init_x0,
    restore,
)
from stvsr.priors import DenoiserSpec


def test_config_validation():
    with pytest.raises(ValueError):
        HqsConfig(iterations=0)
    with pytest.raises(ValueError):
        HqsConfig(sigma=-1.0)
    with pytest.raises(ValueError):
        HqsConfig(lam=0.0)
    with pytest.raises(ValueError):
        HqsConfig(mu_first=2.0, mu_last=1.0)
    with pytest.raises(ValueError):
        HqsConfig(init="bilinear")


def test_schedule_single_iteration_uses_mu_last():
    cfg = HqsConfig(iterations=1, sigma=0.1, lam=0.25, mu_first=1.0, mu_last=1.0)
    sch = build_schedule(cfg)
    assert sch.alphas[0] == pytest.approx(0.01, rel=1e-12)
    assert sch.betas[0] == pytest.approx(0.5, rel=1e-12)


def test_schedule_three_iterations_log_spaced():
    cfg = HqsConfig(iterations=3, sigma=0.1, lam=0.25, mu_first=0.01, mu_last=1.0)
    sch = build_schedule(cfg)
    mus = np.array(sch.alphas) / 0.01
    assert np.allclose(mus, [0.01, 0.1, 1.0], rtol=1e-12)
    assert np.allclose(sch.betas, np.sqrt(0.25 / mus), rtol=1e-12)


def test_schedule_sigma_floor_keeps_alphas_positive():
    sch = build_schedule(HqsConfig(iterations=2, sigma=0.0))
    assert sch.alphas[0] == pytest.approx(1e-2 * SIGMA_FLOOR**2, rel=1e-12)
    assert all(a > 0 for a in sch.alphas)


@settings(deadline=None, max_examples=25)
@given(
    st.integers(1, 6),
    st.floats(0.0, 0.2),
    st.floats(1e-4, 1.0),
    st.floats(1e-3, 0.5),
    st.floats(1.0, 100.0),
)
def test_schedule_monotone(iterations, sigma, lam, mu_first, mu_ratio):
    cfg = HqsConfig(
        iterations=iterations,
        sigma=sigma,
        lam=lam,
        mu_first=mu_first,
        mu_last=mu_first * mu_ratio,
    )
    sch = build_schedule(cfg)
    assert len(sch) == iterations
    assert all(a2 >= a1 for a1, a2 in zip(sch.alphas, sch.alphas[1:]))
    assert all(b2 <= b1 for b1, b2 in zip(sch.betas, sch.betas[1:]))


def test_schedule_type_rejects_non_monotone():
    with pytest.raises(ValueError):
        HqsSchedule(alphas=(2.0, 1.0), betas=(1.0, 1.0))
    with pytest.raises(ValueError):
        HqsSchedule(alphas=(1.0, 2.0), betas=(1.0, 2.0))


@pytest.mark.parametrize("mode", ["trilinear", "nearest", "zero_fill"])
def test_init_unit_scale_is_identity(mode, rng):
    y = rng.random((2, 4, 4, 1))
    assert np.array_equal(init_x0(y, (1, 1, 1), mode), y)


def test_init_nearest_replicates_single_voxel():
    y = np.full((1, 1, 1, 1), 0.7)
    out = init_x0(y, (2, 2, 2), "nearest")
    assert out.shape == (2, 2, 2, 1)
    assert np.all(out == 0.7)


def test_init_trilinear_border_replication_example():
    y = np.array([0.0, 1.0]).reshape(1, 1, 2, 1)
    out = init_x0(y, (1, 1, 2), "trilinear")
    assert np.allclose(out.ravel(), [0.0, 0.5, 1.0, 1.0], rtol=0, atol=1e-15)


def test_init_zero_fill_matches_upsample_zero(rng):
    y = rng.random((2, 3, 3, 1))
    assert np.array_equal(init_x0(y, (2, 2, 2), "zero_fill"), upsample_zero(y, (2, 2, 2)))


def test_init_rejects_unknown_mode(rng):
    with pytest.raises(ValueError):
        init_x0(rng.random((1, 2, 2, 1)), (1, 1, 1), "bicubic")


def test_restore_delta_identity_chain_returns_input(rng):
    y = rng.random((2, 6, 6, 1))
    cfg = HqsConfig(
        iterations=3,
        sigma=0.0,
        mu_first=1e6,
        mu_last=1e6,
        denoiser=DenoiserSpec("identity"),
    )
    x, trace = restore(y, delta_kernel(), (1, 1, 1), cfg)
    assert np.max(np.abs(x - y)) < 1e-4
    assert len(trace) == 3


def test_restore_single_iteration_is_one_data_solve(rng):
    taps = rng.random((1, 3, 3))
    from stvsr.video import Kernel3D, kernel_to_otf

    k = Kernel3D(taps / taps.sum(), (0, 1, 1))
    y = rng.random((2, 4, 4, 1))
    cfg = HqsConfig(iterations=1, sigma=0.01, denoiser=DenoiserSpec("identity"))
    x, trace = restore(y, k, (1, 2, 2), cfg)
    alpha = build_schedule(cfg).alphas[0]
    ctx = FdtContext(kernel_to_otf(k, (2, 8, 8)), (1, 2, 2), alpha)
    want = fdt_solve(init_x0(y, (1, 2, 2), "trilinear"), y, ctx)
    assert np.array_equal(x, want)


def test_restore_trace_final_entry_is_returned_video(rng):
    y = rng.random((2, 4, 4, 1))
    x, trace = restore(y, delta_kernel(), (2, 2, 2), HqsConfig(sigma=0.01))
    assert trace.steps[-1][1] is x
    assert len(trace.steps) == len(trace.schedule)


def test_restore_is_deterministic(rng):
    y = rng.random((2, 6, 6, 3))
    k = gaussian_spatial_kernel(0.8, (3, 3))
    cfg = HqsConfig(sigma=0.005)
    x1, _ = restore(y, k, (2, 2, 2), cfg)
    x2, _ = restore(y, k, (2, 2, 2), cfg)
    assert np.array_equal(x1, x2)


def test_restore_residual_non_increasing_with_identity_denoiser(rng):
    gt = rng.random((4, 8, 8, 1))
    k = compose_kernels(exposure_box_kernel(2), gaussian_spatial_kernel(0.8, (3, 3)))
    scale = (2, 2, 2)
    y = degrade(gt, DegradationSpec(k, scale))
    cfg = HqsConfig(sigma=0.0, denoiser=DenoiserSpec("identity"))
    _, trace = restore(y, k, scale, cfg)
    residuals = [data_residual(init_x0(y, scale, "trilinear"), y, k, scale)]
    residuals += [data_residual(x, y, k, scale) for _, x in trace.steps]
    assert all(b <= a + 1e-9 for a, b in zip(residuals, residuals[1:]))


def test_restore_reports_iteration_on_non_finite(monkeypatch, rng):
    def bad_denoise(z, beta, spec):
        out = z.copy()
        out[0, 0, 0] = np.nan
        return out

    monkeypatch.setattr(pipeline_module, "denoise", bad_denoise)
    y = rng.random((1, 4, 4, 1))
    with pytest.raises(RuntimeError, match="iteration 2"):
        restore(y, delta_kernel(), (1, 1, 1), HqsConfig(sigma=0.01))


def test_baseline_unit_scale_is_identity(rng):
    y = rng.random((2, 4, 4, 1))
    assert np.array_equal(bicubic_linear_baseline(y, (1, 1, 1)), y)


def test_baseline_preserves_constants():
    y = np.full((2, 6, 6, 3), 0.4)
    out = bicubic_linear_baseline(y, (2, 2, 2))
    assert out.shape == (4, 12, 12, 3)
    assert np.max(np.abs(out - 0.4)) < 1e-12
