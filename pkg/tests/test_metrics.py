import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stvsr.metrics import (
    LUMA_WEIGHTS,
    charbonnier,
    evaluate_videos,
    format_report,
    psnr,
    rgb_to_luma,
    ssim,
)


def test_psnr_identical_is_infinite(rng):
    a = rng.random((2, 8, 8, 1))
    assert psnr(a, a) == math.inf


def test_psnr_unit_offset_is_zero_db():
    a = np.zeros((1, 4, 4, 1))
    assert abs(psnr(a, a + 1.0)) < 1e-9


def test_psnr_tenth_offset_is_twenty_db():
    a = np.zeros((1, 4, 4, 1))
    assert abs(psnr(a, a + 0.1) - 20.0) < 1e-9


def test_psnr_is_symmetric(rng):
    a = rng.random((2, 6, 6, 3))
    b = rng.random((2, 6, 6, 3))
    assert psnr(a, b) == pytest.approx(psnr(b, a), rel=0, abs=0)


def test_psnr_peak_rescales():
    a = np.zeros((1, 4, 4, 1))
    assert psnr(a, a + 1.0, peak=10.0) == pytest.approx(20.0, abs=1e-9)


def test_psnr_per_frame(rng):
    a = rng.random((3, 4, 4, 1))
    b = a.copy()
    b[1] += 0.5
    per = psnr(a, b, per_frame=True)
    assert len(per) == 3
    assert per[0] == math.inf and per[2] == math.inf
    assert per[1] == pytest.approx(20.0 * math.log10(1.0 / 0.5), abs=1e-9)


def test_psnr_shape_mismatch():
    with pytest.raises(ValueError):
        psnr(np.zeros((1, 4, 4, 1)), np.zeros((1, 4, 5, 1)))


def test_ssim_identical_is_one(rng):
    a = rng.random((2, 16, 16, 3))
    assert ssim(a, a) == pytest.approx(1.0, abs=1e-9)


def test_ssim_constant_zero_vs_one():
    a = np.zeros((1, 12, 12, 1))
    b = np.ones((1, 12, 12, 1))
    want = 1e-4 / 1.0001
    assert ssim(a, b) == pytest.approx(want, abs=1e-12)


def test_ssim_negated_checkerboard_is_negative():
    # Zero local mean keeps the luminance term near 1 while the
    # structure term flips sign, so the product is close to -1.
    i, j = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
    checker = np.where((i + j) % 2 == 0, 1.0, -1.0)[None, :, :, None]
    value = ssim(checker, -checker)
    assert value < -0.9


def test_ssim_symmetric(rng):
    a = rng.random((1, 16, 16, 1))
    b = rng.random((1, 16, 16, 1))
    assert ssim(a, b) == pytest.approx(ssim(b, a), abs=1e-12)


def test_ssim_bounded(rng):
    a = rng.random((2, 14, 14, 3))
    b = rng.random((2, 14, 14, 3))
    v = ssim(a, b)
    assert -1.0 <= v <= 1.0


def test_ssim_per_frame(rng):
    a = rng.random((3, 16, 16, 1))
    per = ssim(a, a, per_frame=True)
    assert len(per) == 3
    assert all(abs(v - 1.0) < 1e-9 for v in per)


def test_ssim_rejects_small_frames():
    a = np.zeros((1, 8, 8, 1))
    with pytest.raises(ValueError):
        ssim(a, a)


def test_ssim_accepts_three_dimensional_input(rng):
    a = rng.random((1, 16, 16))
    b = rng.random((1, 16, 16))
    assert ssim(a, b) == pytest.approx(ssim(a[..., None], b[..., None]), abs=0)


def test_charbonnier_identical_equals_epsilon(rng):
    a = rng.random((2, 6, 6, 1))
    assert charbonnier(a, a) == 1e-3
    assert charbonnier(a, a, eps=0.25) == 0.25


def test_charbonnier_unit_difference():
    a = np.ones((1, 1, 1, 1))
    b = np.zeros((1, 1, 1, 1))
    assert charbonnier(a, b, eps=1e-8) == pytest.approx(1.0, rel=1e-9)


def test_charbonnier_lower_bounds(rng):
    a = rng.random((2, 5, 5, 1))
    b = rng.random((2, 5, 5, 1))
    v = charbonnier(a, b, eps=1e-3)
    diff = float(np.linalg.norm(a - b))
    assert v >= diff
    assert v >= 1e-3
    assert charbonnier(a, b, eps=1e-12) == pytest.approx(diff, rel=1e-9)


@settings(deadline=None, max_examples=30)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_charbonnier_matches_direct_formula(u, v):
    a = np.full((1, 2, 2, 1), u)
    b = np.full((1, 2, 2, 1), v)
    want = math.sqrt(4.0 * (u - v) ** 2 + 1e-6)
    assert charbonnier(a, b) == pytest.approx(want, rel=1e-12)


def test_rgb_to_luma_weights(rng):
    x = rng.random((2, 4, 4, 3))
    got = rgb_to_luma(x)
    want = sum(w * x[..., i] for i, w in enumerate(LUMA_WEIGHTS))
    assert got.shape == (2, 4, 4, 1)
    assert np.allclose(got[..., 0], want, rtol=0, atol=1e-12)


def test_rgb_to_luma_passes_grayscale_through(rng):
    x = rng.random((2, 4, 4, 1))
    assert np.array_equal(rgb_to_luma(x), x)


def test_evaluate_videos_report_fields(rng):
    a = rng.random((3, 16, 16, 3))
    b = np.clip(a + 0.01 * rng.standard_normal(a.shape), 0, 1)
    rep = evaluate_videos(a, b, charbonnier_eps=1e-3)
    assert len(rep.frame_psnr_db) == 3
    assert len(rep.frame_ssim) == 3
    assert rep.mean_psnr_db == pytest.approx(float(np.mean(rep.frame_psnr_db)))
    assert rep.mean_ssim == pytest.approx(float(np.mean(rep.frame_ssim)))
    assert rep.charbonnier is not None and rep.charbonnier > 0


def test_evaluate_videos_luma_option(rng):
    a = rng.random((1, 16, 16, 3))
    b = rng.random((1, 16, 16, 3))
    rep_rgb = evaluate_videos(a, b)
    rep_luma = evaluate_videos(a, b, luma=True)
    want = psnr(rgb_to_luma(a), rgb_to_luma(b))
    assert rep_luma.mean_psnr_db == pytest.approx(want, abs=1e-12)
    assert rep_luma.mean_psnr_db != rep_rgb.mean_psnr_db


def test_format_report_is_deterministic_text(rng):
    a = rng.random((2, 16, 16, 1))
    b = rng.random((2, 16, 16, 1))
    rep = evaluate_videos(a, b, charbonnier_eps=1e-3)
    text1 = format_report(rep)
    text2 = format_report(evaluate_videos(a, b, charbonnier_eps=1e-3))
    assert text1 == text2
    assert "mean_psnr_db = " in text1
    assert "mean_ssim = " in text1
    assert "charbonnier = " in text1
    assert text1.splitlines()[0].split() == ["frame", "psnr_db", "ssim"]
