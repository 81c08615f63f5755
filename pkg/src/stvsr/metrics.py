"""Quality metrics: PSNR, single-scale SSIM, and the Charbonnier distance.

PSNR and SSIM are computed per frame and averaged over the sequence; by
default all channels contribute equally (the luminance option converts RGB
first).  Identical inputs give the +inf PSNR sentinel and SSIM 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .video import ensure_video

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def _check_shapes(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def _mse_to_db(mse: float, peak: float) -> float:
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def psnr(a, b, peak: float = 1.0, per_frame: bool = False):
    """10*log10(peak^2 / MSE); +inf when the inputs are identical."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_shapes(a, b)
    if not float(peak) > 0.0:
        raise ValueError(f"peak must be > 0, got {peak}")
    sq = (a - b) ** 2
    if per_frame:
        frame_mse = sq.reshape(sq.shape[0], -1).mean(axis=1)
        return [_mse_to_db(float(m), peak) for m in frame_mse]
    return _mse_to_db(float(sq.mean()), peak)


def _ssim_window() -> np.ndarray:
    d = np.arange(SSIM_WINDOW) - SSIM_WINDOW // 2
    g = np.exp(-(d**2) / (2.0 * SSIM_SIGMA**2))
    return g / g.sum()


def _filter_valid(img: np.ndarray, win: np.ndarray) -> np.ndarray:
    """Separable correlation with the window, valid positions only."""
    r = len(win)
    rows = img.shape[0] - r + 1
    cols = img.shape[1] - r + 1
    acc = np.zeros((rows, img.shape[1]))
    for k in range(r):
        acc += win[k] * img[k : k + rows, :]
    out = np.zeros((rows, cols))
    for k in range(r):
        out += win[k] * acc[:, k : k + cols]
    return out


def _ssim_frame(fa: np.ndarray, fb: np.ndarray, peak: float) -> float:
    win = _ssim_window()
    c1 = (0.01 * peak) ** 2
    c2 = (0.03 * peak) ** 2
    vals = []
    for c in range(fa.shape[2]):
        a = fa[:, :, c]
        b = fb[:, :, c]
        mu_a = _filter_valid(a, win)
        mu_b = _filter_valid(b, win)
        var_a = np.maximum(_filter_valid(a * a, win) - mu_a * mu_a, 0.0)
        var_b = np.maximum(_filter_valid(b * b, win) - mu_b * mu_b, 0.0)
        cov = _filter_valid(a * b, win) - mu_a * mu_b
        num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
        den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
        vals.append(float(np.mean(num / den)))
    return float(np.mean(vals))


def ssim(a, b, peak: float = 1.0, per_frame: bool = False):
    """Mean single-scale structural similarity over valid window positions.

    Uses the standard 11x11 Gaussian window (sigma 1.5) and stability
    constants C1 = (0.01*peak)^2, C2 = (0.03*peak)^2, per frame and channel.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_shapes(a, b)
    if a.ndim == 3:
        a = a[:, :, :, None]
        b = b[:, :, :, None]
    if a.ndim != 4:
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={a.ndim}")
    if a.shape[1] < SSIM_WINDOW or a.shape[2] < SSIM_WINDOW:
        raise ValueError(
            f"frame size {a.shape[1]}x{a.shape[2]} is smaller than the "
            f"{SSIM_WINDOW}x{SSIM_WINDOW} window"
        )
    if not float(peak) > 0.0:
        raise ValueError(f"peak must be > 0, got {peak}")
    frames = [_ssim_frame(a[t], b[t], float(peak)) for t in range(a.shape[0])]
    if per_frame:
        return frames
    return float(np.mean(frames))


def charbonnier(a, b, eps: float = 1e-3) -> float:
    """Robust global distance sqrt(||a - b||^2 + eps^2)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_shapes(a, b)
    eps = float(eps)
    if eps <= 0.0:
        raise ValueError(f"eps must be > 0, got {eps}")
    return float(math.sqrt(np.sum((a - b) ** 2) + eps * eps))


def rgb_to_luma(v) -> np.ndarray:
    """Collapse an RGB video to a single luminance channel (BT.601)."""
    v = ensure_video(v)
    if v.shape[3] == 1:
        return v
    return np.tensordot(v, np.asarray(LUMA_WEIGHTS), axes=([3], [0]))[
        :, :, :, None
    ]


@dataclass(frozen=True)
class MetricReport:
    """Per-frame and sequence-mean quality numbers for one comparison."""

    frame_psnr_db: tuple[float, ...]
    frame_ssim: tuple[float, ...]
    mean_psnr_db: float
    mean_ssim: float
    charbonnier: float | None = None


def evaluate_videos(
    a, b, peak: float = 1.0, luma: bool = False, charbonnier_eps: float | None = 1e-3
) -> MetricReport:
    """Full metric comparison of two equal-shape videos.

    With ``luma`` set, RGB inputs are converted to luminance before any
    metric (including Charbonnier) is computed.
    """
    a = ensure_video(a)
    b = ensure_video(b)
    _check_shapes(a, b)
    if luma:
        a = rgb_to_luma(a)
        b = rgb_to_luma(b)
    frame_psnr = psnr(a, b, peak, per_frame=True)
    frame_ssim = ssim(a, b, peak, per_frame=True)
    cb = None if charbonnier_eps is None else charbonnier(a, b, charbonnier_eps)
    return MetricReport(
        frame_psnr_db=tuple(frame_psnr),
        frame_ssim=tuple(frame_ssim),
        mean_psnr_db=float(np.mean(frame_psnr)),
        mean_ssim=float(np.mean(frame_ssim)),
        charbonnier=cb,
    )


def format_report(report: MetricReport) -> str:
    """Readable table plus machine-parseable key = value lines."""
    lines = ["frame  psnr_db      ssim"]
    for i, (p, s) in enumerate(zip(report.frame_psnr_db, report.frame_ssim)):
        lines.append(f"{i:5d}  {p:10.4f}  {s:8.6f}")
    lines.append("")
    lines.append(f"mean_psnr_db = {report.mean_psnr_db!r}")
    lines.append(f"mean_ssim = {report.mean_ssim!r}")
    if report.charbonnier is not None:
        lines.append(f"charbonnier = {report.charbonnier!r}")
    lines.append(
        "per_frame_psnr_db = " + " ".join(repr(v) for v in report.frame_psnr_db)
    )
    lines.append(
        "per_frame_ssim = " + " ".join(repr(v) for v in report.frame_ssim)
    )
    return "\n".join(lines) + "\n"
