"""Alternating restoration: closed-form data solves and denoising steps.

Given the degraded video, the blur kernel, and the scale, the pipeline
initializes a full-resolution estimate, then for k = 1..K solves the data
sub-problem at weight alpha_k and denoises at level beta_k.  The weights
follow a log-spaced continuation schedule: mu_k from mu_first to mu_last,
alpha_k = mu_k * max(sigma, SIGMA_FLOOR)^2 and beta_k = sqrt(lambda / mu_k),
so the data term tightens while the prior relaxes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .degrade import conv3_circular, downsample_std
from .fdt import FdtContext, fdt_solve, upsample_zero
from .kernels import cubic_weight
from .priors import DenoiserSpec, denoise
from .video import Kernel3D, ensure_video, kernel_to_otf

INIT_MODES = ("trilinear", "zero_fill", "nearest")

# Keeps alpha_k strictly positive for noiseless inputs.
SIGMA_FLOOR = 1e-3

# Calibrated once on the synthetic restoration benchmark and frozen.
DEFAULT_DENOISER = DenoiserSpec(kind="tv", strength=0.1)


@dataclass(frozen=True)
class HqsConfig:
    """Iteration count, noise/prior weights, denoiser, and initializer."""

    iterations: int = 3
    sigma: float = 0.0
    lam: float = 0.02
    mu_first: float = 1e-2
    mu_last: float = 1.0
    denoiser: DenoiserSpec = field(default_factory=lambda: DEFAULT_DENOISER)
    init: str = "trilinear"

    def __post_init__(self):
        if int(self.iterations) < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not (float(self.sigma) >= 0.0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not (float(self.lam) > 0.0):
            raise ValueError(f"lambda must be > 0, got {self.lam}")
        if not (0.0 < float(self.mu_first) <= float(self.mu_last)):
            raise ValueError(
                "mu schedule needs 0 < mu_first <= mu_last, got "
                f"{self.mu_first}..{self.mu_last}"
            )
        if self.init not in INIT_MODES:
            raise ValueError(
                f"unknown init mode {self.init!r}, expected one of {INIT_MODES}"
            )
        object.__setattr__(self, "iterations", int(self.iterations))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "mu_first", float(self.mu_first))
        object.__setattr__(self, "mu_last", float(self.mu_last))


@dataclass(frozen=True)
class HqsSchedule:
    """Per-iteration data weights (non-decreasing) and noise levels
    (non-increasing)."""

    alphas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        betas = tuple(float(b) for b in self.betas)
        if len(alphas) != len(betas) or not alphas:
            raise ValueError("schedule needs equal-length non-empty lists")
        if any(a <= 0 for a in alphas) or any(b <= 0 for b in betas):
            raise ValueError("schedule values must be positive")
        if any(a2 < a1 for a1, a2 in zip(alphas, alphas[1:])):
            raise ValueError("alphas must be non-decreasing")
        if any(b2 > b1 for b1, b2 in zip(betas, betas[1:])):
            raise ValueError("betas must be non-increasing")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class RestoreTrace:
    """Per-iteration (data-solve output, denoised output) pairs."""

    steps: tuple[tuple[np.ndarray, np.ndarray], ...]
    schedule: HqsSchedule

    def __len__(self) -> int:
        return len(self.steps)


def build_schedule(cfg: HqsConfig) -> HqsSchedule:
    """Log-spaced mu from mu_first to mu_last (a single iteration uses
    mu_last), mapped to alpha_k and beta_k."""
    k = cfg.iterations
    if k == 1:
        mus = np.array([cfg.mu_last])
    else:
        # geomspace can wobble by one ulp; the analytic sequence is
        # non-decreasing, so clamp with a running maximum.
        mus = np.maximum.accumulate(np.geomspace(cfg.mu_first, cfg.mu_last, k))
    sigma_eff = max(cfg.sigma, SIGMA_FLOOR)
    alphas = mus * sigma_eff**2
    betas = np.sqrt(cfg.lam / mus)
    return HqsSchedule(tuple(alphas), tuple(betas))


def _linear_axis(arr: np.ndarray, factor: int, axis: int) -> np.ndarray:
    """Linear upsampling at positions i/factor with border replication."""
    if factor == 1:
        return arr
    n = arr.shape[axis]
    pos = np.arange(n * factor) / factor
    lo = np.floor(pos).astype(int)
    hi = np.minimum(lo + 1, n - 1)
    frac = pos - lo
    shape = [1] * arr.ndim
    shape[axis] = len(pos)
    frac = frac.reshape(shape)
    return np.take(arr, lo, axis=axis) * (1.0 - frac) + np.take(
        arr, hi, axis=axis
    ) * frac


def init_x0(y, s, mode: str = "trilinear") -> np.ndarray:
    """Expand the degraded video to full resolution as the starting estimate.

    trilinear interpolates linearly along each of t, h, w at positions
    i/factor (border samples replicated); nearest replicates each sample
    into its block; zero_fill scatters samples and leaves zeros elsewhere.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim not in (3, 4):
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={y.ndim}")
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    if mode == "trilinear":
        out = y
        for axis, factor in enumerate((st, sh, sw)):
            out = _linear_axis(out, factor, axis)
        return out
    if mode == "nearest":
        out = np.repeat(y, st, axis=0)
        out = np.repeat(out, sh, axis=1)
        return np.repeat(out, sw, axis=2)
    if mode == "zero_fill":
        return upsample_zero(y, (st, sh, sw))
    raise ValueError(f"unknown init mode {mode!r}, expected one of {INIT_MODES}")


def restore(y, kernel: Kernel3D, s, cfg: HqsConfig) -> tuple[np.ndarray, RestoreTrace]:
    """Run the full alternation and return the estimate with its trace.

    Deterministic: no randomness enters after the inputs are fixed.  A
    non-finite intermediate aborts with the iteration index in the message.
    """
    y = ensure_video(y)
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    hstr_shape = (y.shape[0] * st, y.shape[1] * sh, y.shape[2] * sw)
    otf = kernel_to_otf(kernel, hstr_shape)
    schedule = build_schedule(cfg)
    x = init_x0(y, (st, sh, sw), cfg.init)
    steps = []
    for k, (alpha, beta) in enumerate(zip(schedule.alphas, schedule.betas), 1):
        try:
            ctx = FdtContext(otf, (st, sh, sw), alpha)
            z = fdt_solve(x, y, ctx)
            x = denoise(z, beta, cfg.denoiser)
        except ValueError as exc:
            raise RuntimeError(f"restoration failed at iteration {k}: {exc}")
        steps.append((z, x))
    return x, RestoreTrace(tuple(steps), schedule)


def data_residual(x, y, kernel: Kernel3D, s) -> float:
    """Norm of the data-fidelity residual ||y - (x (*) k) downsampled||."""
    sim = downsample_std(conv3_circular(np.asarray(x, dtype=np.float64), kernel), s)
    return float(np.linalg.norm(np.asarray(y, dtype=np.float64) - sim))


def _cubic_axis(arr: np.ndarray, factor: int, axis: int) -> np.ndarray:
    """Cubic upsampling at centered positions (i+0.5)/factor - 0.5 with
    border replication; weights sum to 1 by partition of unity."""
    if factor == 1:
        return arr
    n = arr.shape[axis]
    pos = (np.arange(n * factor) + 0.5) / factor - 0.5
    base = np.floor(pos).astype(int)
    out = np.zeros(
        arr.shape[:axis] + (len(pos),) + arr.shape[axis + 1 :], dtype=np.float64
    )
    shape = [1] * arr.ndim
    shape[axis] = len(pos)
    for offset in (-1, 0, 1, 2):
        idx = np.clip(base + offset, 0, n - 1)
        w = cubic_weight(pos - (base + offset)).reshape(shape)
        out += np.take(arr, idx, axis=axis) * w
    return out


def _linear_centered_axis(arr: np.ndarray, factor: int, axis: int) -> np.ndarray:
    """Linear upsampling at centered positions (i+0.5)/factor - 0.5 with
    border replication."""
    if factor == 1:
        return arr
    n = arr.shape[axis]
    pos = (np.arange(n * factor) + 0.5) / factor - 0.5
    lo = np.floor(pos).astype(int)
    frac = pos - lo
    lo_c = np.clip(lo, 0, n - 1)
    hi_c = np.clip(lo + 1, 0, n - 1)
    shape = [1] * arr.ndim
    shape[axis] = len(pos)
    frac = frac.reshape(shape)
    return np.take(arr, lo_c, axis=axis) * (1.0 - frac) + np.take(
        arr, hi_c, axis=axis
    ) * frac


def bicubic_linear_baseline(y, s) -> np.ndarray:
    """Classical upsampling reference: linear in time, bicubic in space.

    Uses the center-aligned grid (i+0.5)/factor - 0.5 on every axis with
    border replication; no degradation model is involved.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim not in (3, 4):
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={y.ndim}")
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    out = _linear_centered_axis(y, st, 0)
    out = _cubic_axis(out, sh, 1)
    return _cubic_axis(out, sw, 2)
