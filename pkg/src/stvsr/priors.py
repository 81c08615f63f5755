"""Pluggable denoisers for the prior half-step, keyed by a noise level beta.

Each restoration iteration hands the denoiser its current estimate and the
scheduled noise level; the mapping from beta to concrete denoiser strength
is a single multiplier so classical and learned denoisers can sit behind
the same interface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degrade import conv3_circular
from .kernels import gaussian_spatial_kernel

DENOISER_KINDS = ("identity", "gaussian", "tv")

# Dual-ascent step; 1/8 is the inverse Lipschitz bound of the 2-D gradient.
DEFAULT_TV_STEP = 0.125
DEFAULT_TV_ITERATIONS = 30


@dataclass(frozen=True)
class DenoiserSpec:
    """Denoiser selection and its beta-to-strength mapping.

    ``strength`` multiplies beta into a Gaussian smoothing sigma (pixels)
    or beta^2 into a total-variation weight, depending on ``kind``.
    """

    kind: str = "tv"
    strength: float = 1.0
    tv_iterations: int = DEFAULT_TV_ITERATIONS
    tv_step: float = DEFAULT_TV_STEP

    def __post_init__(self):
        if self.kind not in DENOISER_KINDS:
            raise ValueError(
                f"unknown denoiser kind {self.kind!r}, expected one of "
                f"{DENOISER_KINDS}"
            )
        if not (float(self.strength) >= 0.0):
            raise ValueError(f"strength must be >= 0, got {self.strength}")
        if int(self.tv_iterations) < 1:
            raise ValueError(
                f"tv_iterations must be >= 1, got {self.tv_iterations}"
            )
        if not (float(self.tv_step) > 0.0):
            raise ValueError(f"tv_step must be > 0, got {self.tv_step}")
        object.__setattr__(self, "strength", float(self.strength))
        object.__setattr__(self, "tv_iterations", int(self.tv_iterations))
        object.__setattr__(self, "tv_step", float(self.tv_step))


def _grad_h(u):
    g = np.zeros_like(u)
    g[:, :-1] = u[:, 1:] - u[:, :-1]
    return g


def _grad_w(u):
    g = np.zeros_like(u)
    g[:, :, :-1] = u[:, :, 1:] - u[:, :, :-1]
    return g


def _grad_adjoint(ph, pw):
    """Adjoint of (_grad_h, _grad_w); rows/cols act on axes 1 and 2."""
    out = np.zeros_like(ph)
    out[:, 1:] += ph[:, :-1]
    out[:, :-1] -= ph[:, :-1]
    out[:, :, 1:] += pw[:, :, :-1]
    out[:, :, :-1] -= pw[:, :, :-1]
    return out


def _tv_denoise(z, weight, iterations, step):
    """Dual ascent for min_x 0.5||x-z||^2 + weight*TV(x), per frame.

    The dual variable is clipped to [-weight, weight] after each gradient
    step; the primal iterate is x = z - adjoint(q).
    """
    qh = np.zeros_like(z)
    qw = np.zeros_like(z)
    for _ in range(int(iterations)):
        x = z - _grad_adjoint(qh, qw)
        qh = np.clip(qh + step * _grad_h(x), -weight, weight)
        qw = np.clip(qw + step * _grad_w(x), -weight, weight)
    return z - _grad_adjoint(qh, qw)


def denoise(z, beta: float, spec: DenoiserSpec) -> np.ndarray:
    """Apply the configured denoiser at noise level beta.

    identity returns the input; gaussian smooths each frame with a circular
    2-D Gaussian of sigma = strength*beta pixels; tv runs dual-ascent
    total-variation denoising per frame with weight strength*beta^2.
    beta = 0 (or strength 0) is exactly the identity for every kind.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim not in (3, 4):
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={z.ndim}")
    beta = float(beta)
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if spec.kind == "identity" or beta == 0.0 or spec.strength == 0.0:
        return z.copy()
    if spec.kind == "gaussian":
        sigma = spec.strength * beta
        radius = max(1, int(np.ceil(4.0 * sigma)))
        radius = min(radius, (z.shape[1] - 1) // 2, (z.shape[2] - 1) // 2)
        if radius < 1:
            return z.copy()
        extent = 2 * radius + 1
        out = conv3_circular(z, gaussian_spatial_kernel(sigma, (extent, extent)))
    else:
        weight = spec.strength * beta * beta
        out = _tv_denoise(z, weight, spec.tv_iterations, spec.tv_step)
    if not np.all(np.isfinite(out)):
        raise ValueError("denoiser produced non-finite values")
    return out


def tv_objective(x, z, weight: float) -> float:
    """Surrogate 0.5*||x - z||^2 + weight * anisotropic TV(x), per frame."""
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if x.shape != z.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {z.shape}")
    tv = np.sum(np.abs(_grad_h(x))) + np.sum(np.abs(_grad_w(x)))
    return float(0.5 * np.sum((x - z) ** 2) + float(weight) * tv)
