"""Forward degradation model: circular 3-D blur, decimation, Gaussian noise.

A degraded observation is downsample_std(conv3_circular(x, kernel), scale)
plus i.i.d. Gaussian noise in intensity units, drawn from a seeded generator
so repeated calls reproduce bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .video import Kernel3D, ensure_video, ifft3, kernel_to_otf


def _leading_shape(x) -> tuple[int, int, int]:
    return tuple(int(n) for n in x.shape[:3])


def apply_otf(x: np.ndarray, otf: np.ndarray) -> np.ndarray:
    """Multiply the (t, h, w) spectrum of x by a precomputed transfer function.

    Works on (T, H, W) and (T, H, W, C) arrays; channels share the OTF.
    """
    spec = np.fft.fftn(x, axes=(0, 1, 2))
    if x.ndim == 4:
        spec *= otf[:, :, :, None]
    else:
        spec *= otf
    return ifft3(spec)


def conv3_circular(x, k: Kernel3D) -> np.ndarray:
    """Circular 3-D convolution of each channel with the kernel.

    Computed spectrally; equals the direct wrap-around sum
    out[n] = sum_m taps[m] * x[(n - (m - center)) mod shape].
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (3, 4):
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={x.ndim}")
    otf = kernel_to_otf(k, _leading_shape(x))
    return apply_otf(x, otf)


def downsample_std(x, s) -> np.ndarray:
    """Keep samples at indices divisible by each factor (phase-0 decimation).

    Shapes must divide evenly; there is no cropping or padding fallback.
    """
    x = np.asarray(x)
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    for axis, (n, f) in enumerate(zip(x.shape[:3], (st, sh, sw))):
        if n % f != 0:
            raise ValueError(
                f"axis {axis} size {n} is not divisible by scale factor {f}"
            )
    return x[::st, ::sh, ::sw]


@dataclass(frozen=True)
class DegradationSpec:
    """Parameters of the forward model: kernel, scale, noise level, seed."""

    kernel: Kernel3D
    scale: tuple[int, int, int]
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        scale = tuple(int(v) for v in self.scale)
        if len(scale) != 3 or min(scale) < 1:
            raise ValueError(f"scale must be three ints >= 1, got {self.scale}")
        if not (float(self.noise_sigma) >= 0.0):
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "noise_sigma", float(self.noise_sigma))
        object.__setattr__(self, "seed", int(self.seed))


def degrade(x, spec: DegradationSpec) -> np.ndarray:
    """Blur, decimate, and add seeded Gaussian noise per the spec."""
    x = ensure_video(x)
    y = downsample_std(conv3_circular(x, spec.kernel), spec.scale)
    if spec.noise_sigma > 0.0:
        rng = np.random.default_rng(spec.seed)
        y = y + spec.noise_sigma * rng.standard_normal(y.shape)
    if not np.all(np.isfinite(y)):
        raise ValueError("degraded output contains non-finite values")
    return y
