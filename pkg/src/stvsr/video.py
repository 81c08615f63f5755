"""Video tensors, 3-D spectral transforms, and kernel spectrum embedding.

A video is a float64 array of shape (T, H, W, C) with C in {1, 3} and all
values finite.  Spectral ops act on the three leading axes; the channel
axis is never transformed.

FFT normalization convention, fixed package-wide: the forward transform is
unnormalized and the inverse divides by T*H*W, matching ``numpy.fft``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectrumSymmetryError

VIDEO_CHANNELS = (1, 3)

# Round trips of real data through fft3/ifft3 stay below this residue.
IFFT_RESIDUE_EXPECTED = 1e-8
# Above this the spectrum is treated as non-conjugate-symmetric and rejected.
IFFT_RESIDUE_LIMIT = 1e-6


def ensure_video(x) -> np.ndarray:
    """Validate and return ``x`` as a float64 (T, H, W, C) video tensor."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 4:
        raise ValueError(
            f"video tensor must have shape (T, H, W, C), got ndim={arr.ndim}"
        )
    if arr.shape[3] not in VIDEO_CHANNELS:
        raise ValueError(f"channel count must be 1 or 3, got {arr.shape[3]}")
    if arr.size == 0:
        raise ValueError("video tensor must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("video tensor contains non-finite values")
    return arr


def fft3(video, channel: int = 0) -> np.ndarray:
    """Unnormalized forward FFT over (t, h, w) of one channel.

    Accepts a (T, H, W, C) video, from which ``channel`` is selected, or a
    bare (T, H, W) array (then ``channel`` must be 0).
    """
    arr = np.asarray(video, dtype=np.float64)
    if arr.ndim == 4:
        if not 0 <= channel < arr.shape[3]:
            raise ValueError(
                f"channel {channel} out of range for {arr.shape[3]} channels"
            )
        arr = arr[:, :, :, channel]
    elif arr.ndim == 3:
        if channel != 0:
            raise ValueError("3-D input has a single implicit channel 0")
    else:
        raise ValueError(f"expected a 3-D or 4-D array, got ndim={arr.ndim}")
    return np.fft.fftn(arr, axes=(0, 1, 2))


def ifft3(spectrum) -> np.ndarray:
    """Inverse FFT over the three leading axes, returning the real part.

    The imaginary residue (max abs, relative to max(1, peak magnitude of the
    real part)) must stay at or below ``IFFT_RESIDUE_LIMIT``; a larger residue
    means the spectrum does not describe real data and raises
    ``SpectrumSymmetryError``.  Round trips of real input keep the residue
    under ``IFFT_RESIDUE_EXPECTED``.
    """
    spec = np.asarray(spectrum, dtype=np.complex128)
    if spec.ndim not in (3, 4):
        raise ValueError(f"expected a 3-D or 4-D spectrum, got ndim={spec.ndim}")
    out = np.fft.ifftn(spec, axes=(0, 1, 2))
    real = out.real
    residue = float(np.max(np.abs(out.imag))) if out.size else 0.0
    scale = max(1.0, float(np.max(np.abs(real))) if real.size else 0.0)
    if residue > IFFT_RESIDUE_LIMIT * scale:
        raise SpectrumSymmetryError(
            f"imaginary residue {residue:.3e} exceeds "
            f"{IFFT_RESIDUE_LIMIT:.0e} * {scale:.3e}; "
            "spectrum is not conjugate-symmetric"
        )
    return real.copy()


def circular_shift(video, offsets) -> np.ndarray:
    """Roll a video by integer offsets along (t, h, w), wrapping around."""
    arr = np.asarray(video)
    ot, oh, ow = (int(o) for o in offsets)
    return np.roll(arr, (ot, oh, ow), axis=(0, 1, 2))


@dataclass(frozen=True)
class Kernel3D:
    """A finite-support space-time blur kernel.

    ``taps`` has shape (k_t, k_h, k_w); ``center`` is the integer index of
    the tap treated as the origin.  ``center_shift`` records a residual
    sub-sample offset of the true symmetry center from the declared integer
    center (purely informational; all operators use the integer center).
    """

    taps: np.ndarray
    center: tuple[int, int, int]
    center_shift: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=np.float64)
        if taps.ndim != 3:
            raise ValueError(f"kernel taps must be 3-D, got ndim={taps.ndim}")
        if taps.size == 0:
            raise ValueError("kernel taps must be non-empty")
        if not np.all(np.isfinite(taps)):
            raise ValueError("kernel taps contain non-finite values")
        center = tuple(int(c) for c in self.center)
        if len(center) != 3:
            raise ValueError("kernel center must have three components")
        for axis, (c, k) in enumerate(zip(center, taps.shape)):
            if not 0 <= c < k:
                raise ValueError(
                    f"center index {c} outside taps extent {k} on axis {axis}"
                )
        shift = tuple(float(v) for v in self.center_shift)
        if len(shift) != 3 or any(abs(v) >= 1.0 for v in shift):
            raise ValueError("center_shift components must lie in (-1, 1)")
        taps = taps.copy()
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "center_shift", shift)

    @property
    def extent(self) -> tuple[int, int, int]:
        return self.taps.shape

    def tap_sum(self) -> float:
        return float(self.taps.sum())


def kernel_to_otf(kernel: Kernel3D, shape) -> np.ndarray:
    """Embed a kernel on a (T, H, W) grid and return its 3-D spectrum.

    The center tap lands at index (0, 0, 0); taps at negative offsets from
    the center wrap around to the far end of each axis, so the returned
    transfer function realizes circular convolution with the kernel centered
    at the origin.  The kernel extent must fit the grid on every axis.
    """
    shape = tuple(int(n) for n in shape)
    if len(shape) != 3 or any(n < 1 for n in shape):
        raise ValueError(f"grid shape must be three positive ints, got {shape}")
    for axis, (k, n) in enumerate(zip(kernel.extent, shape)):
        if k > n:
            raise ValueError(
                f"kernel extent {k} exceeds grid size {n} on axis {axis}"
            )
    embedded = np.zeros(shape, dtype=np.float64)
    idx = [
        (np.arange(k) - c) % n
        for k, c, n in zip(kernel.extent, kernel.center, shape)
    ]
    embedded[np.ix_(*idx)] = kernel.taps
    return np.fft.fftn(embedded)
