"""Blur kernel factories, composition, and the K3 text file format.

All factory kernels are normalized to sum 1.  Centers follow one rule: the
declared center is the integer tap index closest to the kernel's symmetry
center, and ``center_shift`` records the leftover sub-sample offset (true
center minus declared center), which is -0.5 on the affected axes for
even-extent symmetric kernels and 0 otherwise.
"""

from __future__ import annotations

import numpy as np

from .video import Kernel3D


def delta_kernel() -> Kernel3D:
    """Single unit tap; convolution with it is the identity."""
    return Kernel3D(np.ones((1, 1, 1)), (0, 0, 0))


def exposure_box_kernel(n: int) -> Kernel3D:
    """Temporal box of n equal taps modeling exposure-time frame averaging.

    Spatial extent is 1x1.  The declared center is tap n//2; for even n the
    true center sits half a sample earlier, recorded in ``center_shift``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"box length must be >= 1, got {n}")
    taps = np.full((n, 1, 1), 1.0 / n)
    shift_t = (n - 1) / 2.0 - n // 2
    return Kernel3D(taps, (n // 2, 0, 0), (shift_t, 0.0, 0.0))


def gaussian_spatial_kernel(sigma_s: float, extent=(3, 3)) -> Kernel3D:
    """Separable 2-D Gaussian on an odd (k_h, k_w) grid, temporal extent 1.

    Taps are exp(-(dh^2 + dw^2) / (2 sigma^2)) normalized to sum 1, with
    offsets measured from the central tap.
    """
    sigma = float(sigma_s)
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    kh, kw = (int(e) for e in extent)
    if kh < 1 or kw < 1 or kh % 2 == 0 or kw % 2 == 0:
        raise ValueError(f"extents must be odd positive ints, got {(kh, kw)}")
    dh = np.arange(kh) - kh // 2
    dw = np.arange(kw) - kw // 2
    gh = np.exp(-(dh**2) / (2.0 * sigma**2))
    gw = np.exp(-(dw**2) / (2.0 * sigma**2))
    taps = np.outer(gh, gw)[None, :, :]
    taps = taps / taps.sum()
    return Kernel3D(taps, (0, kh // 2, kw // 2))


def cubic_weight(x):
    """Keys cubic interpolation kernel with a = -0.5, support (-2, 2)."""
    a = -0.5
    x = np.abs(np.asarray(x, dtype=np.float64))
    out = np.zeros_like(x)
    near = x <= 1.0
    far = (x > 1.0) & (x < 2.0)
    out[near] = (a + 2.0) * x[near] ** 3 - (a + 3.0) * x[near] ** 2 + 1.0
    out[far] = a * x[far] ** 3 - 5.0 * a * x[far] ** 2 + 8.0 * a * x[far] - 4.0 * a
    return out


def bicubic_kernel(s: int) -> Kernel3D:
    """Antialiased spatial bicubic kernel for integer downsampling factor s.

    Taps sample the cubic kernel stretched by s: weight(o) = c((o + d)/s)/s
    at integer offsets o, where d is 0 for odd s and 0.5 for even s (an
    even-factor pixel grid has no sample at the geometric center, so the
    kernel is symmetric about a half-sample position; the declared center is
    the tap just right of it and ``center_shift`` records the -0.5 offset).
    Downsampling after convolution with this kernel reproduces direct
    bicubic resampling at positions i*s + d under the circular model.
    Taps sum to 1 by the cubic kernel's partition of unity.
    """
    s = int(s)
    if s < 1:
        raise ValueError(f"scale must be >= 1, got {s}")
    if s == 1:
        return delta_kernel()
    if s % 2 == 0:
        offsets = np.arange(-2 * s, 2 * s)  # 4s taps, symmetric about -0.5
        center = 2 * s
        shift = -0.5
    else:
        offsets = np.arange(-(2 * s - 1), 2 * s)  # 4s-1 taps, symmetric
        center = 2 * s - 1
        shift = 0.0
    profile = cubic_weight((offsets + (0.0 if shift == 0.0 else 0.5)) / s) / s
    profile = profile / profile.sum()
    taps = np.outer(profile, profile)[None, :, :]
    return Kernel3D(taps, (0, center, center), (0.0, shift, shift))


def compose_kernels(a: Kernel3D, b: Kernel3D) -> Kernel3D:
    """Kernel of the composition conv(conv(x, a), b).

    Taps are the full 3-D convolution of the operands' taps; centers and
    center shifts add per axis.
    """
    ka = a.taps
    kb = b.taps
    out = np.zeros(tuple(na + nb - 1 for na, nb in zip(ka.shape, kb.shape)))
    for it in range(ka.shape[0]):
        for ih in range(ka.shape[1]):
            for iw in range(ka.shape[2]):
                w = ka[it, ih, iw]
                if w != 0.0:
                    out[
                        it : it + kb.shape[0],
                        ih : ih + kb.shape[1],
                        iw : iw + kb.shape[2],
                    ] += w * kb
    center = tuple(ca + cb for ca, cb in zip(a.center, b.center))
    shift = tuple(sa + sb for sa, sb in zip(a.center_shift, b.center_shift))
    return Kernel3D(out, center, shift)


def save_kernel(kernel: Kernel3D, path) -> None:
    """Write a kernel as text: "K3 k_t k_h k_w c_t c_h c_w" then the taps.

    Taps are written in (t, h, w) traversal order with full float precision,
    one (t, h) row per line.  The sub-sample center shift is informational
    metadata and is not part of the format.
    """
    kt, kh, kw = kernel.extent
    ct, ch, cw = kernel.center
    lines = [f"K3 {kt} {kh} {kw} {ct} {ch} {cw}"]
    for it in range(kt):
        for ih in range(kh):
            lines.append(" ".join(repr(float(v)) for v in kernel.taps[it, ih]))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_kernel(path) -> Kernel3D:
    """Read a kernel written by ``save_kernel``."""
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if len(tokens) < 7 or tokens[0] != "K3":
        raise ValueError(f"{path}: not a K3 kernel file")
    try:
        kt, kh, kw, ct, ch, cw = (int(t) for t in tokens[1:7])
        taps = np.array([float(t) for t in tokens[7:]], dtype=np.float64)
    except ValueError as exc:
        raise ValueError(f"{path}: malformed K3 kernel file: {exc}") from None
    if taps.size != kt * kh * kw:
        raise ValueError(
            f"{path}: expected {kt * kh * kw} taps, found {taps.size}"
        )
    return Kernel3D(taps.reshape(kt, kh, kw), (ct, ch, cw))
