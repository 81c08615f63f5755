"""Shared brute-force oracles; every one is independent of the library paths
it certifies (plain loops and direct formula evaluation only)."""

import numpy as np
import pytest


def naive_conv3_circular(x, taps, center):
    """Triple-loop circular convolution of a (T, H, W) array."""
    T, H, W = x.shape
    kt, kh, kw = taps.shape
    ct, ch, cw = center
    out = np.zeros_like(x)
    for n_t in range(T):
        for n_h in range(H):
            for n_w in range(W):
                acc = 0.0
                for m_t in range(kt):
                    for m_h in range(kh):
                        for m_w in range(kw):
                            src_t = (n_t - (m_t - ct)) % T
                            src_h = (n_h - (m_h - ch)) % H
                            src_w = (n_w - (m_w - cw)) % W
                            acc += taps[m_t, m_h, m_w] * x[src_t, src_h, src_w]
                out[n_t, n_h, n_w] = acc
    return out


def naive_dft3(x):
    """Direct triple-sum DFT of a small (T, H, W) array."""
    T, H, W = x.shape
    out = np.zeros((T, H, W), dtype=np.complex128)
    for u in range(T):
        for v in range(H):
            for w in range(W):
                acc = 0.0 + 0.0j
                for t in range(T):
                    for h in range(H):
                        for q in range(W):
                            phase = u * t / T + v * h / H + w * q / W
                            acc += x[t, h, q] * np.exp(-2j * np.pi * phase)
                out[u, v, w] = acc
    return out


def naive_block_mean(spec, s):
    """Slice out each of the s_t*s_h*s_w blocks and average them."""
    st, sh, sw = s
    T, H, W = spec.shape
    tl, hl, wl = T // st, H // sh, W // sw
    acc = np.zeros((tl, hl, wl), dtype=spec.dtype)
    for bt in range(st):
        for bh in range(sh):
            for bw in range(sw):
                acc += spec[
                    bt * tl : (bt + 1) * tl,
                    bh * hl : (bh + 1) * hl,
                    bw * wl : (bw + 1) * wl,
                ]
    return acc / (st * sh * sw)


def direct_bicubic_downsample_2d(img, s, cubic):
    """Direct circular bicubic downsampling of a (H, W) image by s.

    Output pixel (i, j) samples the antialiased cubic at input position
    (i*s + d, j*s + d) with d = 0.5 for even s and 0 for odd s.
    """
    H, W = img.shape
    d = 0.5 if s % 2 == 0 else 0.0
    out = np.zeros((H // s, W // s))
    for i in range(H // s):
        for j in range(W // s):
            ui = i * s + d
            uj = j * s + d
            acc = 0.0
            for a in range(int(np.floor(ui)) - 2 * s, int(np.floor(ui)) + 2 * s + 1):
                wa = float(cubic(np.array([(a - ui) / s]))[0]) / s
                if wa == 0.0:
                    continue
                for b in range(
                    int(np.floor(uj)) - 2 * s, int(np.floor(uj)) + 2 * s + 1
                ):
                    wb = float(cubic(np.array([(b - uj) / s]))[0]) / s
                    acc += wa * wb * img[a % H, b % W]
            out[i, j] = acc
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
