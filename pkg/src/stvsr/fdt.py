"""Closed-form solver for the quadratic data sub-problem, with dense oracle.

Each restoration iteration must minimize, per channel,

    J(z) = ||y - downsample_std(conv3_circular(z, k), s)||^2
           + alpha * ||z - x_prev||^2.

Under the circular boundary model the blur is diagonal in the 3-D Fourier
basis and phase-0 decimation becomes a block fold of the spectrum, so the
normal equations collapse to an elementwise formula computable with a fixed
number of FFTs:

    D     = conj(OTF) * F(upsample_zero(y)) + alpha * F(x_prev)
    numer = spectrum_fold_avg(OTF * D, s)
    denom = spectrum_fold_avg(|OTF|^2, s) + alpha
    F(z)  = (D - conj(OTF) * spectrum_tile(numer / denom, s)) / alpha

Convention notes, fixed by validation against ``dense_oracle_solve``:
the x_prev term enters D with a PLUS sign, and because
``spectrum_fold_avg`` takes the block MEAN the denominator constant is
alpha itself (a unit multiplier).  A block-SUM fold would instead require
the constant s_t*s_h*s_w*alpha; the two conventions are algebraically
equivalent and the mean form is used throughout.  The denominator is real
and >= alpha > 0, so the division needs no regularization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .degrade import conv3_circular, downsample_std
from .errors import SingularSystemError
from .kernels import delta_kernel, exposure_box_kernel, gaussian_spatial_kernel
from .video import Kernel3D, ifft3, kernel_to_otf


def upsample_zero(y, s) -> np.ndarray:
    """Insert zeros between samples; adjoint of phase-0 decimation.

    out[t*s_t, h*s_h, w*s_w] = y[t, h, w], all other entries 0.
    """
    y = np.asarray(y)
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    shape = (y.shape[0] * st, y.shape[1] * sh, y.shape[2] * sw) + y.shape[3:]
    out = np.zeros(shape, dtype=y.dtype)
    out[::st, ::sh, ::sw] = y
    return out


def spectrum_fold_avg(spectrum, s) -> np.ndarray:
    """Mean of the s_t x s_h x s_w contiguous blocks of a (T,H,W) spectrum."""
    spec = np.asarray(spectrum)
    if spec.ndim != 3:
        raise ValueError(f"expected a 3-D spectrum, got ndim={spec.ndim}")
    st, sh, sw = (int(v) for v in s)
    T, H, W = spec.shape
    if T % st or H % sh or W % sw:
        raise ValueError(
            f"spectrum shape {spec.shape} is not divisible by scale {(st, sh, sw)}"
        )
    tl, hl, wl = T // st, H // sh, W // sw
    return spec.reshape(st, tl, sh, hl, sw, wl).mean(axis=(0, 2, 4))


def spectrum_tile(spectrum, s) -> np.ndarray:
    """Tile a low-resolution spectrum s_t x s_h x s_w times to full size.

    Up to the 1/(s_t*s_h*s_w) factor, this is the adjoint of
    ``spectrum_fold_avg``.
    """
    spec = np.asarray(spectrum)
    if spec.ndim != 3:
        raise ValueError(f"expected a 3-D spectrum, got ndim={spec.ndim}")
    st, sh, sw = (int(v) for v in s)
    if min(st, sh, sw) < 1:
        raise ValueError(f"scale factors must be >= 1, got {(st, sh, sw)}")
    return np.tile(spec, (st, sh, sw))


@dataclass(frozen=True)
class FdtContext:
    """Precomputed spectra for solving the data sub-problem at one alpha.

    ``otf`` is the blur kernel's full-size transfer function, shared across
    channels; the conjugate and the folded denominator are cached so repeated
    solves pay only for the FFTs of their inputs.
    """

    otf: np.ndarray
    scale: tuple[int, int, int]
    alpha: float
    otf_conj: np.ndarray = field(init=False, repr=False)
    denom: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        otf = np.asarray(self.otf, dtype=np.complex128)
        if otf.ndim != 3:
            raise ValueError(f"otf must be a 3-D spectrum, got ndim={otf.ndim}")
        scale = tuple(int(v) for v in self.scale)
        if len(scale) != 3 or min(scale) < 1:
            raise ValueError(f"scale must be three ints >= 1, got {self.scale}")
        alpha = float(self.alpha)
        if not alpha > 0.0:
            raise ValueError(f"alpha must be > 0, got {alpha}")
        for axis, (n, f) in enumerate(zip(otf.shape, scale)):
            if n % f != 0:
                raise ValueError(
                    f"axis {axis} size {n} is not divisible by scale factor {f}"
                )
        object.__setattr__(self, "otf", otf)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "otf_conj", np.conj(otf))
        folded = spectrum_fold_avg((otf * np.conj(otf)).real, scale)
        object.__setattr__(self, "denom", folded + alpha)

    @classmethod
    def from_kernel(cls, kernel: Kernel3D, scale, alpha, hstr_shape) -> "FdtContext":
        return cls(kernel_to_otf(kernel, hstr_shape), tuple(scale), alpha)

    @property
    def hstr_shape(self) -> tuple[int, int, int]:
        return self.otf.shape

    @property
    def lstr_shape(self) -> tuple[int, int, int]:
        return tuple(n // f for n, f in zip(self.otf.shape, self.scale))

    def with_alpha(self, alpha: float) -> "FdtContext":
        return FdtContext(self.otf, self.scale, alpha)


def _solve_channel(xc: np.ndarray, yc: np.ndarray, ctx: FdtContext) -> np.ndarray:
    d = ctx.otf_conj * np.fft.fftn(upsample_zero(yc, ctx.scale))
    d += ctx.alpha * np.fft.fftn(xc)
    numer = spectrum_fold_avg(ctx.otf * d, ctx.scale)
    fz = (d - ctx.otf_conj * spectrum_tile(numer / ctx.denom, ctx.scale)) / ctx.alpha
    return ifft3(fz)


def fdt_solve(x_prev, y, ctx: FdtContext) -> np.ndarray:
    """Exact minimizer of the data sub-problem (see module docstring).

    ``x_prev`` has the full-resolution shape of the context, ``y`` the
    decimated shape; both may carry a trailing channel axis, solved
    independently against the shared transfer function.
    """
    x_prev = np.asarray(x_prev, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x_prev.ndim != y.ndim or x_prev.ndim not in (3, 4):
        raise ValueError(
            f"inputs must both be 3-D or both 4-D, got {x_prev.ndim} and {y.ndim}"
        )
    if tuple(x_prev.shape[:3]) != ctx.hstr_shape:
        raise ValueError(
            f"x_prev shape {x_prev.shape[:3]} does not match context "
            f"full-resolution shape {ctx.hstr_shape}"
        )
    if tuple(y.shape[:3]) != ctx.lstr_shape:
        raise ValueError(
            f"y shape {y.shape[:3]} does not match context decimated "
            f"shape {ctx.lstr_shape}"
        )
    if x_prev.ndim == 4 and x_prev.shape[3] != y.shape[3]:
        raise ValueError(
            f"channel counts differ: {x_prev.shape[3]} vs {y.shape[3]}"
        )
    if x_prev.ndim == 3:
        z = _solve_channel(x_prev, y, ctx)
    else:
        z = np.empty_like(x_prev)
        for c in range(x_prev.shape[3]):
            z[:, :, :, c] = _solve_channel(x_prev[:, :, :, c], y[:, :, :, c], ctx)
    if not np.all(np.isfinite(z)):
        raise ValueError("solver produced non-finite values")
    return z


def data_objective(z, x_prev, y, kernel: Kernel3D, scale, alpha: float) -> float:
    """The quadratic objective J(z) that fdt_solve minimizes."""
    z = np.asarray(z, dtype=np.float64)
    resid = np.asarray(y, dtype=np.float64) - downsample_std(
        conv3_circular(z, kernel), scale
    )
    prox = z - np.asarray(x_prev, dtype=np.float64)
    return float(np.sum(resid**2) + alpha * np.sum(prox**2))


DENSE_ORACLE_MAX_SIZE = 4096


def degradation_matrix(kernel: Kernel3D, scale, hstr_shape) -> np.ndarray:
    """Explicit matrix of z -> downsample_std(conv3_circular(z, k), s).

    Built column by column by probing with unit vectors; test-scale only
    (full size capped at DENSE_ORACLE_MAX_SIZE entries).
    """
    hstr_shape = tuple(int(v) for v in hstr_shape)
    n = int(np.prod(hstr_shape))
    if n > DENSE_ORACLE_MAX_SIZE:
        raise ValueError(
            f"dense operator for {hstr_shape} has {n} columns, "
            f"above the {DENSE_ORACLE_MAX_SIZE} guard"
        )
    otf = kernel_to_otf(kernel, hstr_shape)
    m = n // int(np.prod([int(v) for v in scale]))
    a = np.empty((m, n), dtype=np.float64)
    probe = np.zeros(hstr_shape, dtype=np.float64)
    flat = probe.reshape(-1)
    for j in range(n):
        flat[j] = 1.0
        blurred = ifft3(np.fft.fftn(probe) * otf)
        a[:, j] = downsample_std(blurred, scale).reshape(-1)
        flat[j] = 0.0
    return a


def dense_oracle_solve(x_prev, y, k: Kernel3D, s, alpha: float) -> np.ndarray:
    """Reference minimizer by explicit normal equations; certifies fdt_solve.

    Solves (A^T A + alpha I) z = A^T y + alpha x_prev with A built by
    ``degradation_matrix`` and verifies the residual of the normal equations
    is at most 1e-10 relative.
    """
    x_prev = np.asarray(x_prev, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    alpha = float(alpha)
    if not alpha > 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if x_prev.ndim != y.ndim or x_prev.ndim not in (3, 4):
        raise ValueError(
            f"inputs must both be 3-D or both 4-D, got {x_prev.ndim} and {y.ndim}"
        )
    hstr_shape = tuple(x_prev.shape[:3])
    a = degradation_matrix(k, s, hstr_shape)
    chans = 1 if x_prev.ndim == 3 else x_prev.shape[3]
    xv = x_prev.reshape(-1, chans) if x_prev.ndim == 4 else x_prev.reshape(-1, 1)
    yv = y.reshape(-1, chans) if y.ndim == 4 else y.reshape(-1, 1)
    gram = a.T @ a + alpha * np.eye(a.shape[1])
    rhs = a.T @ yv + alpha * xv
    try:
        zv = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"normal equations failed to factor: {exc}")
    residual = np.linalg.norm(gram @ zv - rhs)
    scale_norm = max(np.linalg.norm(rhs), np.finfo(np.float64).tiny)
    if residual > 1e-10 * scale_norm:
        raise SingularSystemError(
            f"normal-equation residual {residual / scale_norm:.3e} "
            "exceeds 1e-10 relative"
        )
    return zv.reshape(x_prev.shape)


# Grid spanned by the solver-vs-oracle equivalence suite.
EQUIV_FRAMES = (2, 4)
EQUIV_HEIGHTS = (4, 8)
EQUIV_WIDTHS = (4, 8)
EQUIV_SCALES = tuple(product((1, 2), repeat=3))
EQUIV_KERNEL_KINDS = ("delta", "box3t", "gauss3", "rand333")
EQUIV_ALPHAS = (1e-3, 0.1, 10.0)


@dataclass(frozen=True)
class EquivCase:
    """One randomized solver-vs-oracle comparison instance."""

    shape: tuple[int, int, int]
    scale: tuple[int, int, int]
    kernel_kind: str
    alpha: float
    seed: int


def _case_kernel(kind: str, rng: np.random.Generator) -> Kernel3D:
    if kind == "delta":
        return delta_kernel()
    if kind == "box3t":
        return exposure_box_kernel(3)
    if kind == "gauss3":
        return gaussian_spatial_kernel(1.0, (3, 3))
    if kind == "rand333":
        taps = rng.random((3, 3, 3))
        return Kernel3D(taps / taps.sum(), (1, 1, 1))
    raise ValueError(f"unknown kernel kind {kind!r}")


def _kernel_fits(kind: str, shape) -> bool:
    need = {"delta": (1, 1, 1), "box3t": (3, 1, 1), "gauss3": (1, 3, 3)}
    extent = need.get(kind, (3, 3, 3))
    return all(k <= n for k, n in zip(extent, shape))


def grid_equivalence_cases(seed: int = 0) -> list[EquivCase]:
    """The full documented grid: shapes x scales x kernels x alphas."""
    cases = []
    counter = 0
    for t, h, w in product(EQUIV_FRAMES, EQUIV_HEIGHTS, EQUIV_WIDTHS):
        for scale in EQUIV_SCALES:
            for kind in EQUIV_KERNEL_KINDS:
                if not _kernel_fits(kind, (t, h, w)):
                    continue
                for alpha in EQUIV_ALPHAS:
                    cases.append(
                        EquivCase((t, h, w), scale, kind, alpha, seed + counter)
                    )
                    counter += 1
    return cases


def random_equivalence_cases(trials: int, seed: int = 0) -> list[EquivCase]:
    """Uniformly sampled cases from the equivalence grid."""
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < trials:
        shape = (
            int(rng.choice(EQUIV_FRAMES)),
            int(rng.choice(EQUIV_HEIGHTS)),
            int(rng.choice(EQUIV_WIDTHS)),
        )
        kind = str(rng.choice(EQUIV_KERNEL_KINDS))
        if not _kernel_fits(kind, shape):
            continue
        scale = EQUIV_SCALES[int(rng.integers(len(EQUIV_SCALES)))]
        alpha = float(rng.choice(EQUIV_ALPHAS))
        cases.append(
            EquivCase(shape, scale, kind, alpha, int(rng.integers(2**32)))
        )
    return cases


def equivalence_deviation(case: EquivCase) -> float:
    """Max abs difference between fdt_solve and the dense oracle on a case."""
    rng = np.random.default_rng(case.seed)
    kernel = _case_kernel(case.kernel_kind, rng)
    lstr = tuple(n // f for n, f in zip(case.shape, case.scale))
    x_prev = rng.standard_normal(case.shape)
    y = rng.standard_normal(lstr)
    ctx = FdtContext.from_kernel(kernel, case.scale, case.alpha, case.shape)
    z_fast = fdt_solve(x_prev, y, ctx)
    z_ref = dense_oracle_solve(x_prev, y, kernel, case.scale, case.alpha)
    return float(np.max(np.abs(z_fast - z_ref)))


def max_equivalence_deviation(cases) -> float:
    return max(equivalence_deviation(case) for case in cases)
