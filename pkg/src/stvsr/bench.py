"""Runtime scaling measurements for the closed-form data solve.

The solve is a fixed number of full-size FFTs plus elementwise work, so
runtime should grow as N log N in the full-resolution sample count N; the
dense reference solver is cubic and serves as the contrast case.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .fdt import FdtContext, dense_oracle_solve, fdt_solve
from .kernels import compose_kernels, exposure_box_kernel, gaussian_spatial_kernel

DEFAULT_SIZES = (2**12, 2**15, 2**18)
BENCH_SCALE = (2, 2, 2)
BENCH_ALPHA = 0.1


def bench_kernel():
    """Small space-time kernel used by all scaling measurements."""
    return compose_kernels(exposure_box_kernel(2), gaussian_spatial_kernel(1.2, (3, 3)))


def shape_for_size(n: int) -> tuple[int, int, int]:
    """Factor a power-of-two sample count into a near-cubic (T, H, W)."""
    n = int(n)
    e = n.bit_length() - 1
    if n <= 0 or 2**e != n:
        raise ValueError(f"bench sizes must be powers of two, got {n}")
    base, rem = divmod(e, 3)
    t = 2**base
    h = 2 ** (base + (1 if rem >= 1 else 0))
    w = 2 ** (base + (1 if rem >= 2 else 0))
    return (t, h, w)


def _bench_inputs(shape, seed):
    rng = np.random.default_rng(seed)
    lstr = tuple(n // f for n, f in zip(shape, BENCH_SCALE))
    return rng.standard_normal(shape), rng.standard_normal(lstr)


def measure_fdt_runtime(shape, repeats: int = 3, seed: int = 0) -> float:
    """Best-of-repeats wall time of one fdt_solve call at the given shape."""
    x_prev, y = _bench_inputs(shape, seed)
    ctx = FdtContext.from_kernel(bench_kernel(), BENCH_SCALE, BENCH_ALPHA, shape)
    fdt_solve(x_prev, y, ctx)  # warmup
    best = float("inf")
    for _ in range(int(repeats)):
        start = time.perf_counter()
        fdt_solve(x_prev, y, ctx)
        best = min(best, time.perf_counter() - start)
    return best


def measure_oracle_runtime(shape, seed: int = 0) -> float:
    """Wall time of one dense_oracle_solve call at the given shape."""
    x_prev, y = _bench_inputs(shape, seed)
    kernel = bench_kernel()
    start = time.perf_counter()
    dense_oracle_solve(x_prev, y, kernel, BENCH_SCALE, BENCH_ALPHA)
    return time.perf_counter() - start


def fit_loglog_slope(sizes, times) -> float:
    """Least-squares slope of log(time) against log(size)."""
    return float(np.polyfit(np.log(np.asarray(sizes, dtype=np.float64)),
                            np.log(np.asarray(times, dtype=np.float64)), 1)[0])


@dataclass(frozen=True)
class BenchResult:
    sizes: tuple[int, ...]
    shapes: tuple[tuple[int, int, int], ...]
    times: tuple[float, ...]
    slope: float
    oracle_size: int | None = None
    oracle_time: float | None = None
    oracle_ratio: float | None = None


def run_scaling_bench(
    sizes=DEFAULT_SIZES, repeats: int = 3, seed: int = 0, with_oracle: bool = True
) -> BenchResult:
    """Time fdt_solve across sizes and optionally the dense oracle contrast."""
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 2:
        raise ValueError("need at least two sizes for a slope")
    shapes = tuple(shape_for_size(s) for s in sizes)
    times = tuple(measure_fdt_runtime(shape, repeats, seed) for shape in shapes)
    slope = fit_loglog_slope(sizes, times)
    oracle_size = oracle_time = oracle_ratio = None
    if with_oracle:
        oracle_size = min(sizes)
        oracle_shape = shape_for_size(oracle_size)
        oracle_time = measure_oracle_runtime(oracle_shape, seed)
        fast = times[sizes.index(oracle_size)]
        oracle_ratio = oracle_time / fast if fast > 0 else float("inf")
    return BenchResult(sizes, shapes, times, slope, oracle_size, oracle_time, oracle_ratio)


def format_bench(result: BenchResult) -> str:
    lines = ["size      shape           seconds"]
    for n, shape, t in zip(result.sizes, result.shapes, result.times):
        lines.append(f"{n:<9d} {str(shape):<15s} {t:.6f}")
    lines.append(f"loglog_slope = {result.slope:.4f}")
    if result.oracle_ratio is not None:
        lines.append(
            f"dense_oracle_seconds({result.oracle_size}) = {result.oracle_time:.6f}"
        )
        lines.append(f"oracle_over_fdt_ratio = {result.oracle_ratio:.1f}")
    return "\n".join(lines) + "\n"
