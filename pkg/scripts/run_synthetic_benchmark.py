#!/usr/bin/env python3
"""Degrade a seeded synthetic sequence and restore it, reporting PSNR/SSIM
against the ground truth alongside the interpolation baselines."""

import argparse

import numpy as np

from stvsr.degrade import DegradationSpec, degrade
from stvsr.kernels import compose_kernels, exposure_box_kernel, gaussian_spatial_kernel
from stvsr.metrics import psnr, ssim
from stvsr.pipeline import (
    HqsConfig,
    bicubic_linear_baseline,
    data_residual,
    init_x0,
    restore,
)
from stvsr.priors import DenoiserSpec
from stvsr.synthetic import moving_patterns


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=16)
    parser.add_argument("--size", type=int, default=64, help="height and width")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--noise-sigma", type=float, default=0.005)
    parser.add_argument("--scale", type=int, nargs=3, default=(2, 2, 2),
                        metavar=("ST", "SH", "SW"))
    parser.add_argument("--iterations", type=int, default=3)
    parser.add_argument("--denoiser", default="tv",
                        choices=("tv", "gaussian", "identity"))
    parser.add_argument("--strength", type=float, default=0.1)
    args = parser.parse_args()
    args.scale = tuple(args.scale)
    return args


def main():
    args = parse_args()
    gt = moving_patterns(args.frames, args.size, args.size, channels=3,
                         seed=args.seed)
    kernel = compose_kernels(exposure_box_kernel(args.scale[0]),
                             gaussian_spatial_kernel(1.2, (3, 3)))
    spec = DegradationSpec(kernel, args.scale, args.noise_sigma, args.seed)
    y = degrade(gt, spec)
    print(f"ground truth {gt.shape} -> degraded {y.shape}, "
          f"sigma={args.noise_sigma}")

    cfg = HqsConfig(
        iterations=args.iterations,
        sigma=args.noise_sigma,
        denoiser=DenoiserSpec(args.denoiser, strength=args.strength),
    )
    x, trace = restore(y, kernel, args.scale, cfg)

    candidates = {
        "trilinear": init_x0(y, args.scale, "trilinear"),
        "bicubic+linear": bicubic_linear_baseline(y, args.scale),
        f"hqs (K={args.iterations}, {args.denoiser})": x,
    }
    print(f"{'method':<28s} {'psnr_db':>9s} {'ssim':>8s}")
    for name, video in candidates.items():
        print(f"{name:<28s} {psnr(video, gt):9.3f} {ssim(video, gt):8.4f}")

    residuals = [data_residual(init_x0(y, args.scale, cfg.init), y, kernel,
                               args.scale)]
    residuals += [data_residual(xk, y, kernel, args.scale)
                  for _, xk in trace.steps]
    print("data residual per iterate:",
          " -> ".join(f"{r:.4f}" for r in residuals))
    deltas = np.diff(residuals)
    print("monotone non-increasing:", bool(np.all(deltas <= 1e-9)))


if __name__ == "__main__":
    main()
