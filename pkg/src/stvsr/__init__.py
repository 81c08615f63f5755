"""Model-based space-time video super-resolution.

Simulates joint blur/downsample degradation of video and restores
high-framerate high-resolution sequences by alternating a closed-form
3-D FFT data solve with pluggable denoising priors.
"""

from .bench import BenchResult, run_scaling_bench
from .config import ExperimentConfig, load_config
from .degrade import DegradationSpec, conv3_circular, degrade, downsample_std
from .errors import FrameIoError, SingularSystemError, SpectrumSymmetryError
from .fdt import (
    FdtContext,
    dense_oracle_solve,
    fdt_solve,
    spectrum_fold_avg,
    spectrum_tile,
    upsample_zero,
)
from .frames import read_frames, read_sidecar, write_frames
from .kernels import (
    bicubic_kernel,
    compose_kernels,
    delta_kernel,
    exposure_box_kernel,
    gaussian_spatial_kernel,
    load_kernel,
    save_kernel,
)
from .metrics import (
    MetricReport,
    charbonnier,
    evaluate_videos,
    format_report,
    psnr,
    rgb_to_luma,
    ssim,
)
from .pipeline import (
    HqsConfig,
    HqsSchedule,
    RestoreTrace,
    bicubic_linear_baseline,
    build_schedule,
    data_residual,
    init_x0,
    restore,
)
from .priors import DenoiserSpec, denoise, tv_objective
from .synthetic import moving_patterns
from .video import Kernel3D, circular_shift, ensure_video, fft3, ifft3, kernel_to_otf

__version__ = "0.1.0"

__all__ = [
    "BenchResult",
    "DegradationSpec",
    "DenoiserSpec",
    "ExperimentConfig",
    "FdtContext",
    "FrameIoError",
    "HqsConfig",
    "HqsSchedule",
    "Kernel3D",
    "MetricReport",
    "RestoreTrace",
    "SingularSystemError",
    "SpectrumSymmetryError",
    "bicubic_kernel",
    "bicubic_linear_baseline",
    "build_schedule",
    "charbonnier",
    "circular_shift",
    "compose_kernels",
    "conv3_circular",
    "data_residual",
    "degrade",
    "delta_kernel",
    "denoise",
    "dense_oracle_solve",
    "downsample_std",
    "ensure_video",
    "evaluate_videos",
    "exposure_box_kernel",
    "fdt_solve",
    "fft3",
    "format_report",
    "gaussian_spatial_kernel",
    "ifft3",
    "init_x0",
    "kernel_to_otf",
    "load_config",
    "load_kernel",
    "moving_patterns",
    "psnr",
    "read_frames",
    "read_sidecar",
    "restore",
    "rgb_to_luma",
    "run_scaling_bench",
    "save_kernel",
    "spectrum_fold_avg",
    "spectrum_tile",
    "ssim",
    "tv_objective",
    "upsample_zero",
    "write_frames",
]
