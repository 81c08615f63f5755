"""Experiment configuration: one INI-style file drives degrade and restore.

Sections and keys (all except the [io] paths have defaults):

  [io]          input_dir, output_dir, kernel, dump_trace
  [degradation] scale ("st sh sw"), noise_sigma, seed
  [hqs]         iterations, sigma, lambda, mu_first, mu_last, init,
                denoiser, denoiser_strength, tv_iterations, tv_step
  [metrics]     color (rgb | luma)

Values are validated on load; unknown sections or keys are rejected so
typos fail loudly instead of silently using defaults.  Relative [io] paths
resolve against the config file's directory, so a config stays valid no
matter where the tool is launched from.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .errors import FrameIoError
from .pipeline import DEFAULT_DENOISER, INIT_MODES, HqsConfig
from .priors import DENOISER_KINDS, DenoiserSpec

_KNOWN_KEYS = {
    "io": {"input_dir", "output_dir", "kernel", "dump_trace"},
    "degradation": {"scale", "noise_sigma", "seed"},
    "hqs": {
        "iterations",
        "sigma",
        "lambda",
        "mu_first",
        "mu_last",
        "init",
        "denoiser",
        "denoiser_strength",
        "tv_iterations",
        "tv_step",
    },
    "metrics": {"color"},
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated settings for the degrade/restore commands."""

    input_dir: Path
    output_dir: Path
    kernel_path: Path | None
    scale: tuple[int, int, int]
    noise_sigma: float
    seed: int
    hqs: HqsConfig
    luma_metrics: bool
    dump_trace: bool


def _parse_bool(raw: str, where: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"{where}: expected a boolean, got {raw!r}")


def _parse_scale(raw: str, where: str) -> tuple[int, int, int]:
    parts = raw.split()
    if len(parts) != 3:
        raise ValueError(
            f"{where}: scale needs three integers 'st sh sw', got {raw!r}"
        )
    try:
        scale = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"{where}: scale needs integers, got {raw!r}") from None
    if min(scale) < 1:
        raise ValueError(f"{where}: scale factors must be >= 1, got {raw!r}")
    return scale


def _get_float(section, key: str, default: float, where: str) -> float:
    raw = section.get(key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{where}.{key}: expected a number, got {raw!r}") from None


def _get_int(section, key: str, default: int, where: str) -> int:
    raw = section.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{where}.{key}: expected an integer, got {raw!r}") from None


def load_config(path) -> ExperimentConfig:
    """Parse and range-check a config file (paths are checked separately)."""
    path = Path(path)
    if not path.is_file():
        raise FrameIoError(f"{path}: config file not found")
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";")
    )
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ValueError(f"{path}: malformed config: {exc}") from None

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ValueError(f"{path}: unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ValueError(f"{path}: unknown key {key!r} in [{section}]")

    if not parser.has_section("io"):
        raise ValueError(f"{path}: missing [io] section")
    io = parser["io"]
    if "input_dir" not in io or "output_dir" not in io:
        raise ValueError(f"{path}: [io] needs input_dir and output_dir")
    kernel_raw = io.get("kernel")
    dump_trace = _parse_bool(io.get("dump_trace", "false"), f"{path}: [io]")

    deg = parser["degradation"] if parser.has_section("degradation") else {}
    scale = _parse_scale(
        deg.get("scale", "1 1 1") if deg else "1 1 1", f"{path}: [degradation]"
    )
    noise_sigma = _get_float(deg, "noise_sigma", 0.0, f"{path}: [degradation]") if deg else 0.0
    seed = _get_int(deg, "seed", 0, f"{path}: [degradation]") if deg else 0
    if noise_sigma < 0:
        raise ValueError(f"{path}: [degradation].noise_sigma must be >= 0")

    hqs_sec = parser["hqs"] if parser.has_section("hqs") else {}
    where = f"{path}: [hqs]"
    kind = hqs_sec.get("denoiser", DEFAULT_DENOISER.kind) if hqs_sec else DEFAULT_DENOISER.kind
    if kind not in DENOISER_KINDS:
        raise ValueError(f"{where}.denoiser: unknown kind {kind!r}")
    init = hqs_sec.get("init", "trilinear") if hqs_sec else "trilinear"
    if init not in INIT_MODES:
        raise ValueError(f"{where}.init: unknown mode {init!r}")
    try:
        denoiser = DenoiserSpec(
            kind=kind,
            strength=_get_float(
                hqs_sec, "denoiser_strength", DEFAULT_DENOISER.strength, where
            ),
            tv_iterations=_get_int(
                hqs_sec, "tv_iterations", DEFAULT_DENOISER.tv_iterations, where
            ),
            tv_step=_get_float(hqs_sec, "tv_step", DEFAULT_DENOISER.tv_step, where),
        )
        hqs = HqsConfig(
            iterations=_get_int(hqs_sec, "iterations", 3, where),
            sigma=_get_float(hqs_sec, "sigma", 0.0, where),
            lam=_get_float(hqs_sec, "lambda", 0.02, where),
            mu_first=_get_float(hqs_sec, "mu_first", 1e-2, where),
            mu_last=_get_float(hqs_sec, "mu_last", 1.0, where),
            denoiser=denoiser,
            init=init,
        )
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None

    color = parser["metrics"].get("color", "rgb") if parser.has_section("metrics") else "rgb"
    if color not in ("rgb", "luma"):
        raise ValueError(f"{path}: [metrics].color must be rgb or luma")

    base = path.parent

    def resolve(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base / p

    return ExperimentConfig(
        input_dir=resolve(io["input_dir"]),
        output_dir=resolve(io["output_dir"]),
        kernel_path=resolve(kernel_raw) if kernel_raw else None,
        scale=scale,
        noise_sigma=noise_sigma,
        seed=seed,
        hqs=hqs,
        luma_metrics=(color == "luma"),
        dump_trace=dump_trace,
    )


def check_input_paths(cfg: ExperimentConfig, need_kernel: bool) -> None:
    """Up-front existence checks, run before any output path is touched."""
    if not cfg.input_dir.is_dir():
        raise FrameIoError(f"{cfg.input_dir}: input directory not found")
    if need_kernel:
        if cfg.kernel_path is None:
            raise ValueError("config is missing [io].kernel, required here")
        if not cfg.kernel_path.is_file():
            raise FrameIoError(f"{cfg.kernel_path}: kernel file not found")
