"""Command-line entry points: degrade, restore, evaluate, oracle-check, bench.

Exit codes: 0 success, 1 contract violation (bad flags, bad config, failed
check), 2 I/O error (missing paths, unreadable or malformed files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import check_input_paths, load_config
from .degrade import DegradationSpec, degrade
from .fdt import max_equivalence_deviation, random_equivalence_cases
from .frames import read_frames, write_frames
from .kernels import load_kernel
from .metrics import evaluate_videos, format_report
from .bench import DEFAULT_SIZES, format_bench, run_scaling_bench
from .pipeline import restore


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stvsr",
        description="Space-time video super-resolution toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_degrade = sub.add_parser(
        "degrade", help="blur, downsample, and add noise to a frame sequence"
    )
    p_degrade.add_argument("--config", required=True, help="experiment config file")

    p_restore = sub.add_parser(
        "restore", help="recover a full-resolution sequence from a degraded one"
    )
    p_restore.add_argument("--config", required=True, help="experiment config file")

    p_eval = sub.add_parser(
        "evaluate", help="compare two frame sequences with PSNR/SSIM/Charbonnier"
    )
    p_eval.add_argument("dir_a", help="first frame directory (e.g. restored)")
    p_eval.add_argument("dir_b", help="second frame directory (e.g. ground truth)")
    p_eval.add_argument(
        "--luma", action="store_true", help="convert RGB to luminance first"
    )
    p_eval.add_argument(
        "--charbonnier-eps", type=float, default=1e-3, metavar="EPS",
        help="epsilon of the Charbonnier distance (default 1e-3)",
    )
    p_eval.add_argument(
        "--report", metavar="PATH", help="also write the report to this file"
    )

    p_oracle = sub.add_parser(
        "oracle-check",
        help="compare the fast data solve against the dense reference solver",
    )
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--trials", type=int, default=40)
    p_oracle.add_argument(
        "--tol", type=float, default=1e-6,
        help="max allowed deviation (default 1e-6)",
    )

    p_bench = sub.add_parser(
        "bench", help="measure data-solve runtime scaling"
    )
    p_bench.add_argument(
        "--sizes", default=",".join(str(s) for s in DEFAULT_SIZES),
        help="comma-separated power-of-two sample counts",
    )
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--no-oracle", action="store_true",
        help="skip the dense-oracle contrast timing",
    )
    return parser


def _cmd_degrade(args) -> int:
    cfg = load_config(args.config)
    check_input_paths(cfg, need_kernel=True)
    kernel = load_kernel(cfg.kernel_path)
    video = read_frames(cfg.input_dir)
    spec = DegradationSpec(kernel, cfg.scale, cfg.noise_sigma, cfg.seed)
    degraded = degrade(video, spec)
    write_frames(degraded, cfg.output_dir, sidecar=cfg.dump_trace)
    print(
        f"degraded {video.shape[0]}x{video.shape[1]}x{video.shape[2]} -> "
        f"{degraded.shape[0]}x{degraded.shape[1]}x{degraded.shape[2]} "
        f"into {cfg.output_dir}"
    )
    return 0


def _cmd_restore(args) -> int:
    cfg = load_config(args.config)
    check_input_paths(cfg, need_kernel=True)
    kernel = load_kernel(cfg.kernel_path)
    degraded = read_frames(cfg.input_dir)
    restored, trace = restore(degraded, kernel, cfg.scale, cfg.hqs)
    write_frames(restored, cfg.output_dir, sidecar=cfg.dump_trace)
    if cfg.dump_trace:
        trace_root = Path(cfg.output_dir) / "trace"
        for k, (z, x) in enumerate(trace.steps, 1):
            write_frames(z, trace_root / f"iter_{k:02d}_data", sidecar=True)
            write_frames(x, trace_root / f"iter_{k:02d}_denoised", sidecar=True)
    print(
        f"restored {degraded.shape[0]}x{degraded.shape[1]}x{degraded.shape[2]} -> "
        f"{restored.shape[0]}x{restored.shape[1]}x{restored.shape[2]} "
        f"in {len(trace)} iterations into {cfg.output_dir}"
    )
    return 0


def _cmd_evaluate(args) -> int:
    a = read_frames(args.dir_a)
    b = read_frames(args.dir_b)
    report = evaluate_videos(
        a, b, luma=args.luma, charbonnier_eps=args.charbonnier_eps
    )
    text = format_report(report)
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text, encoding="ascii")
    return 0


def _cmd_oracle_check(args) -> int:
    cases = random_equivalence_cases(args.trials, args.seed)
    deviation = max_equivalence_deviation(cases)
    print(f"max deviation over {len(cases)} instances: {deviation:.6e}")
    if deviation > args.tol:
        print(f"FAIL: deviation exceeds tolerance {args.tol:.6e}")
        return 1
    return 0


def _cmd_bench(args) -> int:
    try:
        sizes = tuple(int(s) for s in args.sizes.split(","))
    except ValueError:
        raise ValueError(f"--sizes needs comma-separated integers, got {args.sizes!r}")
    result = run_scaling_bench(
        sizes, repeats=args.repeats, seed=args.seed, with_oracle=not args.no_oracle
    )
    sys.stdout.write(format_bench(result))
    return 0


_COMMANDS = {
    "degrade": _cmd_degrade,
    "restore": _cmd_restore,
    "evaluate": _cmd_evaluate,
    "oracle-check": _cmd_oracle_check,
    "bench": _cmd_bench,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
