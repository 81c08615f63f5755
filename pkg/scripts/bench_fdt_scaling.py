#!/usr/bin/env python3
"""Time the closed-form data solve across problem sizes and fit the
log-log runtime slope, with the dense solver as a contrast at the
smallest size."""

import argparse

from stvsr.bench import DEFAULT_SIZES, format_bench, run_scaling_bench


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=list(DEFAULT_SIZES),
                        help="power-of-two voxel counts")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-oracle", action="store_true",
                        help="skip the dense-solver timing")
    args = parser.parse_args()
    result = run_scaling_bench(tuple(args.sizes), repeats=args.repeats,
                               seed=args.seed, with_oracle=not args.no_oracle)
    print(format_bench(result), end="")


if __name__ == "__main__":
    main()
