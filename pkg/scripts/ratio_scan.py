#!/usr/bin/env python3
"""Sweep the boost parameter and tabulate measured vs predicted tail ratios.

Emits a plot-ready TSV: eps, track, predicted, measured, relative deviation.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lorentz_harmonics.principal_series import (  # noqa: E402
    boundary_ratio_test,
    ratio_test,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=0)
    ap.add_argument("--tau", type=float, default=0.0)
    ap.add_argument("--jmax", type=int, default=200)
    ap.add_argument(
        "--eps", type=float, nargs="+", default=[0.3, 0.5, 0.8, 1.25, 2.0, 3.0]
    )
    args = ap.parse_args()

    print("eps\ttrack\tpredicted\tmeasured\trel_dev")
    for eps in args.eps:
        rep = ratio_test(args.m, args.tau, eps, args.jmax)
        print(
            f"{eps}\tdiagonal(m={args.m})\t{rep.predicted_limit:.6f}"
            f"\t{rep.empirical_limit:.6f}\t{rep.relative_deviation:.2e}"
        )
        for track in ("m_equals_j", "m_equals_0"):
            rep = boundary_ratio_test(track, args.tau, eps, args.jmax)
            print(
                f"{eps}\t{track}\t{rep.predicted_limit:.6f}"
                f"\t{rep.empirical_limit:.6f}\t{rep.relative_deviation:.2e}"
            )


if __name__ == "__main__":
    main()
