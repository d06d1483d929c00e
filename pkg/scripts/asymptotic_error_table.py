#!/usr/bin/env python3
"""Error of the large-j coefficient approximation against exact evaluation.

Prints relative errors over a j ladder; at tau = 0 they halve per doubling,
for real tau != 0 they grow (the approximation's parameters then grow with j,
outside its validity regime), which this table makes visible.
"""
import argparse
import cmath
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lorentz_harmonics.principal_series import diagonal_coefficient  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=0)
    ap.add_argument("--eps", type=float, default=2.0)
    ap.add_argument("--taus", type=float, nargs="+", default=[0.0, 0.25, 0.5])
    ap.add_argument("--js", type=int, nargs="+", default=[8, 16, 32, 64])
    args = ap.parse_args()

    print("tau\tj\trel_error")
    for tau in args.taus:
        for j in args.js:
            exact = diagonal_coefficient(j, args.m, tau, args.eps, method="exact")
            asym = diagonal_coefficient(j, args.m, tau, args.eps, method="asymptotic")
            err = abs(
                cmath.exp(
                    complex(asym.log_mag - exact.log_mag, asym.phase - exact.phase)
                )
                - 1.0
            )
            print(f"{tau}\t{j}\t{err:.4e}")


if __name__ == "__main__":
    main()
