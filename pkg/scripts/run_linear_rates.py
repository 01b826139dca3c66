#!/usr/bin/env python3
"""Fit the linear decay rates (semigroup vs Gaussian, kernel-derivative
bounds) at both a sub-quadratic and a super-quadratic dispersion exponent."""

import sys

from kdvb_asym.cli import main

if __name__ == "__main__":
    status = 0
    for alpha in ("3/2", "5/2"):
        tag = alpha.replace("/", "over")
        status |= main([
            "verify-linear", "--alpha", alpha,
            "--output-dir", f"out/linear_{tag}",
        ])
    sys.exit(status)
