#!/usr/bin/env python3
"""Long nonlinear run verifying the first- and second-order expansions.

Uses the resonant quadratic-dispersion configuration (alpha = 2, beta = 3,
small Gaussian data) out to t = 1000 on a wide grid, then aggregates every
decay series into one CSV for the figure component.  Expect roughly ten
minutes of runtime.
"""

import sys

from kdvb_asym.cli import main

RUN_FLAGS = [
    "--alpha", "2", "--beta", "3",
    "--half-width", "2000", "--point-count", "32768",
    "--dt", "0.05", "--t-end", "1000", "--t-max-mass", "500",
    "--kind", "gaussian", "--amplitude", "0.1", "--width", "1",
]

if __name__ == "__main__":
    status = main(["verify-duhamel", *RUN_FLAGS, "--output-dir", "out/duhamel"])
    status |= main(["emit-plots-data", "--output-dir", "out"])
    sys.exit(status)
