#!/usr/bin/env python3
"""Emit profile tables and run the closed-form identity checks."""

import sys

from kdvb_asym.cli import main

if __name__ == "__main__":
    sys.exit(main(["profiles", "--output-dir", "out/profiles"]))
