#!/usr/bin/env python3
"""Run the radvel CLI from a source checkout.

Usage:
    python scripts/radvel_cli.py simulate --scene config/scene_single.json --out output/run.mmp
    python scripts/radvel_cli.py compare --velocities 0.005,0.01,0.02,0.03 --out output/compare.csv
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from radvel.cli import main

if __name__ == "__main__":
    sys.exit(main())
