#!/usr/bin/env python3
"""Product-realisable c values of (r, c)-constant graphs next to the known exclusions."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from math import comb

from flipforge.factors import SpecStatus, achievable_c, spec_guaranteed


@dataclass
class SpectrumConfig:
    r_max: int = 14


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--r-max", type=int, default=14)
    cfg = SpectrumConfig(p.parse_args().r_max)
    for r in range(1, cfg.r_max + 1):
        have = set(achievable_c(r))
        excluded = {c for c in range(comb(r, 2) + 1) if spec_guaranteed(r, c) is SpecStatus.GUARANTEED_OUT}
        gaps = [c for c in range(comb(r, 2) + 1) if c not in have and c not in excluded]
        print(f"r={r:2d}  products={len(have):3d}/{comb(r, 2) + 1:3d}  excluded={sorted(excluded)}  uncovered={gaps}")


if __name__ == "__main__":
    main()
