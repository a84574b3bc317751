#!/usr/bin/env python3
"""Toy run of girth sampling, line graph and packing; reports inequalities only."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from flipforge.packing import pipeline_demo


@dataclass
class DemoConfig:
    b: int = 2
    r: int = 5
    q: int = 2
    t: int = 1
    seed: int = 0


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(DemoConfig()).items():
        p.add_argument(f"--{name}", type=int, default=default)
    cfg = DemoConfig(**vars(p.parse_args()))
    print(json.dumps(pipeline_demo(cfg.b, cfg.r, cfg.q, cfg.t, cfg.seed), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
