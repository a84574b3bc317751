#!/usr/bin/env python3
"""Recurrence predictions for the Cayley [t]-flip graphs against BFS recounts."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from flipforge.constructions import cayley_counts, construct_cayley_tflip
from flipforge.graph import closed_neighbourhood, colour_counts


@dataclass
class CayleyConfig:
    s_max: int = 3


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--s-max", type=int, default=3, help="4 builds 2^20 vertices")
    cfg = CayleyConfig(p.parse_args().s_max)
    for s in range(2, cfg.s_max + 1):
        t0 = time.perf_counter()
        g, cert = construct_cayley_tflip(s)
        for j, want in enumerate(cayley_counts(s, s - 1), start=1):
            got = colour_counts(g, closed_neighbourhood(g, 0, j))
            print(f"s={s} j={j} predicted={want} measured={got} {'ok' if got == want else 'MISMATCH'}")
        print(f"s={s} vertices={g.n} edges={g.m} seconds={time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
