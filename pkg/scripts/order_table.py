#!/usr/bin/env python3
"""Constructive order bounds for (b, r)-flip graphs, optionally built and verified."""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from math import comb

from flipforge.classifier import KNOWN_ORDER_BOUNDS, h_upper_bound, optimal_x
from flipforge.constructions import construct_rb_optimized
from flipforge.verification import verify_flip


@dataclass
class TableConfig:
    b_max: int = 8
    verify: bool = False


def rows(cfg: TableConfig):
    for b in range(3, cfg.b_max + 1):
        for r in range(b + 1, comb(b + 1, 2)):
            x = optimal_x(b, r)
            row = {"b": b, "r": r, "x0": x, "plain_order": 2 * r * (b + 1), "bound": h_upper_bound(b, r),
                   "literature": KNOWN_ORDER_BOUNDS.get((b, r), "")}
            if cfg.verify:
                g, _ = construct_rb_optimized(b, r)
                row["verdict"] = verify_flip(g).verdict
            yield row


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--b-max", type=int, default=8)
    p.add_argument("--verify", action="store_true")
    a = p.parse_args()
    out = list(rows(TableConfig(a.b_max, a.verify)))
    w = csv.DictWriter(sys.stdout, fieldnames=list(out[0]))
    w.writeheader()
    w.writerows(out)


if __name__ == "__main__":
    main()
