"""Colors used by each engine against each adversary, written as a CSV.

    python scripts/baseline_sweep.py --k-max 10 --out sweep.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from onlinecolor.engines import CLI_ENGINES
from onlinecolor.forcing import adversary_force, crown_game, forest_adversary

ADVERSARIES = {
    "xk": adversary_force,
    "forest": forest_adversary,
    "crown": crown_game,
}


@dataclass
class SweepConfig:
    k_max: int = 10
    out: str | None = None


def run(cfg: SweepConfig) -> None:
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["adversary", "k", "engine", "n", "colors", "max_index"])
    for adv, play in ADVERSARIES.items():
        for k in range(1, cfg.k_max + 1):
            for engine in CLI_ENGINES:
                t = play(k, engine)
                w.writerow([adv, k, engine, t.n, t.distinct_colors, t.max_index])
    if cfg.out:
        fh.close()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=SweepConfig.k_max)
    ap.add_argument("--out")
    a = ap.parse_args()
    run(SweepConfig(a.k_max, a.out))
