"""How fast does the X_k adversary push bicolormax's color index?

    python scripts/index_growth.py --k-min 2 --k-max 16

One row per k: presented vertices, largest index, largest a/b index, colors,
the witness the analysis extracts (X_s with s = isqrt(k_ab // 2)), whether the
witness came from a complete S-tree, and the branch mix. Large k is slow:
k=18 presents 131072 vertices (about half a minute).
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from onlinecolor.analysis import RunRecord, is_complete_s, theorem_consistency, witness_level
from onlinecolor.engines import BRANCHES, make_engine
from onlinecolor.forcing import adversary_force


@dataclass
class GrowthConfig:
    k_min: int = 2
    k_max: int = 14
    every_vertex: bool = False


def run(cfg: GrowthConfig) -> None:
    cols = ["k", "n", "max_index", "ab_index", "colors", "ok", "witness", "complete_s"] + list(BRANCHES) + ["seconds"]
    print("\t".join(cols))
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        c = make_engine("bicolormax")
        adversary_force(k, c)
        rec = RunRecord.from_colorer(c, "xk", k)
        rep = theorem_consistency(rec, every_vertex=cfg.every_vertex)
        complete = "-"
        if rep.witness is not None and rep.witness.k >= 2:
            complete = str(is_complete_s(rec, rep.witness.anchor, witness_level(rep.k_ab)))
        branches = Counter(t.branch for t in rec.traces)
        row = [k, rec.graph.n, rep.k, rep.k_ab, rep.colors, rep.ok, rep.witness and f"X{rep.witness.k}", complete]
        row += [branches[b] for b in BRANCHES] + [f"{time.perf_counter() - t0:.1f}"]
        print("\t".join(map(str, row)), flush=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=GrowthConfig.k_min)
    ap.add_argument("--k-max", type=int, default=GrowthConfig.k_max)
    ap.add_argument("--every-vertex", action="store_true", help="extract a witness from every top a-vertex")
    a = ap.parse_args()
    run(GrowthConfig(a.k_min, a.k_max, a.every_vertex))
