"""Command-line front end.

    onlinecolor run --engine bicolormax --adversary xk --k 6 --out runs/
    onlinecolor verify runs/bicolormax-xk-k6-s0.jsonl
    onlinecolor xk --k 4 --out x4.txt
    onlinecolor suite forcing
    onlinecolor chi-star --k 3

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import forcing, generators, suites, transcript
from .analysis import RunRecord, check_proper, is_pk_free, theorem_consistency
from .engines import CLI_ENGINES, make_engine
from .graph_core import bfs_two_coloring
from .solver import BudgetExceeded, SolverLimitError, online_chromatic_number
from .transcript import GameTranscript, TranscriptError, transcript_from_colorer

ADVERSARIES = ("xk", "crown", "forest", "replay", "random")
SUMMARY_FIELDS = ("engine", "adversary", "k", "n", "colors", "max_index", "seed")
P9_FREE_BY_CONSTRUCTION = ("xk", "crown")


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    engine: str
    adversary: str
    k: int
    seed: int = 0
    reps: int = 1
    out: Path | None = None
    input: Path | None = None

    def __post_init__(self) -> None:
        if self.engine not in CLI_ENGINES:
            raise UsageError(f"unknown engine {self.engine!r}; choose from {', '.join(CLI_ENGINES)}")
        if self.adversary not in ADVERSARIES:
            raise UsageError(f"unknown adversary {self.adversary!r}; choose from {', '.join(ADVERSARIES)}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must fit in 64 bits")
        if self.adversary == "replay" and self.input is None:
            raise UsageError("--adversary replay needs --input")
        if self.adversary != "replay" and self.k < 1:
            raise UsageError("--k must be >= 1")


# --- graph files ---------------------------------------------------------------


def format_graph(x: forcing.RootedBipartiteGraph) -> str:
    """``root <id>``, then ``side <id> 0`` (root side) or ``1`` per vertex, then sorted edges ``u v`` with u < v."""
    lines = [f"root {x.root}"]
    lines += [f"side {v} {0 if v in x.root_side else 1}" for v in x.vertices()]
    lines += [f"{u} {v}" for u, v in sorted(x.edges)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edges of a graph file; ``side`` lines (or edge endpoints) fix the vertex count."""
    n = 0
    edges = []
    for raw in text.splitlines():
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if parts[0] == "root":
            n = max(n, int(parts[1]) + 1)
        elif parts[0] == "side":
            n = max(n, int(parts[1]) + 1)
        elif len(parts) == 2:
            u, v = int(parts[0]), int(parts[1])
            edges.append((u, v))
            n = max(n, u + 1, v + 1)
        else:
            raise UsageError(f"cannot parse graph line {raw!r}")
    return n, edges


def load_presentation(path: Path) -> list[tuple[int, ...]]:
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return transcript.loads(text).presentation()
    n, edges = parse_graph(text)
    return transcript.presentation_from_edges(n, edges)


# --- commands ------------------------------------------------------------------


def play(config: ExperimentConfig, seed: int) -> GameTranscript:
    colorer = make_engine(config.engine, seed=seed)
    adv, k = config.adversary, config.k
    if adv == "xk":
        t = forcing.adversary_force(k, colorer)
    elif adv == "forest":
        t = forcing.forest_adversary(k, colorer)
    elif adv == "crown":
        t = forcing.crown_game(k, colorer)
    else:
        if adv == "replay":
            pres = load_presentation(config.input)
        else:
            rng = random.Random(seed)
            pres = generators.random_bipartite_presentation(k, rng.uniform(0.1, 0.7), rng, p9_free=k <= 14)
        for nbrs in pres:
            colorer.step(nbrs)
        t = transcript_from_colorer(colorer, adversary=adv, k=None if adv == "replay" else k)
    t.seed = seed
    return t


def summary_row(t: GameTranscript) -> dict:
    return {
        "engine": t.engine,
        "adversary": t.adversary,
        "k": t.k,
        "n": t.n,
        "colors": t.distinct_colors,
        "max_index": t.max_index,
        "seed": t.seed,
    }


def cmd_run(config: ExperimentConfig) -> list[dict]:
    rows = []
    out = config.out
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    for rep in range(config.reps):
        seed = (config.seed + rep) % 2**64
        t = play(config, seed)
        row = summary_row(t)
        rows.append(row)
        if out is not None:
            level = "" if t.k is None else f"-k{t.k}"
            transcript.write(t, out / f"{t.engine}-{t.adversary}{level}-s{seed}.jsonl")
            summary = out / "summary.csv"
            fresh = not summary.exists()
            with summary.open("a", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
                if fresh:
                    w.writeheader()
                w.writerow(row)
    return rows


@dataclass
class VerifyReport:
    path: str
    checks: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(v in ("pass", "skipped") for v in self.checks.values())


def cmd_verify(path: Path) -> VerifyReport:
    """Replay a transcript and re-run every applicable check; raises TranscriptError on replay mismatch."""
    t = transcript.read(path)
    run = RunRecord.from_transcript(t)
    checks = {"replay": "pass"}
    checks["proper"] = "pass" if check_proper(run.graph, run.coloring) else "fail"
    checks["bipartite"] = "pass" if bfs_two_coloring(run.graph.adj) is not None else "fail"
    if t.n <= 14 or t.adversary in P9_FREE_BY_CONSTRUCTION:
        checks["p9_free"] = "pass" if is_pk_free(run.graph, 9) else "fail"
    else:
        checks["p9_free"] = "skipped"
    if t.engine == "bicolormax":
        rep = theorem_consistency(run)
        checks["theorem"] = "pass" if rep.ok else f"fail: {rep.failure}"
    else:
        checks["theorem"] = "skipped"
    return VerifyReport(str(path), checks)


def cmd_xk(k: int, output: Path | None) -> str:
    text = format_graph(forcing.build_xk(k))
    if output is not None:
        output.write_text(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="onlinecolor", description="Online coloring of bipartite graphs: games, checks, suites.")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="play games and write transcripts plus a CSV summary")
    r.add_argument("--engine", required=True)
    r.add_argument("--adversary", required=True)
    r.add_argument("--k", type=int, default=1, help="X_k / forest level, crown pairs, or random-graph size")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--reps", type=int, default=1)
    r.add_argument("--out", type=Path)
    r.add_argument("--input", type=Path, help="presentation for --adversary replay (transcript or graph file)")

    v = sub.add_parser("verify", help="replay transcripts and check them")
    v.add_argument("transcripts", nargs="+", type=Path)

    x = sub.add_parser("xk", help="write X_k as an edge-list file")
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--out", type=Path)

    s = sub.add_parser("suite", help="run an acceptance suite")
    s.add_argument("name", help=f"one of {', '.join(suites.SUITES)}")

    c = sub.add_parser("chi-star", help="exact on-line chromatic number of a tiny graph")
    c.add_argument("--k", type=int, help="use X_k")
    c.add_argument("--input", type=Path, help="graph file")
    c.add_argument("--budget", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"onlinecolor: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "run":
        if args.reps < 1:
            raise UsageError("--reps must be >= 1")
        config = ExperimentConfig(args.engine, args.adversary, args.k, args.seed, args.reps, args.out, args.input)
        w = csv.DictWriter(sys.stdout, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
        w.writeheader()
        for row in cmd_run(config):
            w.writerow(row)
        return 0
    if args.command == "verify":
        status = 0
        for path in args.transcripts:
            try:
                rep = cmd_verify(path)
            except (TranscriptError, OSError) as exc:
                print(f"{path}: FAIL {exc}")
                status = 1
                continue
            print(f"{path}: {'PASS' if rep.ok else 'FAIL'} " + " ".join(f"{k}={v}" for k, v in rep.checks.items()))
            if not rep.ok:
                status = 1
        return status
    if args.command == "xk":
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        text = cmd_xk(args.k, args.out)
        if args.out is None:
            sys.stdout.write(text)
        return 0
    if args.command == "suite":
        if args.name not in suites.SUITES:
            raise UsageError(f"unknown suite {args.name!r}; choose from {', '.join(suites.SUITES)}")
        results = suites.run_suite(args.name)
        for r in results:
            print(r.line())
        return 0 if all(r.passed for r in results) else 1
    if args.command == "chi-star":
        if (args.k is None) == (args.input is None):
            raise UsageError("give exactly one of --k or --input")
        if args.k is not None:
            graph = forcing.build_xk(args.k).adj
        else:
            n, edges = parse_graph(args.input.read_text())
            graph = [set() for _ in range(n)]
            for a, b in edges:
                graph[a].add(b)
                graph[b].add(a)
        try:
            print(online_chromatic_number(graph, budget=args.budget))
        except SolverLimitError as exc:
            raise UsageError(str(exc)) from exc
        except BudgetExceeded as exc:
            print(f"onlinecolor: {exc}", file=sys.stderr)
            return 1
        return 0
    raise UsageError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
