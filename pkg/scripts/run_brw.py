"""Repeat the branching-walk experiment over many seeds and summarize coverage.

    python3 scripts/run_brw.py --runs 20 --ancestors 100000 --targets "2,0;1,1"
"""

import argparse
import json
from dataclasses import asdict, dataclass

from singwalks.green import BRWConfig, brw_simulate, parse_offspring
from singwalks.models import get_model


@dataclass
class ExperimentConfig:
    model: str = "A"
    offspring: str = "1:1/2,2:1/2"
    targets: str = "2,0;1,1"
    runs: int = 20
    ancestors: int = 100_000
    seed0: int = 1000
    horizon: int = 60
    threads: int = 1
    z_bound: float = 3.0


def run(cfg: ExperimentConfig) -> dict:
    targets = [tuple(int(v) for v in t.split(",")) for t in cfg.targets.split(";")]
    law = parse_offspring(cfg.offspring)
    per_run = []
    for r in range(cfg.runs):
        sim = BRWConfig(get_model(cfg.model), law, horizon=cfg.horizon, seed=cfg.seed0 + r,
                        ancestors=cfg.ancestors, threads=cfg.threads)
        per_run.append([e.to_json() for e in brw_simulate(sim, targets)])
    coverage = {}
    for col, t in enumerate(targets):
        zs = [row[col]["z_score"] for row in per_run]
        coverage[f"({t[0]},{t[1]})"] = {
            "exact": per_run[0][col]["exact"],
            "inside": sum(abs(z) <= cfg.z_bound for z in zs),
            "runs": cfg.runs,
            "mean_z": sum(zs) / len(zs),
        }
    return {"config": asdict(cfg), "coverage": coverage, "runs": per_run}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(ExperimentConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=type(default), default=default)
    p.add_argument("--out")
    args = vars(p.parse_args())
    out = args.pop("out")
    result = run(ExperimentConfig(**args))
    if out:
        with open(out, "w") as fh:
            json.dump(result, fh, indent=2)
    for cell, c in result["coverage"].items():
        print(f"{cell}: exact {c['exact']}, within {args['z_bound']} SE in {c['inside']}/{c['runs']} runs, "
              f"mean z {c['mean_z']:+.3f}")


if __name__ == "__main__":
    main()
