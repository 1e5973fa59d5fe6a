"""Run a verification sweep and write JSON, CSV and a text summary side by side.

    python scripts/run_sweep.py --q-max 49 --seed 7 --workers 4 --out-dir runs/
"""
from __future__ import annotations

import argparse
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from jacobsthal.verify import CHECK_IDS, Sampling, sweep, to_csv, to_json, to_text


@dataclass
class SweepConfig:
    checks: list[str] = field(default_factory=lambda: list(CHECK_IDS))
    q_min: int = 5
    q_max: int = 49
    seed: int = 0
    samples: int | None = None
    budget: int = Sampling.budget
    aux_primes: int = 2
    workers: int = 1
    out_dir: str = "runs"


def parse_args(argv=None) -> SweepConfig:
    cfg = SweepConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in asdict(cfg).items():
        flag = "--" + name.replace("_", "-")
        if name == "checks":
            ap.add_argument(flag, default=",".join(value))
        else:
            ap.add_argument(flag, type=str if name == "out_dir" else int, default=value)
    ns = ap.parse_args(argv)
    ns.checks = [c for c in ns.checks.split(",") if c]
    return SweepConfig(**vars(ns))


def main(argv=None):
    cfg = parse_args(argv)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.time()
    result = sweep(cfg.checks, cfg.q_min, cfg.q_max,
                   Sampling(budget=cfg.budget, samples=cfg.samples, seed=cfg.seed),
                   cfg.aux_primes, cfg.workers)
    stem = f"sweep_{cfg.q_min}_{cfg.q_max}_seed{cfg.seed}"
    (out / f"{stem}.json").write_text(to_json(result))
    (out / f"{stem}.csv").write_text(to_csv(result))
    (out / f"{stem}.txt").write_text(to_text(result))
    print(to_text(result), end="")
    print(f"wrote {out / stem}.{{json,csv,txt}} in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
