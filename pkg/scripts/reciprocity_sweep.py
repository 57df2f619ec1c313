"""Seeded sweep of the reciprocity identity over random even forms.

    python3 scripts/reciprocity_sweep.py --pairs 500 --max-det 16 --seed 1
"""

import argparse
import random
import time
from dataclasses import dataclass

from abelian_cs import reciprocity_check
from abelian_cs.sampling import random_even_form


@dataclass(frozen=True)
class SweepConfig:
    pairs: int = 200
    max_n: int = 2
    max_det: int = 12
    seed: int = 0
    tol: float = 1e-9


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    worst, failures, terms = 0.0, 0, 0
    start = time.perf_counter()
    for _ in range(cfg.pairs):
        k = random_even_form(rng, cfg.max_n, cfg.max_det)
        l = random_even_form(rng, cfg.max_n, cfg.max_det)
        rep = reciprocity_check(k, l, tol=cfg.tol)
        worst = max(worst, rep.float_residual)
        failures += not rep.holds
        terms += rep.terms
        if not rep.holds:
            print(f"FAIL K={k.to_rows()} L={l.to_rows()} residual {rep.float_residual:.3e}")
    elapsed = time.perf_counter() - start
    print(f"{cfg.pairs} pairs, {terms} phases summed, {failures} failures, "
          f"worst residual {worst:.3e}, {elapsed:.2f}s")
    return failures


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=2)
    ap.add_argument("--max-det", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-9)
    a = ap.parse_args()
    raise SystemExit(1 if sweep(SweepConfig(a.pairs, a.max_n, a.max_det, a.seed, a.tol)) else 0)


if __name__ == "__main__":
    main()
