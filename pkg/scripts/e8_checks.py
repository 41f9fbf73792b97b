"""Axiom checks and sample brackets in the 248-dimensional (3,9) algebra.

    python3 scripts/e8_checks.py [--samples 3] [--seed 0] [--workers 4]
"""

import argparse
import random
import time
from dataclasses import dataclass

from extalg import ExtensionAlgebra, ExteriorElement, hodge_star, make_traceless, verify_axioms
from extalg.element_io import format_algebra_element


@dataclass
class Config:
    samples: int = 3
    seed: int = 0
    workers: int = 0


def main(cfg: Config) -> None:
    alg = ExtensionAlgebra(3, 9)
    print(alg.describe())

    pt = alg.element(ExteriorElement.monomial(9, (0, 1, 2)))
    tmp = alg.bracket(pt, alg.element(hodge_star(pt.payload)))
    print("\n[e0e1e2, *(e0e1e2)] =")
    print(format_algebra_element(tmp))
    print(f"[that, e0e1e2] = {format_algebra_element(alg.bracket(tmp, pt))}")

    rng = random.Random(cfg.seed)
    a, t = alg.random_element(0, rng), alg.random_element(1, rng)
    lhs = alg.bracket(a, alg.element(hodge_star(t.payload)))
    rhs = alg.element(hodge_star(alg.bracket(alg.element(make_traceless(a.payload.T)), t).payload))
    print(f"\n[A, *T] + *[A^T, T] is zero: {(lhs + rhs).is_zero()}")

    start = time.perf_counter()
    report = verify_axioms(alg, samples=cfg.samples, seed=cfg.seed, workers=cfg.workers)
    print(f"\nseeded checks, {cfg.samples} samples per grade pair:")
    for p in report.pairs:
        print(f"  grades {p.grades}: skew {p.skew}, jacobi {p.jacobi}")
    print(f"all pass: {report.ok} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--workers", type=int, default=Config.workers)
    args = p.parse_args()
    main(Config(args.samples, args.seed, args.workers))
