"""Seven 4-forms e_I + e_J in (4,8) that span a commuting family of semisimple elements.

    python3 scripts/e7_cartan.py
"""

import argparse
import time
from dataclasses import dataclass, field

from extalg import ExtensionAlgebra, ExteriorElement, char_poly, is_squarefree, mat_rank, matrix_commutator, min_poly

PAIRS = [
    ((1, 2, 3, 4), (5, 6, 7, 8)),
    ((1, 3, 5, 7), (6, 8, 2, 4)),
    ((1, 5, 6, 2), (8, 4, 7, 3)),
    ((1, 6, 8, 3), (4, 7, 5, 2)),
    ((1, 8, 4, 5), (7, 2, 6, 3)),
    ((1, 4, 7, 6), (2, 3, 8, 5)),
    ((1, 7, 2, 8), (3, 5, 4, 6)),
]


@dataclass
class Config:
    pairs: list = field(default_factory=lambda: list(PAIRS))
    one_based: bool = True


def main(cfg: Config) -> None:
    alg = ExtensionAlgebra(4, 8)
    shift = 1 if cfg.one_based else 0
    start = time.perf_counter()
    ads = []
    for left, right in cfg.pairs:
        x = ExteriorElement.monomial(8, [i - shift for i in left]) + ExteriorElement.monomial(8, [i - shift for i in right])
        ad = alg.ad(alg.element(x)).matrix
        p = char_poly(ad)
        nonzero = alg.dim - next(i for i, c in enumerate(p.coeffs) if c)
        print(f"{x}: nonzero eigenvalues {nonzero}, rank {mat_rank(ad)}, semisimple {is_squarefree(min_poly(ad))}")
        ads.append(ad)
    print("\nranks of pairwise commutators of ad matrices:")
    for a in ads:
        print(" ".join(str(mat_rank(matrix_commutator(a, b))) for b in ads))
    print(f"\n{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args()
    main(Config())
