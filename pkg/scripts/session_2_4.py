"""Walk through the (2,4) algebra: Killing form, ad(e0e1+e2e3), centralizer.

    python3 scripts/session_2_4.py [--powers 4]
"""

import argparse
from dataclasses import dataclass

from extalg import ExtensionAlgebra, block_ranks, char_poly, is_squarefree, mat_rank, min_poly
from extalg.element_io import format_algebra_element, parse_element, render_block_table


@dataclass
class Config:
    x: str = "e0*e1 + e2*e3"
    y: str = "e0*e2 + e1*e3"
    powers: int = 4


def main(cfg: Config) -> None:
    alg = ExtensionAlgebra(2, 4)
    print(alg.describe())

    k = alg.killing_matrix()
    print(f"Killing rank {mat_rank(k)}, symmetric {k == k.T}")
    print(f"Killing char poly {char_poly(k)}")

    x = parse_element(cfg.x, alg)
    ad = alg.ad(x)
    print(f"\nad({cfg.x}): rank {ad.rank()}")
    print(f"char poly {char_poly(ad.matrix)}")
    mp = min_poly(ad.matrix)
    print(f"min poly {mp} (squarefree: {is_squarefree(mp)})")
    print(render_block_table(block_ranks(ad, cfg.powers)))

    y = parse_element(cfg.y, alg)
    print(f"\n[{cfg.x}, {cfg.y}] =")
    print(format_algebra_element(alg.bracket(x, y)))

    cent = alg.centralizer_in_grade(x, 1)
    print(f"\ncentralizer of {cfg.x} in Λ^2: dimension {len(cent)}")
    for v in cent:
        print("  " + format_algebra_element(v))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--powers", type=int, default=Config.powers)
    main(Config(powers=p.parse_args().powers))
