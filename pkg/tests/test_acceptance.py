"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its wall time; the lines are printed
in the pytest terminal summary and when this file is run as a script.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from extalg.algebra import (
    CONTRACTION_SCALE,
    AlgebraElement,
    ExtensionAlgebra,
    block_ranks,
    build_algebra,
    check_pair,
    verify_axioms,
)
from extalg.element_io import render_block_table
from extalg.exterior import ExteriorElement, hodge_star, partial, wedge
from extalg.rational import (
    RatMatrix,
    RatPolynomial,
    char_poly,
    is_squarefree,
    mat_rank,
    matrix_commutator,
    min_poly,
)
from extalg.sl import act, make_traceless

from conftest import ACCEPTANCE_LINES

x = RatPolynomial.x()

# off-diagonal sl_4 order used by the stored fixtures: upper triangle, then lower
FIXTURE_SL4_ORDER = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (1, 0), (2, 0), (3, 0), (2, 1), (3, 1), (3, 2)]

# the seven 4-form pairs spanning a Cartan subalgebra of e7, 1-based
CARTAN_E7 = [
    ((1, 2, 3, 4), (5, 6, 7, 8)),
    ((1, 3, 5, 7), (6, 8, 2, 4)),
    ((1, 5, 6, 2), (8, 4, 7, 3)),
    ((1, 6, 8, 3), (4, 7, 5, 2)),
    ((1, 8, 4, 5), (7, 2, 6, 3)),
    ((1, 4, 7, 6), (2, 3, 8, 5)),
    ((1, 7, 2, 8), (3, 5, 4, 6)),
]


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number} {status} ({elapsed:.1f}s / {budget_s:g}s): {title}")


def ext(alg, *index_tuples):
    total = ExteriorElement.zero(alg.n, len(index_tuples[0]))
    for idx in index_tuples:
        total = total + ExteriorElement.monomial(alg.n, idx)
    return alg.element(total)


def fixture_permutation_2_4():
    sl_labels = [(i, j) for i in range(4) for j in range(4) if i != j]
    off = [3 + sl_labels.index(p) for p in FIXTURE_SL4_ORDER]
    return [0, 1, 2] + off + list(range(15, 21))


def permute(m: RatMatrix, perm) -> RatMatrix:
    return RatMatrix([[m[i, j] for j in perm] for i in perm])


def test_criterion_1_dimensions():
    with criterion(1, "dimensions 21 / 133 / 248", 1):
        assert build_algebra(2, 4).dim == 21
        assert build_algebra(4, 8).dim == 133
        assert build_algebra(3, 9).dim == 248


def test_criterion_2_killing_2_4(session_2_4):
    with criterion(2, "Killing form of (2,4): rank, symmetry, Cartan block, char poly", 10):
        alg = ExtensionAlgebra(2, 4)
        k = alg.killing_matrix()
        assert mat_rank(k) == 21
        assert k == k.T
        cartan = RatMatrix([[k[i, j] for j in range(3)] for i in range(3)])
        assert cartan == RatMatrix([[20, 10, 0], [10, 20, 10], [0, 10, 20]])
        assert permute(k, fixture_permutation_2_4()) == session_2_4["killing"]
        expected = (
            (x**2 - 40 * x + RatPolynomial([200]))
            * (x - RatPolynomial([20])) ** 4
            * (x + RatPolynomial([20])) ** 3
            * (x - RatPolynomial([10])) ** 6
            * (x + RatPolynomial([10])) ** 6
        )
        assert char_poly(k) == expected


def test_criterion_3_bracket_fixtures(session_2_4):
    with criterion(3, "bracket fixtures (2,4) and (3,9)", 5):
        assert (2, 4) in CONTRACTION_SCALE and (3, 9) in CONTRACTION_SCALE, (
            "contraction calibration for (2,4) and (3,9) is unset"
        )
        a24 = ExtensionAlgebra(2, 4)
        r = a24.bracket(ext(a24, (0, 1), (2, 3)), ext(a24, (0, 2), (1, 3)))
        assert r.grade == 0
        assert r.payload == RatMatrix([[0, 0, 0, 2], [0, 0, -2, 0], [0, -2, 0, 0], [2, 0, 0, 0]])
        ad = a24.ad(ext(a24, (0, 1), (2, 3))).matrix
        assert permute(ad, fixture_permutation_2_4()) == session_2_4["ad_x"]

        a39 = ExtensionAlgebra(3, 9)
        pt = ext(a39, (0, 1, 2))
        tmp = a39.bracket(pt, a39.element(hodge_star(pt.payload)))
        assert tmp.payload == RatMatrix.diag([Fraction(-2, 3)] * 3 + [Fraction(1, 3)] * 6)
        assert a39.bracket(tmp, pt).payload == ExteriorElement.monomial(9, (0, 1, 2), -2)


def test_criterion_4_block_ranks(session_2_4):
    with criterion(4, "block ranks, char poly and semisimplicity of ad(e0e1+e2e3)", 10):
        alg = ExtensionAlgebra(2, 4)
        ad = alg.ad(ext(alg, (0, 1), (2, 3)))
        table = block_ranks(ad, 4)
        assert table.powers == (((0, 5, 5, 0), 10), ((5, 0, 0, 5), 10)) * 2
        assert render_block_table(table) == session_2_4["block_table"]
        assert ad.rank() == 10
        expected = x**11 * (x - RatPolynomial([2])) ** 5 * (x + RatPolynomial([2])) ** 5
        assert char_poly(ad.matrix) == expected
        assert is_squarefree(min_poly(ad.matrix))


def test_criterion_5_e7_cartan():
    with criterion(5, "seven commuting rank-66 semisimple elements of (4,8)", 120):
        alg = ExtensionAlgebra(4, 8)
        ads = []
        for left, right in CARTAN_E7:
            elem = ExteriorElement.monomial(8, [i - 1 for i in left]) + ExteriorElement.monomial(8, [i - 1 for i in right])
            ad = alg.ad(alg.element(elem)).matrix
            assert mat_rank(ad) == 66
            p = char_poly(ad)
            zero_multiplicity = next(i for i, c in enumerate(p.coeffs) if c)
            assert alg.dim - zero_multiplicity == 66
            assert is_squarefree(min_poly(ad))
            ads.append(ad)
        grid = [[mat_rank(matrix_commutator(a, b)) for b in ads] for a in ads]
        assert grid == [[0] * 7 for _ in range(7)]


def test_criterion_6_axioms():
    with criterion(6, "skew + Jacobi for (2,4) and (3,9); (3,6) symmetric; traced matrix breaks Jacobi", 180):
        for k, n in [(2, 4), (3, 9)]:
            report = verify_axioms(ExtensionAlgebra(k, n), samples=3, seed=0)
            assert len(report.pairs) == ExtensionAlgebra(k, n).m ** 2
            assert report.skew and report.jacobi, report.to_json()

        a36 = ExtensionAlgebra(3, 6)
        r36 = verify_axioms(a36, samples=3, seed=0)
        assert not r36.skew and not r36.jacobi
        (p11,) = [p for p in r36.pairs if p.grades == (1, 1)]
        assert p11.symmetric and not p11.skew

        a24 = ExtensionAlgebra(2, 4)
        rng = random.Random("traced")
        traced = AlgebraElement(0, RatMatrix.identity(4) + a24.random_element(0, rng).payload)
        y = a24.random_element(1, rng)
        lhs = a24.ad(a24.bracket(traced, y)).matrix
        assert lhs != matrix_commutator(a24.ad(traced).matrix, a24.ad(y).matrix)


def test_criterion_7_star_transpose_identity():
    with criterion(7, "bracket(A, *T) + *bracket(A^T, T) = 0 in (3,9)", 30):
        alg = ExtensionAlgebra(3, 9)
        for t in range(5):
            rng = random.Random(f"ve:{t}")
            a = alg.random_element(0, rng)
            pt = alg.random_element(1, rng)
            lhs = alg.bracket(a, alg.element(hodge_star(pt.payload)))
            at = alg.element(make_traceless(a.payload.T))
            rhs = alg.element(hodge_star(alg.bracket(at, pt).payload))
            assert (lhs + rhs).is_zero()


def test_criterion_8_centralizer():
    with criterion(8, "centralizer of e0e1+e2e3 in grade 1 is its own span", 5):
        alg = ExtensionAlgebra(2, 4)
        xe = ext(alg, (0, 1), (2, 3))
        (v,) = alg.centralizer_in_grade(xe, 1)
        assert v.payload == xe.payload.scale(v.payload.terms[(0, 1)])


def _rand_ext(rng, n, d):
    keys = [tuple(sorted(rng.sample(range(n), d))) for _ in range(rng.randint(1, 4))]
    return ExteriorElement(n, d, {k: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for k in set(keys)})


def _rand_traceless(rng, n):
    return make_traceless(RatMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]))


def test_criterion_9_property_suites():
    with criterion(9, "exterior, sl action, bracket and Killing invariants on 50 seeded instances each", 120):
        instances = 50
        for t in range(instances):
            rng = random.Random(f"ext:{t}")
            n = rng.randint(2, 9)
            i = rng.randint(1, n - 1)
            j = rng.randint(1, n - i)
            s, u = _rand_ext(rng, n, i), _rand_ext(rng, n, j)
            assert wedge(s, u) == wedge(u, s).scale((-1) ** (i * j))
            assert hodge_star(hodge_star(s)) == s.scale((-1) ** (i * (n - i)))
            p = rng.randrange(n)
            leibniz = wedge(partial(s, p), u) + wedge(s, partial(u, p)).scale((-1) ** i)
            assert partial(wedge(s, u), p) == leibniz

        for t in range(instances):
            rng = random.Random(f"sl:{t}")
            n = rng.randint(2, 9)
            a, b = _rand_traceless(rng, n), _rand_traceless(rng, n)
            i = rng.randint(1, n - 1)
            j = rng.randint(0, n - i)
            s, u = _rand_ext(rng, n, i), _rand_ext(rng, n, j) if j else ExteriorElement.monomial(n, (), 1)
            assert act(matrix_commutator(a, b), s) == act(a, act(b, s)) - act(b, act(a, s))
            assert act(a, wedge(s, u)) == wedge(act(a, s), u) + wedge(s, act(a, u))

        cases = [(2, 4), (2, 5), (3, 6), (2, 6), (3, 7), (3, 9)]
        for t in range(instances):
            rng = random.Random(f"bracket:{t}")
            alg = ExtensionAlgebra(*cases[t % len(cases)])
            gi, gj = rng.randrange(alg.m), rng.randrange(alg.m)
            x1, x2, y = alg.random_element(gi, rng), alg.random_element(gi, rng), alg.random_element(gj, rng)
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            r = alg.bracket(x1 + x2.scale(c), y)
            assert r == alg.bracket(x1, y) + alg.bracket(x2, y).scale(c)
            assert r.grade == (gi + gj) % alg.m
            if alg.n <= 7:
                ad = alg.ad(y)
                for bi in range(alg.m):
                    for bj in range(alg.m):
                        if bi != (bj + gj) % alg.m:
                            assert ad.block(bi, bj).is_zero()

        a24 = ExtensionAlgebra(2, 4)
        k = a24.killing_matrix()
        for t in range(instances):
            rng = random.Random(f"killing:{t}")
            xs = [a24.random_element(rng.randrange(2), rng) for _ in range(3)]
            xy = a24.coordinates(a24.bracket(xs[0], xs[1]))
            yz = a24.coordinates(a24.bracket(xs[1], xs[2]))
            assert a24.killing_form(xy, a24.coordinates(xs[2]), k) == a24.killing_form(a24.coordinates(xs[0]), yz, k)


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
