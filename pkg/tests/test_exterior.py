from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation

from extalg.exterior import (
    ExteriorElement,
    coordinates,
    hodge_star,
    monomial_basis,
    pairing,
    partial,
    permutation_sign,
    sort_with_sign,
    wedge,
)

from conftest import exterior_elements

SEEDED = settings(max_examples=60, derandomize=True, deadline=None)


def mono(n, *idx, c=1):
    return ExteriorElement.monomial(n, idx, c)


@st.composite
def two_degrees(draw, n_max=9):
    n = draw(st.integers(2, n_max))
    i = draw(st.integers(0, n))
    j = draw(st.integers(0, n - i))
    return n, i, j


class TestBasics:
    def test_monomial_basis_order_and_size(self):
        assert monomial_basis(2, 4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        assert len(monomial_basis(4, 8)) == comb(8, 4) == 70

    @given(st.permutations(range(7)))
    @SEEDED
    def test_permutation_sign_matches_sympy(self, perm):
        assert permutation_sign(perm) == Permutation(list(perm)).signature()

    def test_sort_with_sign_repeat(self):
        assert sort_with_sign((2, 0, 2))[0] == 0

    def test_wedge_examples(self):
        n = 4
        assert wedge(mono(n, 1), mono(n, 0)) == mono(n, 0, 1, c=-1)
        assert wedge(mono(n, 0), mono(n, 0)).is_zero()
        assert wedge(mono(n, 0, 1), mono(n, 2, 3)) == mono(n, 0, 1, 2, 3)

    def test_wedge_degree_overflow(self):
        with pytest.raises(ValueError):
            wedge(mono(4, 0, 1, 2), mono(4, 0, 3))

    def test_partial_examples(self):
        n = 5
        assert partial(mono(n, 0, 1, 2), 1) == mono(n, 0, 2, c=-1)
        assert partial(mono(n, 0, 1, 2), 0) == mono(n, 1, 2)
        assert partial(mono(n, 0, 2), 1).is_zero()
        with pytest.raises(ValueError):
            partial(ExteriorElement.zero(n, 0), 0)

    def test_hodge_star_examples(self):
        # (2,3,0,1) is an even permutation
        assert hodge_star(mono(4, 2, 3)) == mono(4, 0, 1)
        # (1,0,2) is odd
        assert hodge_star(mono(3, 1)) == mono(3, 0, 2, c=-1)

    def test_coordinates_and_pairing(self):
        s = mono(4, 0, 1) + mono(4, 2, 3)
        assert coordinates(s) == [1, 0, 0, 0, 0, 1]
        assert pairing(s, s) == 2
        with pytest.raises(ValueError):
            pairing(mono(4, 0), s)

    def test_monomial_reorders_with_sign(self):
        assert mono(4, 2, 0) == mono(4, 0, 2, c=-1)
        assert mono(4, 1, 1).is_zero()

    def test_rejects_bad_terms(self):
        with pytest.raises(ValueError):
            ExteriorElement(3, 2, {(1, 0): Fraction(1)})
        with pytest.raises(ValueError):
            ExteriorElement(3, 2, {(0, 3): Fraction(1)})


class TestInvariants:
    @given(two_degrees().flatmap(lambda t: st.tuples(
        st.just(t), exterior_elements(t[0], t[1]), exterior_elements(t[0], t[2]))))
    @SEEDED
    def test_graded_anticommutativity(self, args):
        (n, i, j), s, t = args
        assert wedge(s, t) == wedge(t, s).scale((-1) ** (i * j))

    @given(st.integers(3, 9).flatmap(lambda n: st.tuples(
        exterior_elements(n, 1), exterior_elements(n, 1), exterior_elements(n, 1))))
    @SEEDED
    def test_associativity(self, args):
        a, b, c = args
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    @given(st.integers(1, 9).flatmap(lambda n: st.integers(0, n).flatmap(
        lambda d: exterior_elements(n, d))))
    @SEEDED
    def test_double_star_sign(self, s):
        d, n = s.degree, s.n
        assert hodge_star(hodge_star(s)) == s.scale((-1) ** (d * (n - d)))

    @given(st.integers(1, 9).flatmap(lambda n: st.integers(0, n).flatmap(
        lambda d: exterior_elements(n, d))))
    @SEEDED
    def test_star_against_volume_form(self, s):
        # s ^ *s = <s, s> * volume
        vol = ExteriorElement.monomial(s.n, range(s.n))
        assert wedge(s, hodge_star(s)) == vol.scale(pairing(s, s))

    @given(st.integers(2, 9).flatmap(lambda n: st.tuples(
        st.integers(0, n - 1), st.integers(1, n - 1)).flatmap(lambda pi: st.integers(1, n - pi[1]).flatmap(
            lambda j: st.tuples(st.just(pi[0]), exterior_elements(n, pi[1]), exterior_elements(n, j))))))
    @SEEDED
    def test_skew_leibniz(self, args):
        p, s, t = args
        lhs = partial(wedge(s, t), p)
        rhs = wedge(partial(s, p), t) + wedge(s, partial(t, p)).scale((-1) ** s.degree)
        assert lhs == rhs

    @given(st.integers(2, 9).flatmap(lambda n: st.tuples(
        st.integers(0, n - 1), st.integers(0, n - 1), st.integers(2, n).flatmap(lambda d: exterior_elements(n, d)))))
    @SEEDED
    def test_partials_anticommute(self, args):
        p, q, s = args
        assert partial(partial(s, p), q) == -partial(partial(s, q), p)

    @given(st.integers(1, 8).flatmap(lambda n: st.integers(0, n).flatmap(
        lambda d: st.tuples(exterior_elements(n, d), exterior_elements(n, d)))))
    @SEEDED
    def test_pairing_is_symmetric_and_coordinate_dot(self, args):
        s, t = args
        assert pairing(s, t) == pairing(t, s) == sum(a * b for a, b in zip(coordinates(s), coordinates(t)))

    @given(st.integers(1, 8).flatmap(lambda n: st.integers(0, n).flatmap(
        lambda d: st.tuples(exterior_elements(n, d), exterior_elements(n, d)))))
    @SEEDED
    def test_star_is_isometry(self, args):
        s, t = args
        assert pairing(hodge_star(s), hodge_star(t)) == pairing(s, t)

    @given(st.integers(1, 8).flatmap(lambda n: st.integers(0, n).flatmap(lambda d: exterior_elements(n, d))))
    @SEEDED
    def test_coordinates_round_trip(self, s):
        assert ExteriorElement.from_coordinates(s.n, s.degree, coordinates(s)) == s
