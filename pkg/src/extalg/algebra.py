"""The graded algebra sl_n + Lambda^k + Lambda^{2k mod n} + ... and its bracket."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .exterior import (
    ExteriorElement,
    coordinates as ext_coordinates,
    hodge_star,
    monomial_basis,
    wedge,
)
from .rational import (
    RatMatrix,
    _from_int_array,
    _int_matmul,
    block,
    mat_rank,
    matrix_commutator,
    min_poly,
    is_squarefree,
    nullspace,
)
from .sl import TracelessMatrix, act, basis_labels, make_traceless, sl_basis, sl_coordinates

Payload = Union[TracelessMatrix, ExteriorElement]

# Prefactor of the contraction bracket Lambda^i x Lambda^{n-i} -> sl_n.
# (3,9): pinned by bracket(e0e1e2, *(e0e1e2)) = diag(-2/3 x3, 1/3 x6); with
# plain wedge and *wedge(*S, *T) products Jacobi forces this value.
# (2,4): pinned by bracket(e0e1+e2e3, e0e2+e1e3) and the reference Killing
# matrix.  When m = 2 any nonzero value gives a Lie algebra; the default
# makes |B(e_I, *e_I)| = B(E_ij, E_ji) as in (3,9), e.g. for (4,8).
CONTRACTION_SCALE: dict[tuple[int, int], Fraction] = {
    (2, 4): Fraction(2),
    (3, 9): Fraction(-1),
}
DEFAULT_CONTRACTION_SCALE = Fraction(-1)


def contraction_scale(k: int, n: int) -> Fraction:
    return CONTRACTION_SCALE.get((k, n), DEFAULT_CONTRACTION_SCALE)


@dataclass(frozen=True)
class AlgebraElement:
    grade: int
    payload: Payload

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.grade != other.grade:
            raise ValueError(f"cannot add grade {self.grade} to grade {other.grade}")
        return AlgebraElement(self.grade, _combine(self.payload, other.payload, 1))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.grade != other.grade:
            raise ValueError(f"cannot subtract grade {other.grade} from grade {self.grade}")
        return AlgebraElement(self.grade, _combine(self.payload, other.payload, -1))

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        p = self.payload
        if isinstance(p, ExteriorElement):
            return AlgebraElement(self.grade, p.scale(c))
        return AlgebraElement(self.grade, TracelessMatrix(p.scale(c).array))

    __rmul__ = scale

    def __str__(self) -> str:
        return str(self.payload)


def _combine(a: Payload, b: Payload, sign: int) -> Payload:
    if isinstance(a, ExteriorElement):
        return a + b if sign > 0 else a - b
    return TracelessMatrix((a + b if sign > 0 else a - b).array)


def contraction_matrix(s: ExteriorElement, u: ExteriorElement) -> RatMatrix:
    """n x n matrix with (p, q) entry <d s/d e_p, d u/d e_q>."""
    if s.degree != u.degree or s.n != u.n:
        raise ValueError("contraction needs elements of equal degree and dimension")
    n = s.n
    by_rest: dict[tuple[int, ...], list[tuple[int, Fraction]]] = defaultdict(list)
    for key, c in u.terms.items():
        for pos, q in enumerate(key):
            by_rest[key[:pos] + key[pos + 1 :]].append((q, -c if pos & 1 else c))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for key, c in s.terms.items():
        for pos, p in enumerate(key):
            partners = by_rest.get(key[:pos] + key[pos + 1 :])
            if not partners:
                continue
            cp = -c if pos & 1 else c
            row = rows[p]
            for q, d in partners:
                row[q] += cp * d
    return RatMatrix(rows)


@dataclass(frozen=True)
class ExtensionAlgebra:
    """Descriptor of sl_n + sum_i Lambda^{ik mod n} Q^n for 1 <= i < m.

    Grade count m = n / gcd(n, k).  The global basis is the sl_n basis
    followed by each exterior grade's lexicographic monomials.
    """

    k: int
    n: int
    m: int = field(init=False)
    grade_degrees: tuple[int, ...] = field(init=False)
    grade_dims: tuple[int, ...] = field(init=False)
    offsets: tuple[int, ...] = field(init=False)
    dim: int = field(init=False)

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.n, int)) or not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        m = self.n // math.gcd(self.n, self.k)
        degrees = (0,) + tuple(i * self.k % self.n for i in range(1, m))
        dims = (self.n * self.n - 1,) + tuple(math.comb(self.n, d) for d in degrees[1:])
        offsets = tuple(sum(dims[:g]) for g in range(m))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "grade_degrees", degrees)
        object.__setattr__(self, "grade_dims", dims)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "dim", sum(dims))

    @property
    def D(self) -> int:
        return self.dim

    def grade_range(self, g: int) -> range:
        return range(self.offsets[g], self.offsets[g] + self.grade_dims[g])

    def grade_of_degree(self, d: int) -> int:
        try:
            return self.grade_degrees.index(d, 1)
        except ValueError:
            raise ValueError(f"exterior degree {d} is not a grade of the ({self.k},{self.n}) algebra") from None

    def describe(self) -> str:
        parts = [f"sl({self.n})"] + [f"Λ^{d}" for d in self.grade_degrees[1:]]
        return f"dim {self.dim}, grades: {', '.join(parts)}"

    # --- elements ---------------------------------------------------------

    def element(self, payload: Payload | RatMatrix) -> AlgebraElement:
        if isinstance(payload, ExteriorElement):
            if payload.n != self.n:
                raise ValueError(f"element lives in Lambda(Q^{payload.n}), algebra has n={self.n}")
            return AlgebraElement(self.grade_of_degree(payload.degree), payload)
        if payload.shape != (self.n, self.n):
            raise ValueError(f"grade-0 payload must be {self.n}x{self.n}")
        if not isinstance(payload, TracelessMatrix):
            payload = TracelessMatrix(payload.array)
        return AlgebraElement(0, payload)

    def zero(self, g: int) -> AlgebraElement:
        if g == 0:
            return AlgebraElement(0, TracelessMatrix(RatMatrix.zeros(self.n, self.n).array))
        return AlgebraElement(g, ExteriorElement.zero(self.n, self.grade_degrees[g]))

    @cached_property
    def _grade_bases(self) -> tuple[tuple, ...]:
        out = [tuple(sl_basis(self.n))]
        out += [tuple(monomial_basis(d, self.n)) for d in self.grade_degrees[1:]]
        return tuple(out)

    def basis_element(self, idx: int) -> AlgebraElement:
        if not 0 <= idx < self.dim:
            raise IndexError(idx)
        g = max(h for h in range(self.m) if self.offsets[h] <= idx)
        local = idx - self.offsets[g]
        item = self._grade_bases[g][local]
        if g == 0:
            return AlgebraElement(0, item)
        return AlgebraElement(g, ExteriorElement(self.n, self.grade_degrees[g], {item: 1}))

    @cached_property
    def basis(self) -> tuple[AlgebraElement, ...]:
        return tuple(self.basis_element(i) for i in range(self.dim))

    def basis_labels(self) -> list[str]:
        labels = basis_labels(self.n)
        for g in range(1, self.m):
            labels += ["e" + "e".join(map(str, key)) for key in self._grade_bases[g]]
        return labels

    def local_coordinates(self, x: AlgebraElement) -> list[Fraction]:
        if x.grade == 0:
            return sl_coordinates(x.payload)
        return ext_coordinates(x.payload)

    def coordinates(self, x: AlgebraElement) -> list[Fraction]:
        """Global coordinate column of a homogeneous element."""
        out = [Fraction(0)] * self.dim
        out[self.offsets[x.grade] : self.offsets[x.grade] + self.grade_dims[x.grade]] = self.local_coordinates(x)
        return out

    def from_coordinates(self, vec: Sequence) -> list[AlgebraElement]:
        """Split a global coordinate vector into its homogeneous components."""
        from .sl import from_coordinates as sl_from

        if len(vec) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(vec)}")
        parts = [AlgebraElement(0, sl_from(list(vec[: self.grade_dims[0]]), self.n))]
        for g in range(1, self.m):
            r = self.grade_range(g)
            parts.append(
                AlgebraElement(g, ExteriorElement.from_coordinates(self.n, self.grade_degrees[g], list(vec[r.start : r.stop])))
            )
        return parts

    def random_element(self, g: int, rng: random.Random) -> AlgebraElement:
        """Coefficients p/q with p in [-9, 9], q in [1, 9]; grade 0 is projected traceless."""

        def coeff():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

        if g == 0:
            m = RatMatrix([[coeff() for _ in range(self.n)] for _ in range(self.n)])
            return AlgebraElement(0, make_traceless(m))
        d = self.grade_degrees[g]
        return AlgebraElement(g, ExteriorElement(self.n, d, {key: coeff() for key in self._grade_bases[g]}))

    # --- bracket ----------------------------------------------------------

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        self._check(x)
        self._check(y)
        g = (x.grade + y.grade) % self.m
        if x.grade == 0 and y.grade == 0:
            return AlgebraElement(0, TracelessMatrix(matrix_commutator(x.payload, y.payload).array))
        if x.grade == 0:
            return AlgebraElement(g, act(x.payload, y.payload))
        if y.grade == 0:
            return AlgebraElement(g, -act(y.payload, x.payload))
        return AlgebraElement(g, self._exterior_bracket(x.payload, y.payload))

    def _check(self, x: AlgebraElement) -> None:
        if not 0 <= x.grade < self.m:
            raise ValueError(f"grade {x.grade} not in the ({self.k},{self.n}) algebra")
        p = x.payload
        if x.grade == 0:
            if not isinstance(p, RatMatrix) or p.shape != (self.n, self.n):
                raise ValueError("grade-0 payload must be an n x n traceless matrix")
        elif not isinstance(p, ExteriorElement) or p.n != self.n or p.degree != self.grade_degrees[x.grade]:
            raise ValueError(f"payload does not belong to grade {x.grade} of the ({self.k},{self.n}) algebra")

    def _exterior_bracket(self, s: ExteriorElement, t: ExteriorElement) -> Payload:
        n = self.n
        i, j = s.degree, t.degree
        if i + j < n:
            return wedge(s, t)
        if i + j == n:
            return self._contract(s, t)
        return hodge_star(self._exterior_bracket(hodge_star(s), hodge_star(t)))

    def _contract(self, s: ExteriorElement, t: ExteriorElement) -> TracelessMatrix:
        # star goes on the argument of degree >= n/2; on a tie, on the second
        if 2 * t.degree >= self.n:
            m = contraction_matrix(s, hodge_star(t))
        else:
            m = contraction_matrix(t, hodge_star(s)).scale(-1)
        return TracelessMatrix(make_traceless(m).scale(contraction_scale(self.k, self.n)).array)

    # --- adjoint, Killing ------------------------------------------------

    def ad(self, x: AlgebraElement | Sequence[AlgebraElement]) -> "AdMatrix":
        """Matrix of y -> [x, y]; a list of homogeneous components is summed."""
        parts = [x] if isinstance(x, AlgebraElement) else list(x)
        cols = []
        for b in self.basis:
            col = [Fraction(0)] * self.dim
            for part in parts:
                r = self.bracket(part, b)
                if r.is_zero():
                    continue
                start = self.offsets[r.grade]
                for off, v in enumerate(self.local_coordinates(r)):
                    if v:
                        col[start + off] += v
            cols.append(col)
        return AdMatrix(RatMatrix.from_columns(cols), self)

    def killing_matrix(self) -> RatMatrix:
        """K[a, b] = trace(ad(basis a) @ ad(basis b))."""
        dim = self.dim
        ads = [self.ad(b).matrix for b in self.basis]
        ints = []
        den = 1
        for a in ads:
            ia, da = a.to_int()
            ints.append((ia, da))
            den = math.lcm(den, da)
        stack = np.empty((dim, dim * dim), dtype=object)
        stack_t = np.empty((dim, dim * dim), dtype=object)
        for idx, (ia, da) in enumerate(ints):
            scaled = ia * (den // da)
            stack[idx] = scaled.ravel()
            stack_t[idx] = scaled.T.ravel()
        prod = _int_matmul(stack, stack_t.T.copy())
        return RatMatrix._wrap(_from_int_array(prod, den * den))

    def killing_form(self, x: Sequence, y: Sequence, killing: RatMatrix | None = None) -> Fraction:
        """B(x, y) from global coordinate vectors."""
        k = killing if killing is not None else self.killing_matrix()
        kx = k.matvec(list(x))
        return sum((a * b for a, b in zip(kx, y)), Fraction(0))

    # --- derived checks ---------------------------------------------------

    def is_ad_semisimple(self, x) -> bool:
        return is_squarefree(min_poly(self.ad(x).matrix))

    def centralizer_in_grade(self, x: AlgebraElement, g: int) -> list[AlgebraElement]:
        """Basis of {v in grade g : [v, x] = 0}."""
        basis = [self.basis_element(i) for i in self.grade_range(g)]
        cols = [self.coordinates(self.bracket(b, x)) for b in basis]
        sols = nullspace(RatMatrix.from_columns(cols))
        out = []
        for vec in sols:
            acc = self.zero(g)
            for c, b in zip(vec, basis):
                if c:
                    acc = acc + b.scale(c)
            out.append(acc)
        return out




@dataclass(frozen=True)
class AdMatrix:
    matrix: RatMatrix
    algebra: ExtensionAlgebra

    def block(self, i: int, j: int, m: RatMatrix | None = None) -> RatMatrix:
        a = self.algebra
        return block(self.matrix if m is None else m, a.grade_range(i), a.grade_range(j))

    def rank(self) -> int:
        return mat_rank(self.matrix)

    def __sub__(self, other: "AdMatrix") -> RatMatrix:
        return self.matrix - other.matrix


@dataclass(frozen=True)
class BlockRankTable:
    m: int
    powers: tuple[tuple[tuple[int, ...], int], ...]  # (row-major block ranks, total)

    def block_names(self) -> list[str]:
        return [f"g{i}{j}" if self.m <= 10 else f"g{i},{j}" for i in range(self.m) for j in range(self.m)]

    def to_json(self) -> dict:
        names = self.block_names()
        return {
            "powers": [
                {"blocks": dict(zip(names, ranks)), "total": total} for ranks, total in self.powers
            ]
        }


def block_ranks(ad: AdMatrix, max_power: int | None = None) -> BlockRankTable:
    """Ranks of every grade block of ad^p for p = 1, 2, ...

    With ``max_power=None`` rows continue until the full rank repeats (the
    repeated row is kept) or hits zero, capped at the algebra dimension.
    """
    if max_power is not None and max_power < 1:
        raise ValueError("max_power must be >= 1")
    a = ad.algebra
    limit = max_power if max_power is not None else a.dim
    rows = []
    power = ad.matrix
    prev_total = None
    for p in range(1, limit + 1):
        if p > 1:
            power = power @ ad.matrix
        ranks = tuple(mat_rank(ad.block(i, j, power)) for i in range(a.m) for j in range(a.m))
        total = mat_rank(power)
        rows.append((ranks, total))
        if max_power is None and (total == 0 or total == prev_total):
            break
        prev_total = total
    return BlockRankTable(a.m, tuple(rows))


@dataclass
class PairReport:
    grades: tuple[int, int]
    skew: bool
    symmetric: bool
    jacobi: bool


@dataclass
class AxiomReport:
    k: int
    n: int
    samples: int
    seed: int
    pairs: list[PairReport]

    @property
    def skew(self) -> bool:
        return all(p.skew for p in self.pairs)

    @property
    def jacobi(self) -> bool:
        return all(p.jacobi for p in self.pairs)

    @property
    def ok(self) -> bool:
        return self.skew and self.jacobi

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "skew": self.skew,
            "jacobi": self.jacobi,
            "pairs": [
                {"grades": list(p.grades), "skew": p.skew, "symmetric": p.symmetric, "jacobi": p.jacobi}
                for p in self.pairs
            ],
        }


def check_pair(alg: ExtensionAlgebra, x: AlgebraElement, y: AlgebraElement) -> tuple[bool, bool, bool]:
    """(skew, symmetric, jacobi) for one pair of homogeneous elements."""
    xy = alg.bracket(x, y)
    yx = alg.bracket(y, x)
    skew = (xy + yx).is_zero()
    symmetric = (xy - yx).is_zero()
    lhs = alg.ad(xy).matrix
    rhs = matrix_commutator(alg.ad(x).matrix, alg.ad(y).matrix)
    return skew, symmetric, lhs == rhs


def _trial_rng(seed: int, alg: ExtensionAlgebra, gi: int, gj: int, t: int) -> random.Random:
    return random.Random(f"{seed}:{alg.k}:{alg.n}:{gi}:{gj}:{t}")


def _check_grade_pair(k: int, n: int, gi: int, gj: int, samples: int, seed: int) -> PairReport:
    alg = ExtensionAlgebra(k, n)
    skew = symmetric = jacobi = True
    for t in range(samples):
        rng = _trial_rng(seed, alg, gi, gj, t)
        x = alg.random_element(gi, rng)
        y = alg.random_element(gj, rng)
        s, sym, jac = check_pair(alg, x, y)
        skew &= s
        symmetric &= sym
        jacobi &= jac
    return PairReport((gi, gj), skew, symmetric, jacobi)


def verify_axioms(
    alg: ExtensionAlgebra,
    samples: int = 3,
    seed: int = 0,
    grade_pairs: Sequence[tuple[int, int]] | None = None,
    workers: int = 0,
) -> AxiomReport:
    """Check skew-symmetry and Jacobi on seeded random pairs of every grade pair.

    Each (grade pair, trial) gets its own PRNG, so the report does not depend
    on ``workers``; ``workers > 1`` spreads grade pairs over processes.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if grade_pairs is None:
        grade_pairs = [(i, j) for i in range(alg.m) for j in range(alg.m)]
    for gi, gj in grade_pairs:
        if not (0 <= gi < alg.m and 0 <= gj < alg.m):
            raise ValueError(f"grade pair ({gi}, {gj}) out of range for m={alg.m}")
    args = [(alg.k, alg.n, gi, gj, samples, seed) for gi, gj in grade_pairs]
    if workers > 1 and len(args) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(workers, len(args))) as pool:
            pairs = list(pool.map(_check_grade_pair, *zip(*args)))
    else:
        pairs = [_check_grade_pair(*a) for a in args]
    return AxiomReport(alg.k, alg.n, samples, seed, pairs)


def build_algebra(k: int, n: int) -> ExtensionAlgebra:
    return ExtensionAlgebra(k, n)
