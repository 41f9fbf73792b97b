"""sl_n: traceless matrices, their basis, and the action on exterior powers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exterior import ExteriorElement, sort_with_sign
from .rational import RatMatrix, mat_solve


class TracelessMatrix(RatMatrix):
    """A square RatMatrix with trace exactly zero."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_square():
            raise ValueError(f"traceless matrix must be square, got {self.shape}")
        if self.trace() != 0:
            raise ValueError(f"matrix has nonzero trace {self.trace()}")

    @property
    def n(self) -> int:
        return self.rows


def make_traceless(m: RatMatrix) -> TracelessMatrix:
    """Projection M -> M - (tr M / n) I."""
    if not m.is_square():
        raise ValueError(f"cannot project a non-square {m.shape} matrix")
    n = m.rows
    shift = m.trace() / n
    a = m.array.copy()
    for i in range(n):
        a[i, i] -= shift
    return TracelessMatrix(a)


def elementary(n: int, i: int, j: int) -> RatMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return RatMatrix(rows)


def basis_labels(n: int) -> list[str]:
    labels = [f"H{i}" for i in range(n - 1)]
    labels += [f"E{i}{j}" if n <= 10 else f"E{i},{j}" for i in range(n) for j in range(n) if i != j]
    return labels


def _cartan_diagonal(n: int, i: int) -> list[int]:
    sign = -1 if i & 1 else 1
    d = [0] * n
    d[i], d[i + 1] = sign, -sign
    return d


@lru_cache(maxsize=None)
def sl_basis(n: int) -> tuple[TracelessMatrix, ...]:
    """Cartan part H_i = (-1)^i (E_ii - E_{i+1,i+1}) for i < n-1, then E_ij
    (i != j) row-major.

    The alternating sign makes neighbouring Cartan elements pair positively
    under the trace form, so Killing blocks of neighbours are positive.
    """
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    out = []
    for i in range(n - 1):
        out.append(TracelessMatrix(RatMatrix.diag(_cartan_diagonal(n, i))))
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(TracelessMatrix(elementary(n, i, j)))
    return tuple(out)


@lru_cache(maxsize=None)
def _cartan_system(n: int) -> RatMatrix:
    # column i is the diagonal of H_i
    return RatMatrix.from_columns([_cartan_diagonal(n, i) for i in range(n - 1)])


@lru_cache(maxsize=None)
def _cartan_solutions(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # Cartan coordinates of diag(e_j - e_{n-1}) for j < n-1; traceless
    # diagonals are combinations of these
    system = _cartan_system(n)
    out = []
    for j in range(n - 1):
        rhs = [0] * n
        rhs[j], rhs[n - 1] = 1, -1
        out.append(tuple(mat_solve(system, rhs)))
    return tuple(out)


def sl_coordinates(m: RatMatrix) -> list[Fraction]:
    """Coordinates of a traceless matrix against :func:`sl_basis`."""
    if not m.is_square():
        raise ValueError("sl coordinates of a non-square matrix")
    if m.trace() != 0:
        raise ValueError(f"matrix has nonzero trace {m.trace()}")
    n = m.rows
    diagonal = m.array.diagonal()
    cartan = [Fraction(0)] * (n - 1)
    for dj, sol in zip(diagonal, _cartan_solutions(n)):
        if dj:
            for i, v in enumerate(sol):
                cartan[i] += dj * v
    off = [m[i, j] for i in range(n) for j in range(n) if i != j]
    return cartan + off


def from_coordinates(coords: Sequence, n: int) -> TracelessMatrix:
    if len(coords) != n * n - 1:
        raise ValueError(f"expected {n * n - 1} coordinates for sl_{n}, got {len(coords)}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        c = Fraction(coords[i])
        d = _cartan_diagonal(n, i)
        rows[i][i] += d[i] * c
        rows[i + 1][i + 1] += d[i + 1] * c
    pos = n - 1
    for i in range(n):
        for j in range(n):
            if i != j:
                rows[i][j] = Fraction(coords[pos])
                pos += 1
    return TracelessMatrix(rows)


def act(a: RatMatrix, s: ExteriorElement) -> ExteriorElement:
    """Derivation action of a matrix on an exterior element.

    Column convention: A e_j = sum_i A[i, j] e_i.
    """
    if a.rows != s.n or a.cols != s.n:
        raise ValueError(f"matrix of shape {a.shape} cannot act on Lambda(Q^{s.n})")
    n = s.n
    columns = [[(i, a[i, j]) for i in range(n) if a[i, j] != 0] for j in range(n)]
    out: dict[tuple[int, ...], Fraction] = {}
    for key, c in s.terms.items():
        for t, j in enumerate(key):
            for i, aij in columns[j]:
                if i == j:
                    out[key] = out.get(key, 0) + aij * c
                    continue
                if i in key:
                    continue
                sign, new = sort_with_sign(key[:t] + (i,) + key[t + 1 :])
                out[new] = out.get(new, 0) + sign * aij * c
    return ExteriorElement._trusted(n, s.degree, out)
