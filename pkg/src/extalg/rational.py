"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`.  Heavy kernels (products, rank,
Krylov reductions) clear denominators and run on Python integers held in
numpy object arrays, dropping to ``int64`` when an overflow bound proves it
safe.  Nothing here ever rounds.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

_INT64_SAFE = 2**62


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if sep and (den.strip().startswith(("-", "+")) or q <= 0):
        raise ValueError(f"denominator must be a positive integer: {text!r}")
    return Fraction(p, q)


def _lcm_of_denominators(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (v.denominator for v in values), 1)


def _to_int_array(entries: np.ndarray) -> tuple[np.ndarray, int]:
    """Return (N, d) with entries == N / d and N an object array of ints."""
    d = _lcm_of_denominators(entries.flat)
    out = np.empty(entries.shape, dtype=object)
    flat_in = entries.ravel()
    flat_out = out.ravel()
    for i, v in enumerate(flat_in):
        flat_out[i] = v.numerator * (d // v.denominator)
    return out, d


def _from_int_array(ints: np.ndarray, d: int) -> np.ndarray:
    out = np.empty(ints.shape, dtype=object)
    flat_out = out.ravel()
    for i, v in enumerate(ints.ravel()):
        flat_out[i] = Fraction(int(v), d)
    return out


def _max_abs(ints: np.ndarray) -> int:
    if ints.size == 0:
        return 0
    return max(abs(int(v)) for v in ints.flat)


def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two integer object arrays."""
    inner = a.shape[1]
    if _max_abs(a) * _max_abs(b) * max(inner, 1) < _INT64_SAFE:
        return (a.astype(np.int64) @ b.astype(np.int64)).astype(object)
    return np.dot(a, b)


class RatMatrix:
    """Immutable dense matrix of Fractions.

    ``RatMatrix([[1, 2], [3, 4]])`` or ``RatMatrix.zeros(r, c)``.  All
    arithmetic returns new matrices.
    """

    __slots__ = ("_a",)

    def __init__(self, rows, cols: int | None = None):
        if isinstance(rows, RatMatrix):
            a = rows._a
        elif isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
            a = rows.copy()
        else:
            rows = [list(r) for r in rows]
            ncols = len(rows[0]) if rows else (cols or 0)
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
            a = np.empty((len(rows), ncols), dtype=object)
            for i, r in enumerate(rows):
                for j, v in enumerate(r):
                    a[i, j] = as_rational(v)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "RatMatrix":
        m = object.__new__(cls)
        a.flags.writeable = False
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        a = np.empty((rows, cols), dtype=object)
        a.fill(Fraction(0))
        return cls._wrap(a)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        a = np.empty((n, n), dtype=object)
        a.fill(Fraction(0))
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls._wrap(a)

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        a = np.empty((n, n), dtype=object)
        a.fill(Fraction(0))
        for i, v in enumerate(values):
            a[i, i] = as_rational(v)
        return cls._wrap(a)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]]) -> "RatMatrix":
        if not columns:
            return cls.zeros(0, 0)
        a = np.empty((len(columns[0]), len(columns)), dtype=object)
        for j, col in enumerate(columns):
            a[:, j] = [as_rational(v) for v in col]
        return cls._wrap(a)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only object array view of the entries."""
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def tolist(self) -> list[list[Fraction]]:
        return self._a.tolist()

    def column(self, j: int) -> list[Fraction]:
        return list(self._a[:, j])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._a.flat)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum(self._a.diagonal(), Fraction(0))

    def transpose(self) -> "RatMatrix":
        return RatMatrix._wrap(self._a.T.copy())

    T = property(transpose)

    def to_int(self) -> tuple[np.ndarray, int]:
        return _to_int_array(self._a)

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._wrap(self._a + other._a)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._wrap(self._a - other._a)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._wrap(-self._a)

    def scale(self, c) -> "RatMatrix":
        return RatMatrix._wrap(self._a * as_rational(c))

    def __mul__(self, c) -> "RatMatrix":
        if isinstance(c, RatMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        na, da = self.to_int()
        nb, db = other.to_int()
        return RatMatrix._wrap(_from_int_array(_int_matmul(na, nb), da * db))

    def matvec(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        col = np.empty((len(v), 1), dtype=object)
        col[:, 0] = list(v)
        return (self @ RatMatrix._wrap(col)).column(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, tuple(self._a.flat)))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(v) for v in row) + "]" for row in self._a)
        return f"RatMatrix([{body}])"

    def __str__(self) -> str:
        cells = [[format_rational(v) for v in row] for row in self._a]
        if not cells or not cells[0]:
            return "| |"
        widths = [max(len(r[j]) for r in cells) for j in range(self.cols)]
        return "\n".join(
            "| " + " ".join(c.ljust(w) for c, w in zip(r, widths)) + " |" for r in cells
        )

    def power(self, p: int) -> "RatMatrix":
        if p < 0:
            raise ValueError("negative power")
        result = RatMatrix.identity(self.rows)
        base = self
        while p:
            if p & 1:
                result = result @ base
            p >>= 1
            if p:
                base = base @ base
        return result


def matrix_commutator(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if not (a.is_square() and b.is_square()) or a.shape != b.shape:
        raise ValueError(f"commutator needs square matrices of equal size, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def block(m: RatMatrix, row_range: range | tuple[int, int], col_range: range | tuple[int, int]) -> RatMatrix:
    r0, r1 = (row_range.start, row_range.stop) if isinstance(row_range, range) else row_range
    c0, c1 = (col_range.start, col_range.stop) if isinstance(col_range, range) else col_range
    if not (0 <= r0 <= r1 <= m.rows and 0 <= c0 <= c1 <= m.cols):
        raise IndexError(f"block [{r0}:{r1}, {c0}:{c1}] out of bounds for {m.shape}")
    return RatMatrix._wrap(m.array[r0:r1, c0:c1].copy())


# --- elimination -----------------------------------------------------------


def _bareiss_rank(ints: np.ndarray) -> int:
    """Rank of an integer object array by fraction-free elimination.

    Columns without a pivot are skipped; every division by the previous pivot
    stays exact because the surviving entries are minors of the input.
    """
    a = ints.copy()
    nrows, ncols = a.shape
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        if r + 1 < nrows and c + 1 < ncols:
            lower = a[r + 1 :, c + 1 :]
            a[r + 1 :, c + 1 :] = (piv * lower - np.outer(a[r + 1 :, c], a[r, c + 1 :])) // prev
        a[r + 1 :, c] = 0
        prev = piv
        r += 1
    return r


def _row_integerize(m: RatMatrix) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for i in range(m.rows):
        row = m.array[i]
        d = _lcm_of_denominators(row)
        out[i] = [v.numerator * (d // v.denominator) for v in row]
    return out


def mat_rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    ints = _row_integerize(m)
    # eliminate along the shorter side
    if m.rows > m.cols:
        ints = ints.T.copy()
    return _bareiss_rank(ints)


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and pivot columns, over Fractions."""
    a = [list(r) for r in m.tolist()]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return (RatMatrix(a, cols=ncols) if a else RatMatrix.zeros(0, ncols)), pivots


class NoSolution(Exception):
    """Raised by :func:`mat_solve` on an inconsistent system."""


def mat_solve(a: RatMatrix, b: Sequence) -> list[Fraction]:
    """Return one x with a @ x == b; raise :class:`NoSolution` if none exists.

    Free variables are set to zero.
    """
    if a.rows != len(b):
        raise ValueError(f"system has {a.rows} rows but right-hand side has {len(b)} entries")
    aug = np.empty((a.rows, a.cols + 1), dtype=object)
    aug[:, : a.cols] = a.array
    aug[:, a.cols] = [as_rational(v) for v in b]
    red, pivots = rref(RatMatrix._wrap(aug))
    if a.cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * a.cols
    for i, c in enumerate(pivots):
        x[c] = red[i, a.cols]
    return x


def nullspace(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of {x : m @ x == 0}, one free variable set to 1 per vector."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i, f]
        basis.append(v)
    return basis


# --- polynomials -----------------------------------------------------------


class RatPolynomial:
    """Univariate polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RatPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @classmethod
    def x(cls) -> "RatPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RatPolynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.lead()
        return RatPolynomial(c / lc for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RatPolynomial":
        if not isinstance(other, RatPolynomial):
            c = as_rational(other)
            return RatPolynomial(c * v for v in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RatPolynomial":
        result = RatPolynomial([1])
        for _ in range(e):
            result = result * self
        return result

    def divmod(self, other: "RatPolynomial") -> tuple["RatPolynomial", "RatPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return RatPolynomial(), self
        quot = [Fraction(0)] * dq
        lc = other.lead()
        for i in range(dq - 1, -1, -1):
            q = rem[i + other.degree] / lc
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return RatPolynomial(quot), RatPolynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "RatPolynomial":
        return RatPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: RatMatrix) -> RatMatrix:
        """Horner evaluation at a square matrix."""
        n = m.rows
        acc = RatMatrix.zeros(n, n)
        eye = RatMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def __repr__(self) -> str:
        return f"RatPolynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: RatPolynomial, b: RatPolynomial) -> RatPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_lcm(a: RatPolynomial, b: RatPolynomial) -> RatPolynomial:
    return (a * b // poly_gcd(a, b)).monic()


def is_squarefree(p: RatPolynomial) -> bool:
    if p.is_zero():
        raise ValueError("squarefree test of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


def char_poly(m: RatMatrix) -> RatPolynomial:
    """det(xI - m) by Berkowitz's division-free algorithm.

    Runs on the integer matrix N = d*m, then rescales:
    det(xI - N/d) = d^-n * det((d x) I - N).
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return RatPolynomial([1])
    a, d = m.to_int()
    # vect holds coefficients of det(xI - A_r) for the leading r x r block,
    # highest degree first
    vect = [1, -int(a[0, 0])]
    for r in range(1, n):
        row = a[r, :r]  # R
        col = a[:r, r]  # C
        leading = a[:r, :r]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        toeplitz = [1, -int(a[r, r])]
        v = col
        for _ in range(r):
            toeplitz.append(-int(np.dot(row, v)))
            v = leading.dot(v)
        # multiply lower-triangular Toeplitz (r+2 x r+1) by vect
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                s += toeplitz[i - j] * vect[j]
            new.append(s)
        vect = new
    # vect[i] is the coefficient of x^(n-i) for N; rescale by d
    coeffs = [Fraction(0)] * (n + 1)
    for i, c in enumerate(vect):
        coeffs[n - i] = Fraction(c, d**i)
    return RatPolynomial(coeffs)


def min_poly(m: RatMatrix) -> RatPolynomial:
    """Monic minimal polynomial via the first linear dependency among I, M, M^2, ...

    Powers are flattened to integer vectors and reduced against an
    incrementally maintained echelon basis.
    """
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return RatPolynomial([1])
    ints, d = m.to_int()
    # echelon rows: (pivot index, vector, combination of powers it represents)
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = np.identity(n, dtype=np.int64).astype(object)  # N^k, M^k = N^k / d^k
    for k in range(n + 1):
        vec = [Fraction(int(v), d**k) for v in power.ravel()]
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for piv, bvec, bcombo in basis:
            f = vec[piv]
            if f:
                vec = [x - f * y for x, y in zip(vec, bvec)]
                combo = [x - f * y for x, y in zip(combo, bcombo + [Fraction(0)] * (len(combo) - len(bcombo)))]
        lead = next((i for i, v in enumerate(vec) if v), None)
        if lead is None:
            return RatPolynomial(combo).monic()
        inv = 1 / vec[lead]
        basis.append((lead, [v * inv for v in vec], [c * inv for c in combo]))
        power = _int_matmul(power, ints)
    raise AssertionError("Cayley-Hamilton guarantees a dependency by degree n")


def sturm_sequence(p: RatPolynomial) -> list[RatPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RatPolynomial, lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi)."""
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p(lo) == 0 or p(hi) == 0:
        raise ValueError("interval endpoint is a root")
    seq = sturm_sequence(p)
    return _sign_changes(q(lo) for q in seq) - _sign_changes(q(hi) for q in seq)


# --- serialization ---------------------------------------------------------


def matrix_to_json(m: RatMatrix) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in m.tolist()]


def matrix_from_json(data) -> RatMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix JSON must be an array of row arrays")
    rows = []
    for r in data:
        row = []
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise ValueError(f"matrix entries must be rational strings, got {v!r}")
            row.append(parse_rational(str(v)))
        rows.append(row)
    return RatMatrix(rows)
