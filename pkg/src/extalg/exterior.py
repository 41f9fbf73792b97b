"""Homogeneous elements of the exterior algebra on Q^n.

Monomials are strictly increasing index tuples; ``(0, 2)`` is e0*e2.  An
:class:`ExteriorElement` stores only its nonzero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .rational import as_rational, format_rational

IndexSet = tuple[int, ...]


def permutation_sign(seq: Iterable[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    s = list(seq)
    inversions = 0
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


def sort_with_sign(seq: Iterable[int]) -> tuple[int, IndexSet]:
    """Return (sign, sorted tuple); sign is 0 when an index repeats."""
    s = tuple(seq)
    srt = tuple(sorted(s))
    if any(a == b for a, b in zip(srt, srt[1:])):
        return 0, srt
    return permutation_sign(s), srt


def monomial_basis(d: int, n: int) -> list[IndexSet]:
    if not 0 <= d <= n:
        raise ValueError(f"degree {d} out of range for dimension {n}")
    return list(combinations(range(n), d))


@dataclass(frozen=True)
class ExteriorElement:
    n: int
    degree: int
    terms: Mapping[IndexSet, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree <= self.n:
            raise ValueError(f"degree {self.degree} out of range for n={self.n}")
        clean = {}
        for key in sorted(self.terms):
            c = self.terms[key]
            if len(key) != self.degree:
                raise ValueError(f"monomial {key} has wrong degree (expected {self.degree})")
            if any(a >= b for a, b in zip(key, key[1:])) or any(not 0 <= i < self.n for i in key):
                raise ValueError(f"monomial {key} is not a strictly increasing index set in [0, {self.n})")
            c = as_rational(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _trusted(cls, n: int, degree: int, terms: dict) -> "ExteriorElement":
        # keys already valid index sets of the right degree
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "terms", {k: terms[k] for k in sorted(terms) if terms[k]})
        return obj

    @classmethod
    def zero(cls, n: int, degree: int) -> "ExteriorElement":
        return cls(n, degree, {})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], coeff=1) -> "ExteriorElement":
        """Signed monomial from indices in any order; repeated index gives zero."""
        idx = tuple(indices)
        sign, key = sort_with_sign(idx)
        if any(not 0 <= i < n for i in key):
            raise ValueError(f"index out of range for n={n}: {idx}")
        return cls(n, len(key), {key: sign * as_rational(coeff)} if sign else {})

    @classmethod
    def from_coordinates(cls, n: int, degree: int, coords) -> "ExteriorElement":
        basis = monomial_basis(degree, n)
        if len(coords) != len(basis):
            raise ValueError(f"expected {len(basis)} coordinates, got {len(coords)}")
        return cls(n, degree, dict(zip(basis, coords)))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "ExteriorElement") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degree")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExteriorElement._trusted(self.n, self.degree, out)

    def __neg__(self) -> "ExteriorElement":
        return ExteriorElement._trusted(self.n, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        c = as_rational(c)
        return ExteriorElement._trusted(self.n, self.degree, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, c) -> "ExteriorElement":
        if isinstance(c, ExteriorElement):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c) -> "ExteriorElement":
        return self.scale(c)

    def __xor__(self, other: "ExteriorElement") -> "ExteriorElement":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.n, self.degree, self.terms) == (other.n, other.degree, other.terms)

    def __hash__(self):
        return hash((self.n, self.degree, tuple(self.terms.items())))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"ExteriorElement(n={self.n}, {format_element(self)!r})"


def format_element(s: ExteriorElement) -> str:
    """Canonical text: lexicographic monomials, ``e0*e1 + 2/3*e2*e3``."""
    if s.is_zero():
        return "0"
    out = []
    for key, c in s.terms.items():
        mono = "*".join(f"e{i}" for i in key) if key else "1"
        mag = abs(c)
        if mag == 1 and key:
            body = mono
        elif key:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def wedge(s: ExteriorElement, t: ExteriorElement) -> ExteriorElement:
    s._check(t)
    degree = s.degree + t.degree
    if degree > s.n:
        raise ValueError(f"wedge degree {degree} exceeds ambient dimension {s.n}")
    out: dict[IndexSet, Fraction] = {}
    for i_set, a in s.terms.items():
        for j_set, b in t.terms.items():
            sign, key = sort_with_sign(i_set + j_set)
            if sign:
                out[key] = out.get(key, 0) + sign * a * b
    return ExteriorElement._trusted(s.n, degree, out)


def partial(s: ExteriorElement, p: int) -> ExteriorElement:
    """Left derivative by e_p: sign (-1)^(position of p)."""
    if not 0 <= p < s.n:
        raise ValueError(f"index {p} out of range for n={s.n}")
    if s.degree == 0:
        raise ValueError("partial derivative of a scalar")
    out = {}
    for key, c in s.terms.items():
        if p in key:
            pos = key.index(p)
            out[key[:pos] + key[pos + 1 :]] = -c if pos & 1 else c
    return ExteriorElement._trusted(s.n, s.degree - 1, out)


@lru_cache(maxsize=None)
def complement(key: IndexSet, n: int) -> IndexSet:
    present = set(key)
    return tuple(i for i in range(n) if i not in present)


@lru_cache(maxsize=None)
def star_sign(key: IndexSet, n: int) -> int:
    return permutation_sign(key + complement(key, n))


def hodge_star(s: ExteriorElement) -> ExteriorElement:
    """Star against the volume form e0*...*e_{n-1}: e_I -> sign(I|I^c) e_{I^c}."""
    out = {}
    for key, c in s.terms.items():
        comp = complement(key, s.n)
        out[comp] = star_sign(key, s.n) * c
    return ExteriorElement._trusted(s.n, s.n - s.degree, out)


def pairing(s: ExteriorElement, t: ExteriorElement) -> Fraction:
    s._check(t)
    if s.degree != t.degree:
        raise ValueError(f"pairing needs equal degrees, got {s.degree} and {t.degree}")
    if len(s.terms) > len(t.terms):
        s, t = t, s
    return sum((c * t.terms.get(k, 0) for k, c in s.terms.items()), Fraction(0))


def coordinates(s: ExteriorElement) -> list[Fraction]:
    return [s.terms.get(key, Fraction(0)) for key in monomial_basis(s.degree, s.n)]
