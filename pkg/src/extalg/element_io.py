"""Text and JSON forms of elements, matrices and block-rank tables.

Element grammar (whitespace between tokens is ignored)::

    element  := '0' | [sign] term (sign term)*
    term     := [rational ['*']] mono
    mono     := 'e' idx ('*' 'e' idx)*
    idx      := ['_'] digits
    rational := digits ['/' digits]
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AlgebraElement, BlockRankTable, ExtensionAlgebra
from .exterior import ExteriorElement, format_element, sort_with_sign
from .rational import RatMatrix, format_rational, matrix_from_json, matrix_to_json
from .sl import TracelessMatrix, make_traceless


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_DIGITS = frozenset("0123456789")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.take(ch):
            self.fail(f"expected {ch!r}")

    def digits(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _DIGITS:
            self.pos += 1
        if start == self.pos:
            self.fail("expected digits")
        return int(self.text[start : self.pos])

    def fail(self, message: str):
        found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        raise ParseError(f"{message}, found {found!r}", self.pos, self.text)


def parse_terms(text: str) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Parse to raw (coefficient, index list) terms, unsorted and uncombined."""
    if not isinstance(text, str):
        raise ParseError("expected a string", 0)
    lex = _Lexer(text)
    if lex.peek() == "0":
        save = lex.pos
        lex.digits()
        if lex.peek() == "":
            return []
        lex.pos = save
    terms = []
    sign = 1
    if lex.take("-"):
        sign = -1
    else:
        lex.take("+")
    while True:
        coeff = Fraction(sign)
        if lex.peek() in _DIGITS:
            num = lex.digits()
            den = 1
            if lex.take("/"):
                start = lex.pos
                den = lex.digits()
                if den == 0:
                    raise ParseError("zero denominator", start, text)
            coeff *= Fraction(num, den)
            lex.take("*")
        if lex.peek() != "e":
            lex.fail("expected a monomial 'e<index>'")
        indices = []
        while True:
            lex.expect("e")
            lex.take("_")
            if not (lex.pos < len(lex.text) and lex.text[lex.pos] in _DIGITS):
                lex.fail("expected an index after 'e'")
            indices.append(lex.digits())
            if lex.take("*"):
                if lex.peek() == "e":
                    continue
                lex.fail("expected 'e' after '*'")
            break
        terms.append((coeff, tuple(indices)))
        ch = lex.peek()
        if ch == "":
            return terms
        if ch == "+":
            lex.pos += 1
            sign = 1
        elif ch == "-":
            lex.pos += 1
            sign = -1
        else:
            lex.fail("expected '+', '-' or end of input")


def parse_exterior(text: str, n: int) -> dict[int, ExteriorElement]:
    """Parse and normalise, grouping terms by degree."""
    by_degree: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for coeff, idx in parse_terms(text):
        bad = [i for i in idx if i >= n]
        if bad:
            raise ValueError(f"index {bad[0]} out of range for n={n}")
        sign, key = sort_with_sign(idx)
        bucket = by_degree.setdefault(len(idx), {})
        if sign:
            bucket[key] = bucket.get(key, 0) + sign * coeff
    return {d: ExteriorElement(n, d, terms) for d, terms in by_degree.items()}


def parse_element(text: str, algebra: ExtensionAlgebra, grade: int | None = None) -> AlgebraElement:
    """Parse one homogeneous exterior element of the algebra.

    With ``grade`` given the degree must match that grade.  The zero string
    "0" needs an explicit grade.
    """
    parts = parse_exterior(text, algebra.n)
    if grade is not None and not 1 <= grade < algebra.m:
        raise ValueError(f"grade {grade} is not an exterior grade of the ({algebra.k},{algebra.n}) algebra")
    if not parts:
        if grade is None:
            raise ValueError("cannot infer the grade of '0'; pass a grade")
        return algebra.zero(grade)
    if len(parts) > 1:
        raise ValueError(f"expression mixes degrees {sorted(parts)}; expected a homogeneous element")
    ((degree, elem),) = parts.items()
    if grade is not None and degree != algebra.grade_degrees[grade]:
        raise ValueError(
            f"degree {degree} does not match grade {grade} (degree {algebra.grade_degrees[grade]})"
        )
    return AlgebraElement(algebra.grade_of_degree(degree), elem)


def parse_components(text: str, algebra: ExtensionAlgebra) -> list[AlgebraElement]:
    """Parse a possibly mixed-degree expression into homogeneous components."""
    parts = parse_exterior(text, algebra.n)
    return [AlgebraElement(algebra.grade_of_degree(d), parts[d]) for d in sorted(parts)]


def parse_matrix(json_text: str, n: int, project: bool = False) -> TracelessMatrix:
    try:
        data = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    m = matrix_from_json(data)
    if m.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {m.rows}x{m.cols}")
    if project:
        return make_traceless(m)
    if m.trace() != 0:
        raise ValueError(f"matrix has nonzero trace {format_rational(m.trace())}; use --project to make it traceless")
    return TracelessMatrix(m)


def format_algebra_element(x: AlgebraElement) -> str:
    if x.grade == 0:
        return str(x.payload)
    return format_element(x.payload)


def element_to_json(x: AlgebraElement):
    if x.grade == 0:
        return {"grade": 0, "matrix": matrix_to_json(x.payload)}
    return {"grade": x.grade, "degree": x.payload.degree, "element": format_element(x.payload)}


def render_block_table(t: BlockRankTable) -> str:
    header = t.block_names() + ["total"]
    body = [[str(r) for r in ranks] + [str(total)] for ranks, total in t.powers]
    widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
    border = "+" + "+".join("-" * w for w in widths) + "+"

    def line(cells):
        return "|" + "|".join(c.ljust(w) for c, w in zip(cells, widths)) + "|"

    out = [border, line(header), border]
    for row in body:
        out += [line(row), border]
    return "\n".join(out)


def block_table_to_json(t: BlockRankTable) -> dict:
    return t.to_json()


__all__ = [
    "ParseError",
    "parse_terms",
    "parse_exterior",
    "parse_element",
    "parse_components",
    "parse_matrix",
    "format_algebra_element",
    "element_to_json",
    "render_block_table",
    "block_table_to_json",
    "matrix_to_json",
    "matrix_from_json",
    "RatMatrix",
]
