"""Integer Laurent polynomials in ``q`` and ``t``.

Printing follows the style of the published tables: terms are grouped by the
power of ``t`` (``t^0`` first, then increasing), inside a group by the power
of ``q`` (``q^0`` first, then increasing), and negative powers are written as
denominators, e.g. ``1/q^3 + 1/q + 1/(q^6 t^2) + 1/(q^2 t)``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = ["LaurentPoly2", "parse_poly", "format_jones"]


class LaurentPoly2:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (qe, te), c in items:
            acc[(qe, te)] = acc.get((qe, te), 0) + c
        self.terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def monomial(cls, qe: int = 0, te: int = 0, c: int = 1) -> "LaurentPoly2":
        return cls({(qe, te): c})

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return LaurentPoly2(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in other.terms.items():
                out[(a + x, b + y)] = out.get((a + x, b + y), 0) + c * d
        return LaurentPoly2(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def invert(self) -> "LaurentPoly2":
        """Substitute ``q -> 1/q`` and ``t -> 1/t``."""
        return LaurentPoly2({(-a, -b): c for (a, b), c in self.terms.items()})

    def at_t(self, value: int) -> "LaurentPoly2":
        """Substitute ``t = value`` (``value`` is ``1`` or ``-1``)."""
        return LaurentPoly2([((a, 0), c * value ** abs(b)) for (a, b), c in self.terms.items()])

    def divide_q_plus_inverse(self) -> "LaurentPoly2":
        """Exact division by ``q + 1/q`` of a polynomial in ``q`` alone.

        Raises
        ------
        ArithmeticError
            If the division leaves a remainder or ``t`` occurs.
        """
        if any(b for _, b in self.terms):
            raise ArithmeticError("polynomial still depends on t")
        if not self.terms:
            return LaurentPoly2()
        # P / (q + 1/q) = q^(low+1) N(q) / (q^2 + 1) with N = P q^(-low)
        low = min(a for a, _ in self.terms)
        coeffs = [0] * (max(a for a, _ in self.terms) - low + 1)
        for (a, _), c in self.terms.items():
            coeffs[a - low] = c
        quot = [0] * max(len(coeffs) - 2, 0)
        for k in range(len(coeffs) - 1, 1, -1):
            c = coeffs[k]
            quot[k - 2] = c
            coeffs[k] -= c
            coeffs[k - 2] -= c
        if any(coeffs):
            raise ArithmeticError("not divisible by q + 1/q")
        return LaurentPoly2({(k + low + 1, 0): c for k, c in enumerate(quot)})

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1] != 0, kv[0][1], kv[0][0] != 0, kv[0][0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for n, ((qe, te), c) in enumerate(self.sorted_terms()):
            body = _term(abs(c), qe, te)
            if n == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly2({str(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[qe, te, c] for (qe, te), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "LaurentPoly2":
        return cls({(qe, te): c for qe, te, c in data})


def _power(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def _term(c: int, qe: int, te: int) -> str:
    num = [_power(v, e) for v, e in (("q", qe), ("t", te)) if e > 0]
    den = [_power(v, -e) for v, e in (("q", qe), ("t", te)) if e < 0]
    if not den:
        if not num:
            return str(c)
        return " ".join(([str(c)] if c != 1 else []) + num)
    if num:
        top = " ".join(num)
        if c != 1:
            top = f"({c} {top})"
    else:
        top = str(c)
    bottom = den[0] if len(den) == 1 else "(" + " ".join(den) + ")"
    return f"{top}/{bottom}"


_TERM = re.compile(r"^(\d+)?\s*(.*)$")


def parse_poly(text: str) -> LaurentPoly2:
    """Parse the printed form back into a polynomial (inverse of ``str``).

    Accepts terms like ``2``, ``q^2 t``, ``1/(q^6 t^2)``, ``t/q``, ``2/(q^4 t)``
    and ``(2 q^2)/t``, joined by `` + `` / `` - ``.
    """
    s = text.strip()
    if s == "0":
        return LaurentPoly2()
    pieces = re.split(r"\s+([+-])\s+", s)
    signs = [1]
    terms = [pieces[0]]
    for k in range(1, len(pieces), 2):
        signs.append(1 if pieces[k] == "+" else -1)
        terms.append(pieces[k + 1])
    out: dict[tuple[int, int], int] = {}
    for sign, term in zip(signs, terms):
        if term.startswith("-"):
            sign, term = -sign, term[1:].strip()
        top, _, bottom = term.partition("/")
        c, qe, te = _factors(top.strip("() "))
        _, dq, dt = _factors(bottom.strip("() ")) if bottom else (1, 0, 0)
        key = (qe - dq, te - dt)
        out[key] = out.get(key, 0) + sign * c
    return LaurentPoly2(out)


def _factors(s: str) -> tuple[int, int, int]:
    c, qe, te = 1, 0, 0
    for f in s.split():
        if f.isdigit():
            c *= int(f)
            continue
        var, _, e = f.partition("^")
        e = int(e) if e else 1
        if var == "q":
            qe += e
        elif var == "t":
            te += e
        else:
            raise ValueError(f"cannot parse factor {f!r}")
    return c, qe, te


def format_jones(p: LaurentPoly2) -> str:
    """Print a polynomial in ``q`` as ``(numerator)/q^k`` when it has negative powers."""
    if any(b for _, b in p.terms):
        raise ValueError("expected a polynomial in q only")
    if not p.terms:
        return "0"
    low = min(a for a, _ in p.terms)
    if low >= 0:
        return _ascending(p.terms)
    num = {(a - low, 0): c for (a, _), c in p.terms.items()}
    top = _ascending(num)
    if len(num) > 1:
        top = f"({top})"
    return f"{top}/{_power('q', -low)}"


def _ascending(terms: Mapping[tuple[int, int], int]) -> str:
    out = ""
    for n, ((a, _), c) in enumerate(sorted(terms.items())):
        body = _term(abs(c), a, 0)
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out
