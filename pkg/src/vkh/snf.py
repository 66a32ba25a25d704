"""Exact linear algebra for homology: Smith normal form and field ranks.

Matrices are accepted either as dense row lists or as any object with
``nrows``, ``ncols`` and ``entries()`` yielding ``(row, col, value)`` (for
example :class:`vkh.complex.SparseMatrix`). Internally the work is done on
sparse rows of Python integers, so intermediate growth never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

__all__ = ["SnfResult", "smith_normal_form", "rank_mod_p", "rank_over_q", "divisor_chain"]


@dataclass(frozen=True)
class SnfResult:
    """Rank and nontrivial elementary divisors ``d1 | d2 | ...`` (all > 1)."""

    rank: int
    divisors: list[int] = field(default_factory=list)


def _triples(m) -> tuple[int, int, Iterable[tuple[int, int, object]]]:
    if hasattr(m, "entries"):
        return m.nrows, m.ncols, m.entries()
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    return len(rows), ncols, ((r, c, v) for r, row in enumerate(rows) for c, v in enumerate(row))


def _sparse_rows(m, convert) -> tuple[dict[int, dict[int, object]], int]:
    nrows, ncols, triples = _triples(m)
    rows: dict[int, dict[int, object]] = {}
    for r, c, v in triples:
        v = convert(v)
        if v:
            rows.setdefault(r, {})[c] = v
    return rows, ncols


def _as_int(v) -> int:
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"non-integer entry {v}")
        return v.numerator
    return int(v)


def divisor_chain(diagonal: Iterable[int]) -> list[int]:
    """Turn the absolute diagonal of an equivalent diagonal matrix into the divisor chain."""
    d = sorted(abs(x) for x in diagonal if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return [x for x in d if x > 1]


def smith_normal_form(m) -> SnfResult:
    """Rank and elementary divisors of an integer matrix.

    Pivots are chosen with minimal absolute value, ties broken by the
    Markowitz count ``(row length - 1) * (column length - 1)``. Rows and
    columns are reduced by floor division; a nonzero remainder is smaller
    than the pivot and becomes the next pivot candidate.
    """
    rows, _ = _sparse_rows(m, _as_int)
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def set_entry(r: int, c: int, v: int) -> None:
        if v:
            rows[r][c] = v
            cols.setdefault(c, set()).add(r)
        else:
            rows[r].pop(c, None)
            cols[c].discard(r)
            if not cols[c]:
                del cols[c]

    diagonal: list[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
                    if key == (1, 0):
                        break
            if best is not None and best[0] == (1, 0):
                break
        _, r, c = best
        p = rows[r][c]
        # clear column c with row operations
        for other in sorted(cols[c] - {r}):
            q = rows[other][c] // p
            for k, v in list(rows[r].items()):
                set_entry(other, k, rows[other].get(k, 0) - q * v)
            if not rows[other]:
                del rows[other]
        if len(cols[c]) > 1:
            continue
        # column c holds only the pivot now; column operations touch row r only
        for k in list(rows[r]):
            if k != c:
                set_entry(r, k, rows[r][k] % p)
        if len(rows[r]) > 1:
            continue
        diagonal.append(abs(p))
        set_entry(r, c, 0)
        del rows[r]
    return SnfResult(len(diagonal), divisor_chain(diagonal))


def _field_rank(rows: dict[int, dict[int, object]], inverse, reduce) -> int:
    rank = 0
    pivot_rows: dict[int, dict[int, object]] = {}  # pivot column -> normalized row
    for row in rows.values():
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivot_rows:
                inv = inverse(row[c])
                pivot_rows[c] = {k: reduce(v * inv) for k, v in row.items()}
                rank += 1
                break
            f = row[c]
            for k, v in pivot_rows[c].items():
                nv = reduce(row.get(k, 0) - f * v)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def rank_mod_p(m, p: int) -> int:
    """Rank over ``Z/p`` (entries may be integers or fractions with denominators prime to p)."""

    def conv(v) -> int:
        if isinstance(v, Fraction):
            return v.numerator * pow(v.denominator, -1, p) % p
        return int(v) % p

    rows, _ = _sparse_rows(m, conv)
    return _field_rank(rows, lambda x: pow(x, -1, p), lambda x: x % p)


def rank_over_q(m) -> int:
    rows, _ = _sparse_rows(m, Fraction)
    return _field_rank(rows, lambda x: 1 / x, lambda x: x)
