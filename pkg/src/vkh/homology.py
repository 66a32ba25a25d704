"""Homology of the algebraic complex, Poincaré/torsion polynomials and Jones.

For graded theories the differential preserves the quantum degree, so every
computation is done block by block on ``(hdeg, qdeg)``. Ungraded theories are
handled per homological degree, with the key ``(hdeg, None)``.

Over ``Z`` the torsion of ``H^h`` is read off the elementary divisors of the
incoming block ``d^{h-1}``; over a field only ranks are computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .complex import AlgebraicComplex, SparseMatrix, State, verify_d_squared
from .frobenius import QQ, ZZ, Ring, _is_prime
from .laurent import LaurentPoly2
from .snf import rank_mod_p, rank_over_q, smith_normal_form

__all__ = [
    "HomologyError",
    "HomologyEntry",
    "HomologyTable",
    "homology",
    "poincare_polynomial",
    "torsion_polynomial",
    "chain_euler_characteristic",
    "graded_euler_characteristic",
    "normalized_jones",
    "universal_coefficients_mismatches",
    "table_difference",
]

Key = tuple[int, Optional[int]]


class HomologyError(RuntimeError):
    pass


@dataclass(frozen=True)
class HomologyEntry:
    free_rank: int
    divisors: tuple[int, ...] = ()


@dataclass
class HomologyTable:
    """Homology groups keyed by ``(hdeg, qdeg)``; ``qdeg`` is ``None`` when ungraded.

    Only nonzero groups are stored.
    """

    entries: dict[Key, HomologyEntry]
    graded: bool
    coefficients: Ring = ZZ

    def __iter__(self) -> Iterator[tuple[Key, HomologyEntry]]:
        return iter(sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0)))

    def free_rank(self, h: int, q: int | None = None) -> int:
        e = self.entries.get((h, q))
        return e.free_rank if e else 0

    def divisors(self, h: int, q: int | None = None) -> tuple[int, ...]:
        e = self.entries.get((h, q))
        return e.divisors if e else ()

    def ranks_by_hdeg(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (h, _), e in self.entries.items():
            if e.free_rank:
                out[h] = out.get(h, 0) + e.free_rank
        return dict(sorted(out.items()))

    def to_json(self) -> list[dict]:
        return [
            {"hdeg": h, "qdeg": q, "rank": e.free_rank, "divisors": list(e.divisors)}
            for (h, q), e in self
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return (self.entries, self.graded, self.coefficients) == (
            other.entries,
            other.graded,
            other.coefficients,
        )


def _blocks(cx: AlgebraicComplex, graded: bool) -> dict[Key, list[int]]:
    """Basis indices of each chain group block."""
    out: dict[Key, list[int]] = {}
    for h, basis in cx.groups.items():
        for i, s in enumerate(basis):
            q = cx.grading(s).qdeg if graded else None
            out.setdefault((h, q), []).append(i)
    return out


def _coefficient_ring(cx: AlgebraicComplex, coeff: Ring | None) -> Ring:
    base = cx.spec.ring
    if coeff is None or coeff == base:
        return base
    if base == ZZ:
        return coeff
    raise HomologyError(f"cannot change coefficients from {base} to {coeff}")


def _rank(m: SparseMatrix, ring: Ring) -> int:
    if ring.kind == "Zp":
        return rank_mod_p(m, ring.p)
    if ring.kind == "Q":
        return rank_over_q(m)
    return smith_normal_form(m).rank


def homology(
    cx: AlgebraicComplex, coefficients: Ring | None = None, *, check: bool = True
) -> HomologyTable:
    """Compute the homology table of a complex.

    Parameters
    ----------
    cx
        Complex from :func:`vkh.complex.build_complex`.
    coefficients
        Optional change of coefficients; only possible from ``Z`` to ``Q`` or
        ``Z/p``. Defaults to the ring of the Frobenius algebra.
    check
        Verify ``d∘d = 0`` first and refuse the complex if it fails.

    Raises
    ------
    HomologyError
        If ``d∘d != 0`` or the coefficient change is not supported.
    """
    if check:
        res = verify_d_squared(cx)
        if not res:
            raise HomologyError(res.describe())
    ring = _coefficient_ring(cx, coefficients)
    graded = cx.spec.graded
    blocks = _blocks(cx, graded)

    def block_map(h: int, q) -> SparseMatrix | None:
        src, tgt = blocks.get((h, q)), blocks.get((h + 1, q))
        if not src or not tgt or h not in cx.differentials:
            return None
        return cx.differentials[h].submatrix(tgt, src)

    entries: dict[Key, HomologyEntry] = {}
    for (h, q), idx in blocks.items():
        d_out, d_in = block_map(h, q), block_map(h - 1, q)
        out_rank = _rank(d_out, ring) if d_out is not None else 0
        if d_in is None:
            in_rank, divisors = 0, []
        elif ring == ZZ:
            snf = smith_normal_form(d_in)
            in_rank, divisors = snf.rank, snf.divisors
        else:
            in_rank, divisors = _rank(d_in, ring), []
        free = len(idx) - out_rank - in_rank
        if free or divisors:
            entries[(h, q)] = HomologyEntry(free, tuple(divisors))
    return HomologyTable(entries, graded, ring)


def poincare_polynomial(table: HomologyTable) -> LaurentPoly2:
    """``Σ free_rank · q^qdeg t^hdeg``; ungraded tables contribute ``q^0``."""
    return LaurentPoly2(
        [((q or 0, h), e.free_rank) for (h, q), e in table.entries.items()]
    )


def torsion_polynomial(table: HomologyTable, p: int) -> LaurentPoly2:
    """``Σ #(divisors divisible by p) · q^qdeg t^hdeg``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if table.coefficients != ZZ:
        raise HomologyError("torsion needs integer coefficients")
    return LaurentPoly2(
        [((q or 0, h), sum(1 for d in e.divisors if d % p == 0)) for (h, q), e in table.entries.items()]
    )


def chain_euler_characteristic(cx: AlgebraicComplex) -> LaurentPoly2:
    """``Σ (-1)^hdeg q^qdeg`` over the chain-group bases."""
    terms = []
    for h, basis in cx.groups.items():
        for s in basis:
            terms.append(((cx.grading(s).qdeg, 0), (-1) ** abs(h)))
    return LaurentPoly2(terms)


def graded_euler_characteristic(source: HomologyTable | AlgebraicComplex) -> LaurentPoly2:
    """Euler characteristic in ``q`` of a complex or of a graded homology table."""
    if isinstance(source, AlgebraicComplex):
        return chain_euler_characteristic(source)
    if not source.graded:
        raise HomologyError("Euler characteristic in q needs a graded table")
    return poincare_polynomial(source).at_t(-1)


def normalized_jones(source: HomologyTable | AlgebraicComplex) -> LaurentPoly2:
    """Graded Euler characteristic divided exactly by ``q + 1/q``."""
    return graded_euler_characteristic(source).divide_q_plus_inverse()


def universal_coefficients_mismatches(cx: AlgebraicComplex, p: int) -> list[tuple[Key, int, int]]:
    """Compare ``Z/p`` ranks with the integral table.

    For cochain complexes ``H^h(C; Z/p) ≅ H^h ⊗ Z/p ⊕ Tor(H^{h+1}, Z/p)``, so
    the expected rank at ``(h, q)`` is ``free(h, q) + t_p(h, q) + t_p(h+1, q)``
    with ``t_p`` the number of divisors divisible by ``p``. Returns the list of
    ``(key, expected, actual)`` disagreements.
    """
    if cx.spec.ring != ZZ:
        raise HomologyError("universal coefficients check needs an integral complex")
    from .frobenius import GF

    integral = homology(cx)
    modp = homology(cx, GF(p), check=False)

    def tp(h: int, q) -> int:
        return sum(1 for d in integral.divisors(h, q) if d % p == 0)

    keys = set(integral.entries) | set(modp.entries)
    keys |= {(h - 1, q) for h, q in integral.entries}
    bad = []
    for h, q in sorted(keys, key=lambda k: (k[0], k[1] or 0)):
        expected = integral.free_rank(h, q) + tp(h, q) + tp(h + 1, q)
        actual = modp.free_rank(h, q)
        if expected != actual:
            bad.append(((h, q), expected, actual))
    return bad


def table_difference(a: HomologyTable, b: HomologyTable) -> tuple[LaurentPoly2, LaurentPoly2]:
    """Poincaré terms present only in ``a`` and only in ``b``."""
    diff = poincare_polynomial(a) - poincare_polynomial(b)
    plus = LaurentPoly2({k: v for k, v in diff.terms.items() if v > 0})
    minus = LaurentPoly2({k: -v for k, v in diff.terms.items() if v < 0})
    return plus, minus
