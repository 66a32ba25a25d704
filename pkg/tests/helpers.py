"""Shared helpers for the test suite."""

from __future__ import annotations

import random

from vkh.complex import build_complex
from vkh.cube import build_cube
from vkh.diagram import Diagram, parse_cd
from vkh.frobenius import GF, preset
from vkh.homology import homology, poincare_polynomial

import published


def diagram(name: str) -> Diagram:
    from vkh.diagram import gauss_to_cd, parse_gauss

    if name in published.CODES:
        return parse_cd(published.CODES[name])
    return gauss_to_cd(parse_gauss(published.GAUSS[name]))


def table(d: Diagram, theory: str = "khovanov", relabel=None):
    return homology(build_complex(build_cube(d, relabel=relabel), preset(theory)))


def poincare(d: Diagram) -> str:
    return str(poincare_polynomial(table(d)))


def shift_labels(d: Diagram, k: int) -> Diagram:
    """Move the base point of a one-component diagram ``k`` edges forward."""
    m = d.edge_count
    return Diagram.from_tuples(
        tuple((e - 1 - k) % m + 1 for e in x.edges) for x in d.crossings
    )


def random_relabeler(seed: int, flips: bool = True):
    rng = random.Random(seed)

    def relabel(word, circles):
        ids = [c.id for c in circles]
        perm = ids[:]
        rng.shuffle(perm)
        flipped = {c for c in ids if flips and rng.random() < 0.5}
        return dict(zip(ids, perm)), flipped

    return relabel


def valid_tuples(p: int) -> list[tuple[int, ...]]:
    """All valid (a, h, t, alpha, beta, gamma) over Z/p, from the closed-form solution.

    In odd characteristic 2α = 2β = 0 forces α = β = 0 and the only remaining
    relation is a h = γ. Over Z/2 (a = 1) the relations read
    αγ = βγ = 0, h = γ + α + β t and β h = 0.
    """
    out = []
    if p == 2:
        for alpha in (0, 1):
            for beta in (0, 1):
                for gamma in (0, 1):
                    for t in (0, 1):
                        if (alpha or beta) and gamma:
                            continue
                        h = (gamma + alpha + beta * t) % 2
                        if beta and h:
                            continue
                        out.append((1, h, t, alpha, beta, gamma))
        return out
    for a in range(1, p):
        for t in range(p):
            for gamma in range(p):
                h = gamma * pow(a, -1, p) % p
                out.append((a, h, t, 0, 0, gamma))
    return out


def ring(p: int):
    return GF(p)
