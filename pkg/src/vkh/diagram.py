"""Virtual link diagrams in CD (planar diagram) notation and signed Gauss codes.

A diagram is an ordered tuple of classical crossings ``X[i, j, k, l]``. The
four edge labels are listed counterclockwise starting from the incoming
understrand, so ``i -> k`` is the understrand and ``{j, l}`` the overstrand.
Virtual crossings never appear explicitly; they are implied by the way the
edges are glued.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "DiagramSyntaxError",
    "DiagramValidationError",
    "Crossing",
    "Diagram",
    "GaussLetter",
    "SignedGaussCode",
    "CrossingSigns",
    "parse_cd",
    "render_cd",
    "parse_gauss",
    "render_gauss",
    "gauss_to_cd",
    "mirror",
    "crossing_signs",
    "parse_diagram",
]


class DiagramError(ValueError):
    """Base class for malformed diagram input."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DiagramValidationError(DiagramError):
    pass


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]

    def __iter__(self):
        return iter(self.edges)

    def __getitem__(self, pos: int) -> int:
        return self.edges[pos]

    def __str__(self) -> str:
        return "X[{},{},{},{}]".format(*self.edges)


@dataclass(frozen=True)
class Diagram:
    """A validated virtual link diagram.

    Besides the crossings, validation derives the orientation data every
    later stage needs: the successor of each edge along its component and,
    for each slot ``(crossing, position)``, whether the edge enters the
    crossing there.
    """

    crossings: tuple[Crossing, ...]
    edge_count: int
    components: int
    successor: dict[int, int] = field(compare=False, repr=False)
    incoming: dict[tuple[int, int], bool] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.crossings)

    def slots_of(self, label: int) -> list[tuple[int, int]]:
        return [
            (c, p)
            for c, x in enumerate(self.crossings)
            for p in range(4)
            if x.edges[p] == label
        ]

    def __str__(self) -> str:
        return render_cd(self)

    @classmethod
    def from_tuples(cls, tuples: Iterable[Sequence[int]]) -> "Diagram":
        return _validate([Crossing(tuple(int(v) for v in t)) for t in tuples])


_CD_TOKEN = re.compile(r"\s*(CD|X|\[|\]|,|-?\d+)")


def parse_cd(text: str) -> Diagram:
    """Parse ``CD[X[a,b,c,d], ...]`` into a validated :class:`Diagram`.

    ``CD[]`` is accepted and yields the crossingless unknot diagram.
    """
    tokens: list[tuple[str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _CD_TOKEN.match(stripped, pos)
        if m is None:
            raise DiagramSyntaxError(f"unexpected character {stripped[pos]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()

    it = iter(tokens + [("<end>", len(stripped))])
    tok, where = next(it)

    def expect(value: str) -> None:
        nonlocal tok, where
        if tok != value:
            raise DiagramSyntaxError(f"expected {value!r}, found {tok!r}", where)
        tok, where = next(it)

    expect("CD")
    expect("[")
    crossings: list[Crossing] = []
    if tok != "]":
        while True:
            expect("X")
            expect("[")
            args: list[int] = []
            while True:
                if not tok.lstrip("-").isdigit():
                    raise DiagramSyntaxError(f"expected integer, found {tok!r}", where)
                args.append(int(tok))
                tok, where = next(it)
                if tok == ",":
                    tok, where = next(it)
                    continue
                break
            start = where
            expect("]")
            if len(args) != 4:
                raise DiagramSyntaxError(
                    f"crossing needs 4 edge labels, got {len(args)}", start
                )
            crossings.append(Crossing(tuple(args)))
            if tok == ",":
                tok, where = next(it)
                continue
            break
    expect("]")
    if tok != "<end>":
        raise DiagramSyntaxError(f"trailing input {tok!r}", where)
    return _validate(crossings)


def render_cd(d: Diagram) -> str:
    return "CD[" + ",".join(str(x) for x in d.crossings) + "]"


def _validate(crossings: list[Crossing]) -> Diagram:
    if not crossings:
        return Diagram((), 0, 1, {}, {})

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(crossings):
        for p, label in enumerate(x.edges):
            if label < 1:
                raise DiagramValidationError(f"edge label {label} is not positive")
            occurrences.setdefault(label, []).append((c, p))
    for label, occ in sorted(occurrences.items()):
        if len(occ) != 2:
            raise DiagramValidationError(
                f"edge label {label} used {len(occ)} times, expected exactly twice"
            )
    labels = sorted(occurrences)
    if labels != list(range(1, len(labels) + 1)):
        raise DiagramValidationError("edge labels must be exactly 1..2n")

    # Strands through a crossing join (i,k) and (j,l); components are the
    # cycles of that adjacency and must occupy consecutive label ranges.
    parent = {label: label for label in labels}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in crossings:
        for a, b in ((x[0], x[2]), (x[1], x[3])):
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for label in labels:
        groups.setdefault(find(label), []).append(label)

    successor: dict[int, int] = {}
    for members in groups.values():
        lo, hi = members[0], members[-1]
        if members != list(range(lo, hi + 1)):
            raise DiagramValidationError(
                f"component labels {members} are not a consecutive range"
            )
        for e in members:
            successor[e] = lo if e == hi else e + 1

    incoming: dict[tuple[int, int], bool] = {}
    for c, x in enumerate(crossings):
        i, j, k, l = x.edges
        if successor[i] != k:
            raise DiagramValidationError(
                f"broken successor cycle at {x}: understrand {i} -> {k}"
            )
        incoming[(c, 0)] = True
        incoming[(c, 2)] = False
    for c, x in enumerate(crossings):
        j, l = x[1], x[3]
        forward = successor[j] == l
        backward = successor[l] == j
        if not (forward or backward):
            raise DiagramValidationError(
                f"broken successor cycle at {x}: overstrand {j}, {l} not adjacent"
            )
        if forward and backward:
            # Two-edge component: use the other occurrence of j to orient.
            other = next(s for s in occurrences[j] if s != (c, 1))
            if other[1] in (0, 2):
                forward = not incoming[other]
            else:
                forward = True
        incoming[(c, 1)] = forward
        incoming[(c, 3)] = not forward

    return Diagram(
        tuple(crossings), len(labels), len(groups), successor, incoming
    )


@dataclass(frozen=True)
class GaussLetter:
    crossing: int
    over: bool
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class SignedGaussCode:
    letters: tuple[GaussLetter, ...]

    def crossing_ids(self) -> list[int]:
        return sorted({g.crossing for g in self.letters})

    def __str__(self) -> str:
        return render_gauss(self)


_GAUSS_LETTER = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(text: str) -> SignedGaussCode:
    """Parse a signed Gauss code such as ``O1-O2-U1-U2-``.

    Letters may be separated by whitespace or commas. The sign character
    follows the crossing index directly.
    """
    letters: list[GaussLetter] = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        if s[pos] in " ,\t":
            pos += 1
            continue
        m = _GAUSS_LETTER.match(s, pos)
        if m is None:
            raise DiagramSyntaxError(f"malformed Gauss letter {s[pos:pos + 4]!r}", pos)
        letters.append(
            GaussLetter(int(m.group(2)), m.group(1) == "O", 1 if m.group(3) == "+" else -1)
        )
        pos = m.end()

    seen: dict[int, list[GaussLetter]] = {}
    for g in letters:
        seen.setdefault(g.crossing, []).append(g)
    for cid, occ in seen.items():
        if len(occ) != 2 or occ[0].over == occ[1].over:
            raise DiagramValidationError(
                f"crossing {cid} must appear exactly once over and once under"
            )
        if occ[0].sign != occ[1].sign:
            raise DiagramValidationError(f"sign mismatch for crossing {cid}")
    if letters and not letters[0].over:
        raise DiagramValidationError("Gauss code has to start with an overcrossing")
    return SignedGaussCode(tuple(letters))


def render_gauss(code: SignedGaussCode) -> str:
    return "".join(str(g) for g in code.letters)


def gauss_to_cd(code: SignedGaussCode) -> Diagram:
    """Convert a single-component signed Gauss code to a CD diagram.

    Edges are numbered along the code so that edge 1 enters the first
    undercrossing; crossings are emitted in increasing id order. A ``-``
    letter puts the outgoing overstrand edge at position ``j``, a ``+``
    letter the incoming one.
    """
    letters = code.letters
    if not letters:
        return Diagram((), 0, 1, {}, {})
    m = len(letters)
    first_under = next(p for p, g in enumerate(letters) if not g.over)
    # edge arriving at letter p
    arriving = {p: (p - first_under) % m + 1 for p in range(m)}
    leaving = {p: arriving[(p + 1) % m] for p in range(m)}

    tuples = []
    for cid in code.crossing_ids():
        under = next(p for p, g in enumerate(letters) if g.crossing == cid and not g.over)
        over = next(p for p, g in enumerate(letters) if g.crossing == cid and g.over)
        i, k = arriving[under], leaving[under]
        if letters[over].sign < 0:
            j, l = leaving[over], arriving[over]
        else:
            j, l = arriving[over], leaving[over]
        tuples.append((i, j, k, l))
    return Diagram.from_tuples(tuples)


def mirror(d: Diagram) -> Diagram:
    """Reflect the diagram: every ``X[i,j,k,l]`` becomes ``X[i,l,k,j]``."""
    return Diagram.from_tuples((x[0], x[3], x[2], x[1]) for x in d.crossings)


@dataclass(frozen=True)
class CrossingSigns:
    n_plus: int
    n_minus: int
    signs: tuple[int, ...] = ()


def crossing_sign(d: Diagram, c: int) -> int:
    # Overstrand running j -> l is a negative crossing.
    return -1 if d.incoming[(c, 1)] else 1


def crossing_signs(d: Diagram) -> CrossingSigns:
    signs = tuple(crossing_sign(d, c) for c in range(d.n))
    return CrossingSigns(signs.count(1), signs.count(-1), signs)


def parse_diagram(text: str) -> Diagram:
    """Accept either notation: ``CD[...]`` or a signed Gauss code."""
    s = text.strip()
    if s.startswith("CD"):
        return parse_cd(s)
    return gauss_to_cd(parse_gauss(s))
