"""Cube of resolutions with decorated saddles.

Every resolution is traced into v-circles. Circles are numbered by their
smallest edge label. Each circle is oriented so that it leaves its smallest
slot ``(crossing, position)`` through the smoothing arc at that slot. Every cube edge (one crossing switching 0 -> 1) becomes
a :class:`DecoratedSaddle` recording its kind, where the skew-involution Φ
has to be inserted and the sign coming from the circle numberings.

Local conventions at a crossing ``X[i,j,k,l]`` (positions 0..3):

* the 0-smoothing joins positions (0,1) and (2,3); the 1-smoothing joins
  (0,3) and (1,2);
* reference arc directions: 0 -> 1 and 2 -> 3 for the 0-smoothing,
  0 -> 3 and 2 -> 1 for the 1-smoothing. A circle whose arc runs the other
  way receives a Φ on its boundary;
* the X-marker sits on the arc through position 3 (edge ``l``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator

from .diagram import Diagram

__all__ = [
    "SaddleKind",
    "Circle",
    "Resolution",
    "DecoratedSaddle",
    "Cube",
    "CubeError",
    "words",
    "resolve",
    "classify_saddle",
    "decorations",
    "saddle_sign",
    "build_cube",
    "parse_saddle_name",
]

PAIRS = {
    "0": ((0, 1), (2, 3)),
    "1": ((0, 3), (1, 2)),
}
# (entry, exit) of each arc in its reference direction
REFERENCE = {
    "0": {(0, 1), (2, 3)},
    "1": {(0, 3), (2, 1)},
}
MARKER_POSITION = 3

Slot = tuple[int, int]


class CubeError(RuntimeError):
    """Raised when circle tracing or saddle decoration is inconsistent."""


class SaddleKind(str, Enum):
    MERGE = "merge"
    SPLIT = "split"
    MOBIUS = "mobius"


@dataclass(frozen=True)
class Circle:
    """One v-circle of a resolution.

    Attributes
    ----------
    id : int
        1-based number of the circle inside its resolution.
    edges : tuple of int
        Edge labels in traversal order.
    forward : tuple of bool
        For each entry of ``edges``, whether it is traversed along the
        diagram orientation.
    arcs : tuple of (int, int, int)
        ``(crossing, entry position, exit position)`` for every smoothing
        arc the circle passes through, in traversal order.
    """

    id: int
    edges: tuple[int, ...]
    forward: tuple[bool, ...]
    arcs: tuple[tuple[int, int, int], ...]

    @property
    def key(self) -> frozenset[int]:
        return frozenset(self.edges)

    def arcs_at(self, crossing: int) -> list[tuple[int, int]]:
        return [(a, b) for c, a, b in self.arcs if c == crossing]


@dataclass(frozen=True)
class Resolution:
    word: str
    circles: tuple[Circle, ...]

    def __len__(self) -> int:
        return len(self.circles)

    def circle(self, cid: int) -> Circle:
        for c in self.circles:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def circle_at(self, crossing: int, position: int) -> Circle:
        for c in self.circles:
            for x, a, b in c.arcs:
                if x == crossing and position in (a, b):
                    return c
        raise KeyError((crossing, position))

    def by_key(self) -> dict[frozenset[int], Circle]:
        return {c.key: c for c in self.circles}


@dataclass(frozen=True)
class DecoratedSaddle:
    """A cube edge together with everything the algebra needs.

    ``phi_flags`` holds ``(side, circle id)`` pairs; ``side`` is ``"source"``
    (Φ precomposed) or ``"target"`` (Φ postcomposed).
    """

    source: str
    target: str
    crossing: int
    kind: SaddleKind
    phi_flags: frozenset[tuple[str, int]]
    table_sign: int
    perm_sign: int
    source_circles: tuple[int, ...]
    target_circles: tuple[int, ...]

    @property
    def sign(self) -> int:
        return self.table_sign * self.perm_sign

    @property
    def name(self) -> str:
        return self.source[: self.crossing] + "*" + self.source[self.crossing + 1 :]


@dataclass(frozen=True)
class Cube:
    diagram: Diagram
    resolutions: dict[str, Resolution]
    saddles: tuple[DecoratedSaddle, ...]
    _index: dict[str, DecoratedSaddle] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s.name: s for s in self.saddles})

    @property
    def n(self) -> int:
        return self.diagram.n

    def saddle(self, name: str) -> DecoratedSaddle:
        """Look up a saddle by its name, e.g. ``"0*1"``."""
        return self._index[name]

    def saddles_from(self, word: str) -> Iterator[DecoratedSaddle]:
        for r, bit in enumerate(word):
            if bit == "0":
                yield self._index[word[:r] + "*" + word[r + 1 :]]

    def replace_saddle(self, s: DecoratedSaddle) -> "Cube":
        return Cube(
            self.diagram,
            self.resolutions,
            tuple(s if t.name == s.name else t for t in self.saddles),
        )

    def to_json(self) -> dict:
        return {
            "resolutions": {w: len(r) for w, r in self.resolutions.items()},
            "saddles": [
                {
                    "name": s.name,
                    "kind": s.kind.value,
                    "phi_flags": sorted(list(f) for f in s.phi_flags),
                    "table_sign": s.table_sign,
                    "perm_sign": s.perm_sign,
                }
                for s in self.saddles
            ],
        }


def words(n: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


def parse_saddle_name(name: str) -> tuple[str, str, int]:
    """``"0*1"`` -> (source word, target word, crossing index)."""
    if name.count("*") != 1 or set(name) - set("01*"):
        raise ValueError(f"bad saddle name {name!r}")
    r = name.index("*")
    return name.replace("*", "0"), name.replace("*", "1"), r


# Hook signature for robustness tests: given a word and the canonical circles,
# return (new id per canonical id, set of canonical ids whose orientation flips).
Relabeler = Callable[[str, tuple[Circle, ...]], tuple[dict[int, int], set[int]]]


def resolve(d: Diagram, word: str, relabel: Relabeler | None = None) -> Resolution:
    """Trace the circles of the resolution given by ``word``."""
    if len(word) != d.n:
        raise ValueError(f"word {word!r} has length {len(word)}, expected {d.n}")
    if d.n == 0:
        return Resolution(word, (Circle(1, (), (), ()),))

    partner: dict[Slot, Slot] = {}
    for c, bit in enumerate(word):
        for a, b in PAIRS[bit]:
            partner[(c, a)] = (c, b)
            partner[(c, b)] = (c, a)
    slots: dict[int, list[Slot]] = {}
    for c, x in enumerate(d.crossings):
        for p, label in enumerate(x.edges):
            slots.setdefault(label, []).append((c, p))

    def head(label: int) -> Slot:
        return next(s for s in slots[label] if d.incoming[s])

    def other_end(s: Slot, label: int) -> Slot:
        a, b = slots[label]
        return b if a == s else a

    seen: set[int] = set()
    traced: list[tuple[list[int], list[bool], list[tuple[int, int, int]]]] = []
    for start in sorted(slots):
        if start in seen:
            continue
        edges, forward, arcs = [start], [True], []
        seen.add(start)
        arrive = head(start)
        while True:
            leave = partner[arrive]
            arcs.append((arrive[0], arrive[1], leave[1]))
            label = d.crossings[leave[0]][leave[1]]
            nxt = other_end(leave, label)
            if label == start and not d.incoming[leave]:
                # back on the starting edge in the starting direction
                break
            if label in seen:
                raise CubeError(f"edge {label} visited twice while tracing {word}")
            seen.add(label)
            edges.append(label)
            forward.append(not d.incoming[leave])
            arrive = nxt
        traced.append((edges, forward, arcs))

    circles = tuple(
        _orient(Circle(n + 1, tuple(e), tuple(f), tuple(a)))
        for n, (e, f, a) in enumerate(traced)
    )
    if relabel is not None:
        circles = _apply_relabel(circles, *relabel(word, circles))
    return Resolution(word, circles)


def _reverse(c: Circle) -> Circle:
    return Circle(
        c.id,
        tuple(reversed(c.edges)),
        tuple(not f for f in reversed(c.forward)),
        tuple((x, b, a) for x, a, b in reversed(c.arcs)),
    )


def _orient(c: Circle) -> Circle:
    # canonical orientation: the arc at the smallest slot starts there
    x, a, b = min(c.arcs, key=lambda arc: (arc[0], min(arc[1], arc[2])))
    return c if a < b else _reverse(c)


def _apply_relabel(
    circles: tuple[Circle, ...], ids: dict[int, int], flips: set[int]
) -> tuple[Circle, ...]:
    if sorted(ids.values()) != list(range(1, len(circles) + 1)):
        raise ValueError("relabeling must be a permutation of the circle ids")
    out = []
    for c in circles:
        if c.id in flips:
            c = _reverse(c)
        out.append(Circle(ids[c.id], c.edges, c.forward, c.arcs))
    return tuple(sorted(out, key=lambda c: c.id))


def classify_saddle(src: Resolution, tgt: Resolution, r: int) -> SaddleKind:
    delta = len(tgt) - len(src)
    if delta == -1:
        return SaddleKind.MERGE
    if delta == 1:
        return SaddleKind.SPLIT
    if delta == 0:
        return SaddleKind.MOBIUS
    raise CubeError(f"circle count jumps by {delta} at crossing {r}")


def _against_reference(bit: str, arc: tuple[int, int]) -> bool:
    if arc in REFERENCE[bit]:
        return False
    if (arc[1], arc[0]) in REFERENCE[bit]:
        return True
    raise CubeError(f"arc {arc} is not a {bit}-smoothing arc")


def _involved(src: Resolution, tgt: Resolution, r: int) -> tuple[list[Circle], list[Circle]]:
    s = sorted({src.circle_at(r, p).id for p in range(4)})
    t = sorted({tgt.circle_at(r, p).id for p in range(4)})
    return [src.circle(i) for i in s], [tgt.circle(i) for i in t]


def decorations(src: Resolution, tgt: Resolution, r: int) -> tuple[frozenset[tuple[str, int]], int]:
    """Φ-insertion flags and table sign for an orientable saddle at crossing ``r``.

    Also covers cylinders: an unaffected circle whose orientation differs
    between the two sides carries a Φ on its target copy.
    """
    flags: set[tuple[str, int]] = set()
    for side, res in (("source", src), ("target", tgt)):
        bit = res.word[r]
        for circle in {res.circle_at(r, p).id for p in range(4)}:
            arcs = res.circle(circle).arcs_at(r)
            against = {_against_reference(bit, a) for a in arcs}
            if len(against) != 1:
                raise CubeError(
                    f"circle {circle} of {res.word} runs both ways through crossing {r}"
                )
            if against.pop():
                flags.add((side, circle))
    flags |= _cylinder_flags(src, tgt, r)
    return frozenset(flags), 1


def _cylinder_flags(src: Resolution, tgt: Resolution, r: int) -> set[tuple[str, int]]:
    flags = set()
    targets = tgt.by_key()
    for c in src.circles:
        if any(x == r for x, _, _ in c.arcs):
            continue
        t = targets[c.key]
        # compare traversal direction of the smallest edge
        e = min(c.edges)
        if c.forward[c.edges.index(e)] != t.forward[t.edges.index(e)]:
            flags.add(("target", t.id))
    return flags


def _parity(perm: dict[int, int]) -> int:
    sign, seen = 1, set()
    for start in perm:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def saddle_sign(src: Resolution, tgt: Resolution, r: int) -> int:
    """Sign of an orientable saddle from the numbering permutation.

    The side with fewer circles induces a numbering on the other side:
    unaffected circles keep their number, and of the two leftover numbers
    the circle carrying the X-marker takes the lower one.
    """
    kind = classify_saddle(src, tgt, r)
    if kind is SaddleKind.MOBIUS:
        return 1
    small, big = (tgt, src) if kind is SaddleKind.MERGE else (src, tgt)
    small_keys = small.by_key()
    induced: dict[int, int] = {}
    for c in big.circles:
        if c.key in small_keys:
            induced[c.id] = small_keys[c.key].id
    leftover = sorted(set(range(1, len(big) + 1)) - set(induced.values()))
    marked = big.circle_at(r, MARKER_POSITION).id
    active = sorted({big.circle_at(r, p).id for p in range(4)})
    if len(active) != 2 or len(leftover) != 2:
        raise CubeError(f"saddle at crossing {r} does not touch two circles")
    other = active[0] if active[1] == marked else active[1]
    induced[marked], induced[other] = leftover
    return _parity(induced)


def build_cube(d: Diagram, relabel: Relabeler | None = None) -> Cube:
    """All ``2^n`` resolutions and ``n 2^(n-1)`` decorated saddles.

    Parameters
    ----------
    d : Diagram
    relabel : callable, optional
        Replaces the canonical numbering/orientation of circles; used to test
        that the homology does not depend on these choices.
    """
    resolutions = {w: resolve(d, w, relabel) for w in words(d.n)}
    saddles = []
    for w in words(d.n):
        for r, bit in enumerate(w):
            if bit != "0":
                continue
            t = w[:r] + "1" + w[r + 1 :]
            src, tgt = resolutions[w], resolutions[t]
            kind = classify_saddle(src, tgt, r)
            s_ids, t_ids = _involved(src, tgt, r)
            if kind is SaddleKind.MOBIUS:
                flags, tsign, psign = frozenset(_cylinder_flags(src, tgt, r)), 1, 1
            else:
                flags, tsign = decorations(src, tgt, r)
                psign = saddle_sign(src, tgt, r)
            saddles.append(
                DecoratedSaddle(
                    w, t, r, kind, flags, tsign, psign,
                    tuple(c.id for c in s_ids), tuple(c.id for c in t_ids),
                )
            )
    return Cube(d, resolutions, tuple(saddles))
