"""The algebraic chain complex obtained by applying the algebra to the cube.

Chain groups are spanned by *states*: a resolution word together with a
label ``1`` or ``X`` on every circle. Labels are stored as bits (0 for ``1``,
1 for ``X``) in circle-id order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .cube import Cube, DecoratedSaddle, SaddleKind
from .diagram import crossing_signs
from .frobenius import FrobeniusSpec, GeneratorMaps, TensorMap, generator_maps

__all__ = [
    "State",
    "Grading",
    "SparseMatrix",
    "AlgebraicComplex",
    "DSquaredResult",
    "apply_saddle",
    "build_complex",
    "verify_d_squared",
    "grade",
    "assert_graded",
    "format_state",
]


@dataclass(frozen=True, order=True)
class State:
    word: str
    labels: tuple[int, ...]

    @property
    def weight(self) -> int:
        return self.word.count("1")


@dataclass(frozen=True)
class Grading:
    hdeg: int
    qdeg: int


class SparseMatrix:
    """Column-major sparse matrix over the coefficient ring of the algebra.

    ``cols[c]`` maps row index -> nonzero entry.
    """

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [dict() for _ in range(ncols)]

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, c, col[r]

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def rows(self) -> list[dict[int, object]]:
        out: list[dict[int, object]] = [dict() for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def submatrix(self, rows: list[int], cols: list[int]) -> "SparseMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        new = []
        for c in cols:
            new.append({rpos[r]: v for r, v in self.cols[c].items() if r in rpos})
        return SparseMatrix(len(rows), len(cols), new)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for col in other.cols:
            acc: dict[int, object] = {}
            for k, v in col.items():
                for r, w in self.cols[k].items():
                    acc[r] = acc.get(r, 0) + w * v
            out.append({r: v for r, v in acc.items() if v != 0})
        return SparseMatrix(self.nrows, other.ncols, out)


@dataclass
class AlgebraicComplex:
    cube: Cube
    spec: FrobeniusSpec
    n_plus: int
    n_minus: int
    groups: dict[int, list[State]]
    differentials: dict[int, SparseMatrix]
    index: dict[int, dict[State, int]] = field(repr=False, default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def dim(self, h: int) -> int:
        return len(self.groups.get(h, ()))

    def grading(self, s: State) -> Grading:
        ones = s.labels.count(0)
        xs = len(s.labels) - ones
        return Grading(
            s.weight - self.n_minus,
            ones - xs + s.weight + self.n_plus - 2 * self.n_minus,
        )

    def differential(self, h: int) -> SparseMatrix:
        """``d^h : C^h -> C^{h+1}`` (a zero matrix outside the support)."""
        if h in self.differentials:
            return self.differentials[h]
        return SparseMatrix(self.dim(h + 1), self.dim(h))


def _local_map(s: DecoratedSaddle, g: GeneratorMaps) -> TensorMap:
    base = {SaddleKind.MERGE: g.mult, SaddleKind.SPLIT: g.comult, SaddleKind.MOBIUS: g.theta_map}[s.kind]
    R = base.ring
    I = TensorMap.identity(R)

    def phis(side: str, ids: tuple[int, ...]) -> TensorMap:
        out = None
        for cid in ids:
            f = g.phi if (side, cid) in s.phi_flags else I
            out = f if out is None else out.tensor(f)
        return out

    return (phis("target", s.target_circles) @ base @ phis("source", s.source_circles)).scale(s.sign)


def _bits_index(bits: list[int]) -> int:
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    return idx


class _SaddleAction:
    """Precomputed data to apply one saddle to states."""

    def __init__(self, cube: Cube, s: DecoratedSaddle, g: GeneratorMaps):
        self.saddle = s
        self.local = _local_map(s, g)
        self.phi = g.phi
        src, tgt = cube.resolutions[s.source], cube.resolutions[s.target]
        targets = tgt.by_key()
        involved = set(s.source_circles)
        # unaffected source circle id -> target circle id
        self.carry = {
            c.id: targets[c.key].id for c in src.circles if c.id not in involved
        }
        self.n_target = len(tgt)
        involved_t = set(s.target_circles)
        self.cylinders = sorted(
            cid for side, cid in s.phi_flags if side == "target" and cid not in involved_t
        )

    def apply(self, labels: tuple[int, ...]) -> dict[tuple[int, ...], object]:
        s = self.saddle
        col = _bits_index([labels[i - 1] for i in s.source_circles])
        base = [0] * self.n_target
        for src_id, tgt_id in self.carry.items():
            base[tgt_id - 1] = labels[src_id - 1]
        out: dict[tuple[int, ...], object] = {}
        k = len(s.target_circles)
        for row in range(2**k):
            coeff = self.local.matrix[row][col]
            if coeff == 0:
                continue
            new = list(base)
            for pos, cid in enumerate(s.target_circles):
                new[cid - 1] = (row >> (k - 1 - pos)) & 1
            out[tuple(new)] = out.get(tuple(new), 0) + coeff
        for cid in self.cylinders:
            out = _apply_one(out, cid, self.phi)
        return {key: v for key, v in out.items() if v != 0}


def _apply_one(vec: dict, cid: int, f: TensorMap) -> dict:
    out: dict = {}
    for labels, v in vec.items():
        b = labels[cid - 1]
        for row in range(2):
            coeff = f.matrix[row][b]
            if coeff:
                new = labels[: cid - 1] + (row,) + labels[cid:]
                out[new] = out.get(new, 0) + v * coeff
    return out


def apply_saddle(
    saddle: DecoratedSaddle, spec: FrobeniusSpec, state: State, cube: Cube
) -> dict[State, object]:
    """Image of one state under the saddle map, as ``{target state: coefficient}``."""
    if state.word != saddle.source:
        raise ValueError(f"state lives on {state.word}, saddle starts at {saddle.source}")
    action = _SaddleAction(cube, saddle, generator_maps(spec))
    return {State(saddle.target, k): v for k, v in action.apply(state.labels).items()}


def _states(cube: Cube, word: str) -> list[State]:
    k = len(cube.resolutions[word])
    return [
        State(word, tuple((i >> (k - 1 - p)) & 1 for p in range(k))) for i in range(2**k)
    ]


def build_complex(cube: Cube, spec: FrobeniusSpec) -> AlgebraicComplex:
    """Assemble chain groups and differentials.

    Bases are ordered by word, then by labels, both lexicographically.
    """
    signs = crossing_signs(cube.diagram)
    g = generator_maps(spec)
    R = spec.ring
    groups: dict[int, list[State]] = {}
    for w in sorted(cube.resolutions):
        groups.setdefault(w.count("1") - signs.n_minus, []).extend(_states(cube, w))
    index = {h: {s: i for i, s in enumerate(b)} for h, b in groups.items()}

    actions = {s.name: _SaddleAction(cube, s, g) for s in cube.saddles}
    differentials: dict[int, SparseMatrix] = {}
    for h in sorted(groups):
        if h + 1 not in groups:
            continue
        tgt_index = index[h + 1]
        cols = []
        for st in groups[h]:
            acc: dict[int, object] = {}
            for s in cube.saddles_from(st.word):
                for labels, v in actions[s.name].apply(st.labels).items():
                    r = tgt_index[State(s.target, labels)]
                    acc[r] = R(acc.get(r, 0) + v)
            cols.append({r: v for r, v in acc.items() if v != 0})
        differentials[h] = SparseMatrix(len(groups[h + 1]), len(groups[h]), cols)
    return AlgebraicComplex(cube, spec, signs.n_plus, signs.n_minus, groups, differentials, index)


@dataclass(frozen=True)
class DSquaredResult:
    ok: bool
    hdeg: int | None = None
    source: State | None = None
    target: State | None = None
    value: object = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "d∘d = 0"
        return (
            f"d∘d ≠ 0 at hdeg {self.hdeg}: {format_state(self.source)} -> "
            f"{self.value} · {format_state(self.target)}"
        )


def verify_d_squared(cx: AlgebraicComplex) -> DSquaredResult:
    """Check ``d^{h+1} ∘ d^h = 0`` for every ``h``; report the first failure."""
    R = cx.spec.ring
    for h in cx.degrees:
        if h + 1 not in cx.differentials or h not in cx.differentials:
            continue
        prod = cx.differentials[h + 1] @ cx.differentials[h]
        for c, col in enumerate(prod.cols):
            for r in sorted(col):
                if R(col[r]) != 0:
                    return DSquaredResult(False, h, cx.groups[h][c], cx.groups[h + 2][r], col[r])
    return DSquaredResult(True)


def grade(cx: AlgebraicComplex) -> dict[State, Grading]:
    return {s: cx.grading(s) for b in cx.groups.values() for s in b}


def assert_graded(cx: AlgebraicComplex) -> bool:
    """True iff every nonzero differential entry preserves the quantum degree."""
    for h, d in cx.differentials.items():
        for r, c, _ in d.entries():
            if cx.grading(cx.groups[h][c]).qdeg != cx.grading(cx.groups[h + 1][r]).qdeg:
                return False
    return True


def format_state(s: State | None) -> str:
    if s is None:
        return "-"
    labels = " ".join(f"{'vm' if b else 'vp'}[{i + 1}]" for i, b in enumerate(s.labels))
    return f"v[{','.join(s.word)}] {labels}".rstrip()
