"""Skew-extended Frobenius algebras of rank two.

The algebra is ``A = R[X]/(X^2 - t - a h X)`` with basis ``{1, X}``, together
with a skew-involution ``Φ`` and an element ``θ = α + β X``. All structure
maps are stored as exact matrices over ``R`` in the lexicographic basis of
``A^{⊗k}`` (first tensor factor most significant, ``1`` before ``X``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "Ring",
    "ZZ",
    "QQ",
    "GF",
    "parse_ring",
    "FrobeniusError",
    "FrobeniusSpec",
    "TensorMap",
    "GeneratorMaps",
    "make_spec",
    "presets",
    "preset",
    "parse_params",
    "generator_maps",
    "axiom_report",
]


class FrobeniusError(ValueError):
    """Raised when a parameter tuple violates the defining relations."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: the integers, the rationals or a prime field.

    Elements are plain Python ``int`` (``Z``, ``Z/p`` reduced mod p) or
    :class:`fractions.Fraction` (``Q``).
    """

    kind: str  # "Z", "Q" or "Zp"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zp" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Zp" else 0

    def __call__(self, x) -> int | Fraction:
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                x = x.numerator
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def is_unit(self, x) -> bool:
        x = self(x)
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inv(self, x):
        x = self(x)
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not invertible in {self}")
        if self.kind == "Z":
            return x
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def elements(self) -> list[int]:
        if self.kind != "Zp":
            raise ValueError("only finite rings can be enumerated")
        return list(range(self.p))

    def __str__(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"Z/{self.p}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Zp", p)


def parse_ring(text: str) -> Ring:
    """``z``, ``q``, ``z/5``, ``zp5`` or ``gf5`` (case-insensitive)."""
    s = text.strip().lower().replace(" ", "")
    if s in ("z", "zz", "int", "integers"):
        return ZZ
    if s in ("q", "qq", "rationals"):
        return QQ
    for prefix in ("z/", "zp", "gf", "f", "z"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return GF(int(s[len(prefix):]))
    raise ValueError(f"unknown coefficient ring {text!r}")


@dataclass(frozen=True)
class FrobeniusSpec:
    ring: Ring
    a: int | Fraction
    h: int | Fraction
    t: int | Fraction
    alpha: int | Fraction
    beta: int | Fraction
    gamma: int | Fraction
    name: str = ""

    @property
    def params(self) -> tuple:
        return (self.a, self.h, self.t, self.alpha, self.beta, self.gamma)

    @property
    def graded(self) -> bool:
        """True when every structure map is homogeneous for deg 1 = 1, deg X = -1."""
        return all(self.ring(v) == 0 for v in (self.h, self.t, self.alpha, self.beta, self.gamma))

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        vals = ", ".join(str(v) for v in self.params)
        return f"{label}({self.ring}; {vals})"


def constraint_violations(ring: Ring, a, h, t, alpha, beta, gamma) -> list[str]:
    """Names of the defining relations that fail for this tuple."""
    R = ring
    a, h, t, alpha, beta, gamma = (R(v) for v in (a, h, t, alpha, beta, gamma))
    out = []
    if not R.is_unit(a):
        out.append("a invertible")
    checks = [
        ("alpha*gamma = 0", alpha * gamma),
        ("beta*gamma = 0", beta * gamma),
        ("2*alpha = 0", 2 * alpha),
        ("2*beta = 0", 2 * beta),
        ("a*h = gamma - a*alpha^2 - a*beta^2*t", a * h - (gamma - a * alpha**2 - a * beta**2 * t)),
        ("a^2*beta^2*h = 0", a**2 * beta**2 * h),
    ]
    out.extend(name for name, value in checks if R(value) != 0)
    return out


def make_spec(
    ring: Ring, a, h, t, alpha, beta, gamma, *, name: str = "", force: bool = False
) -> FrobeniusSpec:
    """Validate a parameter tuple and return the corresponding spec.

    Parameters
    ----------
    ring : Ring
    a, h, t, alpha, beta, gamma
        Ring elements (anything the ring can coerce).
    force : bool
        Skip the relation check (``a`` must still be invertible). Only meant
        for demonstrating that invalid tuples break an axiom.

    Raises
    ------
    FrobeniusError
        If a relation fails; the message names every failed relation.
    """
    bad = constraint_violations(ring, a, h, t, alpha, beta, gamma)
    if "a invertible" in bad or (bad and not force):
        raise FrobeniusError("invalid parameters: " + "; ".join(bad))
    return FrobeniusSpec(
        ring, *(ring(v) for v in (a, h, t, alpha, beta, gamma)), name=name
    )


_PRESETS = {
    "khovanov": ("Z", 1, 0, 0, 0, 0, 0),
    "lee": ("Z", 1, 0, 1, 0, 0, 0),
    "bn1": ("z/2", 1, 1, 0, 0, 0, 1),
    "bn2": ("z/2", 1, 1, 0, 1, 0, 0),
}


def presets() -> dict[str, FrobeniusSpec]:
    return {name: preset(name) for name in _PRESETS}


def preset(name: str) -> FrobeniusSpec:
    try:
        ring, *vals = _PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown theory {name!r}; choose from {', '.join(_PRESETS)}") from None
    return make_spec(parse_ring(ring), *vals, name=name.lower())


def parse_params(text: str, *, force: bool = False) -> FrobeniusSpec:
    """Parse ``ring=z,a=1,h=0,t=0,alpha=0,beta=0,gamma=0``; omitted values are 0 (a: 1)."""
    values = {"ring": "z", "a": "1", "h": "0", "t": "0", "alpha": "0", "beta": "0", "gamma": "0"}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = part.partition("=")
        key = key.strip().lower()
        if not sep or key not in values:
            raise ValueError(f"bad parameter {part!r}")
        values[key] = val.strip()
    ring = parse_ring(values.pop("ring"))
    nums = [Fraction(values[k]) for k in ("a", "h", "t", "alpha", "beta", "gamma")]
    return make_spec(ring, *nums, name="custom", force=force)


class TensorMap:
    """A linear map ``A^{⊗n_in} -> A^{⊗n_out}`` as a dense exact matrix.

    ``matrix[row][col]`` is the coefficient of output basis element ``row``
    in the image of input basis element ``col``.
    """

    __slots__ = ("ring", "arity_in", "arity_out", "matrix")

    def __init__(self, ring: Ring, arity_in: int, arity_out: int, matrix: Sequence[Sequence]):
        rows, cols = 2**arity_out, 2**arity_in
        if len(matrix) != rows or any(len(r) != cols for r in matrix):
            raise ValueError(f"matrix shape does not match {arity_in} -> {arity_out}")
        self.ring = ring
        self.arity_in = arity_in
        self.arity_out = arity_out
        self.matrix = tuple(tuple(ring(v) for v in row) for row in matrix)

    @classmethod
    def from_images(cls, ring: Ring, arity_in: int, arity_out: int, images: Sequence[Sequence]):
        """Build from the list of images (columns) of the input basis."""
        rows = [[images[c][r] for c in range(2**arity_in)] for r in range(2**arity_out)]
        return cls(ring, arity_in, arity_out, rows)

    @classmethod
    def identity(cls, ring: Ring, k: int = 1) -> "TensorMap":
        n = 2**k
        return cls(ring, k, k, [[int(r == c) for c in range(n)] for r in range(n)])

    @classmethod
    def swap(cls, ring: Ring) -> "TensorMap":
        perm = {0: 0, 1: 2, 2: 1, 3: 3}
        return cls(ring, 2, 2, [[int(perm[c] == r) for c in range(4)] for r in range(4)])

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.matrix)

    def __matmul__(self, other: "TensorMap") -> "TensorMap":
        """Composition ``self ∘ other``."""
        if other.arity_out != self.arity_in:
            raise ValueError("arity mismatch in composition")
        n = 2**self.arity_in
        rows = [
            [sum(self.matrix[r][k] * other.matrix[k][c] for k in range(n)) for c in range(2**other.arity_in)]
            for r in range(2**self.arity_out)
        ]
        return TensorMap(self.ring, other.arity_in, self.arity_out, rows)

    def tensor(self, other: "TensorMap") -> "TensorMap":
        ci, co = 2**other.arity_in, 2**other.arity_out
        rows = [
            [
                self.matrix[r // co][c // ci] * other.matrix[r % co][c % ci]
                for c in range(2**self.arity_in * ci)
            ]
            for r in range(2**self.arity_out * co)
        ]
        return TensorMap(self.ring, self.arity_in + other.arity_in, self.arity_out + other.arity_out, rows)

    def __add__(self, other: "TensorMap") -> "TensorMap":
        self._same_shape(other)
        return TensorMap(
            self.ring, self.arity_in, self.arity_out,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
        )

    def __neg__(self) -> "TensorMap":
        return self.scale(-1)

    def __sub__(self, other: "TensorMap") -> "TensorMap":
        return self + (-other)

    def scale(self, k) -> "TensorMap":
        return TensorMap(
            self.ring, self.arity_in, self.arity_out,
            [[k * x for x in row] for row in self.matrix],
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def _same_shape(self, other: "TensorMap") -> None:
        if (self.arity_in, self.arity_out) != (other.arity_in, other.arity_out):
            raise ValueError("shape mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorMap):
            return NotImplemented
        return (self.arity_in, self.arity_out, self.matrix) == (
            other.arity_in, other.arity_out, other.matrix
        )

    def __hash__(self):
        return hash((self.arity_in, self.arity_out, self.matrix))

    def __repr__(self) -> str:
        return f"TensorMap({self.arity_in}->{self.arity_out}, {list(map(list, self.matrix))})"


def tensor_all(maps: Iterable[TensorMap]) -> TensorMap:
    maps = list(maps)
    out = maps[0]
    for m in maps[1:]:
        out = out.tensor(m)
    return out


@dataclass(frozen=True)
class GeneratorMaps:
    unit: TensorMap
    counit: TensorMap
    mult: TensorMap
    comult: TensorMap
    phi: TensorMap
    theta_map: TensorMap


def generator_maps(spec: FrobeniusSpec) -> GeneratorMaps:
    """The images of the cobordism generators ι, ε, m, Δ, Φ and ·θ."""
    R = spec.ring
    a, h, t, al, be, ga = spec.params
    ai = R.inv(a)
    unit = TensorMap.from_images(R, 0, 1, [(1, 0)])
    counit = TensorMap.from_images(R, 1, 0, [(0,), (a,)])
    mult = TensorMap.from_images(
        R, 2, 1, [(1, 0), (0, 1), (0, 1), (t, a * h)]
    )
    # basis of A⊗A: 11, 1X, X1, XX
    comult = TensorMap.from_images(
        R, 1, 2, [(-h, ai, ai, 0), (ai * t, 0, 0, ai)]
    )
    phi = TensorMap.from_images(R, 1, 1, [(1, 0), (ga, -1)])
    theta_map = TensorMap.from_images(
        R, 1, 1, [(al, be), (be * t, al + a * be * h)]
    )
    return GeneratorMaps(unit, counit, mult, comult, phi, theta_map)


def _four_tu(spec: FrobeniusSpec, g: GeneratorMaps) -> bool:
    R = spec.ring
    tube = g.comult @ g.unit  # element of A⊗A
    disc = g.unit

    def placed(i: int, j: int) -> list:
        # tube on factors i<j, discs elsewhere, as a vector in A^{⊗4}
        vec = [R(0)] * 16
        for idx in range(16):
            bits = [(idx >> (3 - k)) & 1 for k in range(4)]
            coeff = tube.matrix[2 * bits[i] + bits[j]][0]
            for k in range(4):
                if k not in (i, j):
                    coeff *= disc.matrix[bits[k]][0]
            vec[idx] = R(coeff)
        return vec

    lhs = [x + y for x, y in zip(placed(0, 1), placed(2, 3))]
    rhs = [x + y for x, y in zip(placed(0, 2), placed(1, 3))]
    return lhs == rhs


def axiom_report(spec: FrobeniusSpec) -> dict[str, bool]:
    """Check every structure identity as an exact matrix equation.

    Returns
    -------
    dict
        Axiom name -> passed. Also usable on specs built with ``force=True``.
    """
    R = spec.ring
    g = generator_maps(spec)
    I, I2 = TensorMap.identity(R), TensorMap.identity(R, 2)
    tau = TensorMap.swap(R)
    m, D, e, i, P, T = g.mult, g.comult, g.counit, g.unit, g.phi, g.theta_map

    checks: dict[str, Callable[[], bool]] = {
        "associativity": lambda: m @ m.tensor(I) == m @ I.tensor(m),
        "coassociativity": lambda: D.tensor(I) @ D == I.tensor(D) @ D,
        "unit": lambda: m @ i.tensor(I) == I and m @ I.tensor(i) == I,
        "counit": lambda: e.tensor(I) @ D == I and I.tensor(e) @ D == I,
        "frobenius": lambda: D @ m == m.tensor(I) @ I.tensor(D)
        and D @ m == I.tensor(m) @ D.tensor(I),
        "commutativity": lambda: m @ tau == m,
        "cocommutativity": lambda: tau @ D == D,
        "phi involution": lambda: P @ P == I,
        "counit skew": lambda: e @ P == -e,
        "comult skew": lambda: P.tensor(P) @ D @ P == -D,
        "theta axiom phi-left": lambda: P @ T == T,
        "theta axiom phi-right": lambda: T @ P == T,
        "sphere": lambda: (e @ i).is_zero(),
        "torus": lambda: (e @ m @ D @ i).matrix[0][0] == R(2),
        "4Tu": lambda: _four_tu(spec, g),
        "mobius": lambda: m @ P.tensor(I) @ D == T @ T,
    }
    return {name: bool(check()) for name, check in checks.items()}


def all_tuples(ring: Ring) -> Iterable[tuple]:
    """Every parameter tuple over a finite ring with ``a`` invertible."""
    els = ring.elements()
    for a in els:
        if not ring.is_unit(a):
            continue
        for rest in itertools.product(els, repeat=5):
            yield (a, *rest)
