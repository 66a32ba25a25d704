"""Command-line interface: ``vkh compute | torsion | jones | check | compare | convert``.

Exit codes: 0 success, 1 input error, 2 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .complex import AlgebraicComplex, assert_graded, build_complex, verify_d_squared
from .corpus import reference_corpus, parse_corpus
from .cube import CubeError, build_cube
from .diagram import (
    Diagram,
    DiagramError,
    gauss_to_cd,
    mirror,
    parse_cd,
    parse_diagram,
    parse_gauss,
    render_cd,
)
from .frobenius import FrobeniusError, FrobeniusSpec, axiom_report, parse_params, parse_ring, preset
from .homology import (
    HomologyError,
    HomologyTable,
    homology,
    normalized_jones,
    poincare_polynomial,
    table_difference,
    torsion_polynomial,
)
from .laurent import format_jones

__all__ = ["main", "build_parser", "RunConfig"]

MAX_CROSSINGS = 16


class InputError(Exception):
    """Bad user input; exit code 1."""


class VerificationError(Exception):
    """An internal consistency check failed; exit code 2."""


@dataclass
class RunConfig:
    command: str
    inputs: list[tuple[str, Diagram]]
    spec: FrobeniusSpec
    coefficients: object
    fmt: str
    primes: list[int]
    force: bool
    mirror: bool = False


class _SourceAction(argparse.Action):
    """Collect ``(flag, value)`` pairs from all input flags in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        namespace.sources = list(namespace.sources) + [(option_string.lstrip("-"), values)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vkh", description="Virtual Khovanov homology of virtual link diagrams."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        src = p.add_argument_group("input")
        for flag, text in (
            ("--cd", "diagram in CD notation"),
            ("--gauss", "signed Gauss code, e.g. O1-O2-U1-U2-"),
            ("--file", "file with one code or a named corpus"),
            ("--corpus", "name of a bundled example diagram"),
        ):
            src.add_argument(flag, action=_SourceAction, dest="sources", default=[], help=text)
        th = p.add_mutually_exclusive_group()
        th.add_argument("--theory", default=None, help="khovanov (default), lee, bn1 or bn2")
        th.add_argument("--params", help="ring=z,a=1,h=0,t=0,alpha=0,beta=0,gamma=0")
        p.add_argument("--coeff", help="coefficient ring for homology: z, q or z/p")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--force", action="store_true", help="allow more than 16 crossings or invalid params")

    for name, text in (
        ("compute", "print the Poincaré polynomial (or ranks per degree when ungraded)"),
        ("torsion", "print the p-torsion polynomial"),
        ("jones", "print the normalized Jones polynomial"),
        ("check", "verify d∘d = 0 and the algebra axioms"),
    ):
        p = sub.add_parser(name, help=text)
        common(p)
        if name == "torsion":
            p.add_argument("-p", dest="primes", type=int, action="append", help="prime (default 2)")
    p = sub.add_parser("compare", help="compare Jones polynomials and homology of two diagrams")
    common(p)
    p = sub.add_parser("convert", help="print a diagram as CD code")
    common(p)
    p.add_argument("--mirror", action="store_true", help="print the mirror image")
    return parser


def _diagrams_from_file(path: str) -> list[tuple[str, Diagram]]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) == 1 and ":" not in lines[0]:
        return [(path, parse_diagram(lines[0]))]
    return list(parse_corpus(text).items())


def _collect_inputs(args: argparse.Namespace) -> list[tuple[str, Diagram]]:
    out: list[tuple[str, Diagram]] = []
    corpus = None
    for kind, value in args.sources:
        if kind == "cd":
            out.append((value, parse_cd(value)))
        elif kind == "gauss":
            out.append((value, gauss_to_cd(parse_gauss(value))))
        elif kind == "file":
            out.extend(_diagrams_from_file(value))
        else:
            corpus = corpus or reference_corpus()
            if value not in corpus:
                raise InputError(f"unknown corpus diagram {value!r}; known: {', '.join(corpus)}")
            out.append((value, corpus[value]))
    if not out:
        raise InputError("no input: use --cd, --gauss, --file or --corpus")
    return out


def _config(args: argparse.Namespace) -> RunConfig:
    inputs = _collect_inputs(args)
    if args.command == "compare" and len(inputs) != 2:
        raise InputError(f"compare needs exactly two diagrams, got {len(inputs)}")
    if args.command != "compare" and len(args.sources) != 1:
        raise InputError("give exactly one input (a --file may hold several diagrams)")
    if args.params:
        spec = parse_params(args.params, force=args.force)
    else:
        spec = preset(args.theory or "khovanov")
    coeff = parse_ring(args.coeff) if args.coeff else None
    if not args.force:
        for name, d in inputs:
            if d.n > MAX_CROSSINGS:
                raise InputError(
                    f"{name}: {d.n} crossings (2^{d.n} resolutions); use --force to proceed"
                )
    return RunConfig(
        args.command,
        inputs,
        spec,
        coeff,
        args.fmt,
        getattr(args, "primes", None) or [2],
        args.force,
        getattr(args, "mirror", False),
    )


def _complex(d: Diagram, spec: FrobeniusSpec) -> AlgebraicComplex:
    return build_complex(build_cube(d), spec)


def _table(cfg: RunConfig, d: Diagram) -> tuple[AlgebraicComplex, HomologyTable]:
    cx = _complex(d, cfg.spec)
    res = verify_d_squared(cx)
    if not res:
        raise VerificationError(res.describe())
    return cx, homology(cx, cfg.coefficients, check=False)


def _jones_text(table: HomologyTable) -> str | None:
    if not table.graded:
        return None
    try:
        return format_jones(normalized_jones(table))
    except ArithmeticError:
        return None


def _report(table: HomologyTable, primes: Sequence[int]) -> dict:
    data: dict = {"betti": table.to_json()}
    if table.graded:
        data["poincare"] = str(poincare_polynomial(table))
    if table.coefficients.kind == "Z":
        data["torsion"] = {str(p): torsion_polynomial(table, p).to_json() for p in primes}
    data["jones"] = _jones_text(table)
    return data


def _ranks_text(table: HomologyTable) -> str:
    ranks = table.ranks_by_hdeg()
    if not ranks:
        return "0"
    return "\n".join(f"hdeg {h}: rank {r}" for h, r in ranks.items())


def cmd_compute(cfg: RunConfig) -> list[str]:
    out = []
    for name, d in cfg.inputs:
        _, table = _table(cfg, d)
        if cfg.fmt == "json":
            out.append(json.dumps({"name": name, **_report(table, [2, 3])}, sort_keys=True))
            continue
        text = str(poincare_polynomial(table)) if table.graded else _ranks_text(table)
        out.append(text if len(cfg.inputs) == 1 else f"{name}: {text}")
    return out


def cmd_torsion(cfg: RunConfig) -> list[str]:
    if cfg.coefficients is not None and cfg.coefficients.kind != "Z":
        raise InputError("torsion needs integer coefficients")
    if cfg.spec.ring.kind != "Z":
        raise InputError(f"torsion needs a theory over Z, not {cfg.spec.ring}")
    out = []
    for name, d in cfg.inputs:
        _, table = _table(cfg, d)
        try:
            polys = {p: torsion_polynomial(table, p) for p in cfg.primes}
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if cfg.fmt == "json":
            out.append(
                json.dumps(
                    {"name": name, "torsion": {str(p): v.to_json() for p, v in polys.items()}},
                    sort_keys=True,
                )
            )
            continue
        for p, v in polys.items():
            prefix = "" if len(cfg.inputs) == 1 and len(polys) == 1 else f"{name} p={p}: "
            out.append(prefix + str(v))
    return out


def cmd_jones(cfg: RunConfig) -> list[str]:
    out = []
    for name, d in cfg.inputs:
        _, table = _table(cfg, d)
        if not table.graded:
            raise InputError("the Jones polynomial needs a graded theory")
        try:
            text = format_jones(normalized_jones(table))
        except ArithmeticError as exc:
            raise VerificationError(f"Euler characteristic not divisible by q + 1/q: {exc}") from None
        if cfg.fmt == "json":
            out.append(json.dumps({"name": name, "jones": text}, sort_keys=True))
        else:
            out.append(text if len(cfg.inputs) == 1 else f"{name}: {text}")
    return out


def cmd_check(cfg: RunConfig) -> tuple[list[str], bool]:
    items: list[tuple[str, str]] = []
    for name, d in cfg.inputs:
        cx = _complex(d, cfg.spec)
        res = verify_d_squared(cx)
        items.append(("d∘d = 0" + ("" if len(cfg.inputs) == 1 else f" [{name}]"),
                      "PASS" if res else "FAIL"))
        if not res:
            items.append(("  " + res.describe(), "FAIL"))
        if cfg.spec.graded:
            items.append(("graded", "PASS" if assert_graded(cx) else "FAIL"))
        else:
            items.append(("graded", "n/a"))
    for axiom, ok in axiom_report(cfg.spec).items():
        items.append((f"axiom {axiom}", "PASS" if ok else "FAIL"))
    ok = all(status != "FAIL" for _, status in items)
    if cfg.fmt == "json":
        return [json.dumps({"spec": str(cfg.spec), "checks": dict(items), "ok": ok})], ok
    return [f"{status} {label}" for label, status in items], ok


def cmd_compare(cfg: RunConfig) -> list[str]:
    (na, da), (nb, db) = cfg.inputs
    _, ta = _table(cfg, da)
    _, tb = _table(cfg, db)
    ja, jb = _jones_text(ta), _jones_text(tb)
    only_a, only_b = table_difference(ta, tb)
    same_tables = ta.entries == tb.entries
    if cfg.fmt == "json":
        return [
            json.dumps(
                {
                    "a": na,
                    "b": nb,
                    "jones_equal": ja == jb,
                    "jones": [ja, jb],
                    "homology_equal": same_tables,
                    "only_in_a": str(only_a),
                    "only_in_b": str(only_b),
                },
                sort_keys=True,
            )
        ]
    return [
        f"A: {na}",
        f"B: {nb}",
        f"jones: {'equal' if ja == jb else 'differ'} ({ja} | {jb})",
        f"homology: {'equal' if same_tables else 'differ'}",
        f"only in A: {only_a}",
        f"only in B: {only_b}",
    ]


def cmd_convert(cfg: RunConfig) -> list[str]:
    out = []
    for name, d in cfg.inputs:
        code = render_cd(mirror(d) if cfg.mirror else d)
        if cfg.fmt == "json":
            out.append(json.dumps({"name": name, "cd": code}))
        else:
            out.append(code)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        ok = True
        if cfg.command == "check":
            lines, ok = cmd_check(cfg)
        else:
            handler = {
                "compute": cmd_compute,
                "torsion": cmd_torsion,
                "jones": cmd_jones,
                "compare": cmd_compare,
                "convert": cmd_convert,
            }[cfg.command]
            lines = handler(cfg)
    except (InputError, DiagramError, FrobeniusError, ValueError) as exc:
        print(f"vkh: error: {exc}", file=sys.stderr)
        return 1
    except (VerificationError, HomologyError, CubeError) as exc:
        print(f"vkh: verification failed: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    return 0 if ok else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
