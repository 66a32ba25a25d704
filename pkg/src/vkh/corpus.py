"""Named diagram collections stored as plain text.

One diagram per line, ``name: CD[...]`` or ``name: gauss O1-...``. Blank
lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .diagram import Diagram, DiagramSyntaxError, gauss_to_cd, parse_cd, parse_gauss

__all__ = ["parse_corpus", "load_corpus", "reference_corpus"]


def parse_corpus(text: str) -> dict[str, Diagram]:
    out: dict[str, Diagram] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, body = line.partition(":")
        if not sep or not name.strip():
            raise DiagramSyntaxError(f"line {lineno}: expected 'name: diagram'")
        body = body.strip()
        if body.lower().startswith("gauss"):
            out[name.strip()] = gauss_to_cd(parse_gauss(body[5:]))
        else:
            out[name.strip()] = parse_cd(body)
    return out


def load_corpus(path: str | Path) -> dict[str, Diagram]:
    return parse_corpus(Path(path).read_text())


def reference_corpus() -> dict[str, Diagram]:
    """The diagrams used in the published computations, bundled as package data."""
    text = resources.files("vkh").joinpath("data/reference_corpus.txt").read_text()
    return parse_corpus(text)
