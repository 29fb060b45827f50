"""Plain-text seed documents: parsing and canonical rendering.

A document is a sequence of `key = value` lines.  '#' starts a comment and
blank lines are ignored.  Keys:

    name       optional free text
    comment    optional free text
    rank       positive integer (required)
    form       'k <int>' (rank-2 shorthand) or a JSON matrix (required)
    vector     '(a1,...,ar) x m' -- repeatable; multiplicities merge
    potential  expression over x1..xr (required)

Rendering is canonical: fixed key order, sorted vectors, the potential in
normalized canonical form, one trailing newline.  Comments are not part of
the document model, so they are dropped on parse; for documents already in
canonical form, render(parse(text)) == text byte for byte.
"""

from __future__ import annotations

import json
import re

from .exprparse import ExpressionError, parse_expression
from .lattice import SkewForm
from .laurent import LaurentPoly
from .mutation import ExchangeCollection, Seed

__all__ = ["SeedFormatError", "parse_seed", "render_seed", "load_seed", "save_seed"]


class SeedFormatError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


_VECTOR_RE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*x\s*(\d+)$")
_KNOWN_KEYS = ("name", "comment", "rank", "form", "vector", "potential")


def parse_seed(text):
    entries = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise SeedFormatError("expected 'key = value'", ln)
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise SeedFormatError(f"unknown key {key!r}", ln)
        entries.append((key, value.strip(), ln))

    single = {}
    vectors = []
    for key, value, ln in entries:
        if key == "vector":
            vectors.append((value, ln))
        elif key in single:
            raise SeedFormatError(f"duplicate key {key!r}", ln)
        else:
            single[key] = (value, ln)

    if "rank" not in single:
        raise SeedFormatError("missing required key 'rank'")
    value, ln = single["rank"]
    try:
        rank = int(value)
    except ValueError:
        raise SeedFormatError(f"rank must be an integer, got {value!r}", ln) from None
    if rank < 1:
        raise SeedFormatError("rank must be positive", ln)

    if "form" not in single:
        raise SeedFormatError("missing required key 'form'")
    value, ln = single["form"]
    form = _parse_form(value, rank, ln)

    if not vectors:
        raise SeedFormatError("at least one 'vector' line is required")
    pairs = []
    for value, ln in vectors:
        m = _VECTOR_RE.match(value)
        if not m:
            raise SeedFormatError(
                f"expected a vector like '(0,1) x 2', got {value!r}", ln
            )
        coords = tuple(int(p) for p in m.group(1).split(","))
        mult = int(m.group(2))
        if len(coords) != rank:
            raise SeedFormatError(f"vector {coords} does not have rank {rank}", ln)
        if mult < 1:
            raise SeedFormatError("multiplicity must be at least 1", ln)
        pairs.append((coords, mult))
    try:
        collection = ExchangeCollection(rank, pairs)
    except ValueError as exc:
        raise SeedFormatError(str(exc)) from None

    if "potential" in single:
        value, ln = single["potential"]
        try:
            potential = parse_expression(value, rank)
        except ExpressionError as exc:
            raise SeedFormatError(f"bad potential: {exc}", ln) from None
    else:
        potential = LaurentPoly.zero(rank)

    name = single.get("name", ("", None))[0]
    comment = single.get("comment", ("", None))[0]
    try:
        return Seed(form, collection, potential, name=name, comment=comment)
    except ValueError as exc:
        raise SeedFormatError(str(exc)) from None


def _parse_form(value, rank, ln):
    if value.startswith("k"):
        parts = value.split()
        if len(parts) != 2 or parts[0] != "k":
            raise SeedFormatError(f"expected 'k <int>', got {value!r}", ln)
        if rank != 2:
            raise SeedFormatError("the 'k' form shorthand requires rank 2", ln)
        try:
            return SkewForm.rank2(int(parts[1]))
        except ValueError:
            raise SeedFormatError(f"bad form constant {parts[1]!r}", ln) from None
    try:
        matrix = json.loads(value)
    except json.JSONDecodeError:
        raise SeedFormatError("form must be 'k <int>' or a JSON matrix", ln) from None
    if not isinstance(matrix, list) or any(
        not isinstance(row, list) or any(not isinstance(x, int) for x in row)
        for row in matrix
    ):
        raise SeedFormatError("form matrix must be a list of integer rows", ln)
    if len(matrix) != rank:
        raise SeedFormatError(f"form matrix must be {rank} x {rank}", ln)
    try:
        return SkewForm(matrix)
    except ValueError as exc:
        raise SeedFormatError(str(exc), ln) from None


def render_seed(seed):
    """Canonical rendering; parse(render(seed)) reproduces the seed."""
    lines = []
    if seed.name:
        lines.append(f"name = {seed.name}")
    if seed.comment:
        lines.append(f"comment = {seed.comment}")
    lines.append(f"rank = {seed.rank}")
    if seed.rank == 2:
        lines.append(f"form = k {seed.form.k}")
    else:
        matrix = json.dumps([list(r) for r in seed.form.matrix], separators=(",", ":"))
        lines.append(f"form = {matrix}")
    for v, c in seed.collection.items():
        coords = ",".join(str(x) for x in v)
        lines.append(f"vector = ({coords}) x {c}")
    lines.append(f"potential = {seed.potential.to_string()}")
    return "\n".join(lines) + "\n"


def load_seed(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_seed(fh.read())


def save_seed(seed, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_seed(seed))
