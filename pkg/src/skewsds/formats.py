"""Text formats for families (``.sds``) and sign matrices (``.mat``).

Family file, one ``key: value`` per line, ``#`` starts a comment::

    name: 47-X
    v: 47
    lambda: 50
    skew_block: 0
    block: 1 2 3 4 7 8 ...
    block: 2 3 5 6 7 ...

``block`` lines are ordered and may be empty; elements are separated by
spaces and/or commas.  ``name`` and ``skew_block`` are optional.

Matrix file: the decimal order m on the first line, then m rows of exactly
m characters from ``+`` / ``-``, each newline-terminated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .diffsets import SdsFamily


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyRecord:
    family: SdsFamily
    skew_block: Optional[int] = None


def _int(value: str, what: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"line {lineno}: {what} must be an integer, got {value!r}") from None


def parse_family(text: str) -> FamilyRecord:
    fields: dict[str, str] = {}
    raw_blocks: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, value = key.strip().lower(), value.strip()
        if key == "block":
            raw_blocks.append((lineno, value))
        elif key in ("name", "v", "lambda", "skew_block"):
            if key in fields:
                raise FormatError(f"line {lineno}: duplicate key {key!r}")
            fields[key] = value
        else:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    for required in ("v", "lambda"):
        if required not in fields:
            raise FormatError(f"missing required key {required!r}")
    if not raw_blocks:
        raise FormatError("no block lines")
    v = _int(fields["v"], "v", 0)
    lam = _int(fields["lambda"], "lambda", 0)
    if v < 1:
        raise FormatError(f"v must be positive, got {v}")
    if lam < 0:
        raise FormatError(f"lambda must be nonnegative, got {lam}")
    blocks = []
    for lineno, value in raw_blocks:
        items = [_int(tok, "block element", lineno) for tok in re.split(r"[\s,]+", value) if tok]
        if len(set(items)) != len(items):
            raise FormatError(f"line {lineno}: duplicate elements in block")
        bad = [x for x in items if not 0 <= x < v]
        if bad:
            raise FormatError(f"line {lineno}: elements {bad} outside 0..{v - 1}")
        blocks.append(items)
    skew = None
    if "skew_block" in fields:
        skew = _int(fields["skew_block"], "skew_block", 0)
        if not 0 <= skew < len(blocks):
            raise FormatError(f"skew_block {skew} out of range for {len(blocks)} blocks")
    family = SdsFamily.from_lists(v, blocks, lam, name=fields.get("name") or None)
    return FamilyRecord(family, skew)


def dump_family(family: SdsFamily, skew_block: Optional[int] = None) -> str:
    lines = []
    if family.name:
        lines.append(f"name: {family.name}")
    lines += [f"v: {family.v}", f"lambda: {family.lam}"]
    if skew_block is not None:
        lines.append(f"skew_block: {skew_block}")
    for b in family.blocks:
        lines.append(("block: " + " ".join(map(str, b.tolist()))).rstrip())
    return "\n".join(lines) + "\n"


def read_family(path) -> FamilyRecord:
    return parse_family(Path(path).read_text())


def write_family(path, family: SdsFamily, skew_block: Optional[int] = None) -> None:
    Path(path).write_text(dump_family(family, skew_block))


def dump_matrix(m: np.ndarray) -> str:
    rows = ["".join("+" if x > 0 else "-" for x in row) for row in np.asarray(m)]
    return f"{len(rows)}\n" + "".join(r + "\n" for r in rows)


def parse_matrix(text: str) -> np.ndarray:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty matrix file")
    try:
        order = int(lines[0])
    except ValueError:
        raise FormatError(f"first line must be the order, got {lines[0]!r}") from None
    rows = lines[1:]
    if order < 1 or len(rows) != order:
        raise FormatError(f"expected {order} rows, found {len(rows)}")
    out = np.empty((order, order), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != order:
            raise FormatError(f"row {i + 1} has length {len(row)}, expected {order}")
        if set(row) - {"+", "-"}:
            raise FormatError(f"row {i + 1} contains characters other than '+' and '-'")
        out[i] = [1 if c == "+" else -1 for c in row]
    return out


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m: np.ndarray) -> None:
    Path(path).write_text(dump_matrix(m))
