"""Reading flow networks from text files.

Two layouts are accepted, chosen by the shape of the first data line:

Edge list (CSV)::

    # unit: mg C m^-2 y^-1
    from,to,flow
    plants,herbivores,12.5

Labeled matrix (TSV), origins in rows and destinations in columns::

    # unit: mg C m^-2 y^-1
    <TAB>a<TAB>b
    a<TAB>0<TAB>3
    b<TAB>1<TAB>0

Lines starting with ``#`` are comments; the optional ``# unit:`` pragma
gives the flow dimension.  Pairs missing from an edge list are zero flows.
"""

from __future__ import annotations

import csv
import math
import os
import re
from dataclasses import dataclass

import numpy as np

from .flownet import FlowNetwork
from .logunits import ParseError, parse_dimension

__all__ = ["NetFileError", "NetworkFile", "parse_network_text", "read_network_file", "load_network"]

_PRAGMA = re.compile(r"^#\s*unit\s*:\s*(?P<unit>.*)$", re.IGNORECASE)


class NetFileError(ValueError):
    """Syntax or content error in a network file, with 1-based line/column."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source


@dataclass(frozen=True)
class NetworkFile:
    labels: tuple
    triples: tuple  # (from, to, value)
    unit: str = ""
    source: str = "<input>"
    unit_line: int = 0

    def to_network(self) -> FlowNetwork:
        try:
            dim, scale = parse_dimension(self.unit)
        except ParseError as err:
            raise NetFileError(f"bad unit pragma: {err}", self.unit_line, 1, self.source) from None
        index = {lab: k for k, lab in enumerate(self.labels)}
        T = np.zeros((len(self.labels), len(self.labels)))
        for a, b, v in self.triples:
            T[index[a], index[b]] = v
        return FlowNetwork(self.labels, T, dim, scale)


def _number(text: str, line: int, column: int, source: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise NetFileError(f"flow value {text.strip()!r} is not a number", line, column, source) from None
    if not math.isfinite(v):
        raise NetFileError(f"flow value {text.strip()!r} is not finite", line, column, source)
    if v < 0:
        raise NetFileError(f"negative flow {text.strip()!r}", line, column, source)
    return v


def _field_columns(raw: str, sep: str) -> list[int]:
    cols, pos = [], 0
    for part in raw.split(sep):
        cols.append(pos + 1)
        pos += len(part) + 1
    return cols


def parse_network_text(text: str, source: str = "<input>") -> NetworkFile:
    unit, unit_line = "", 0
    data: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _PRAGMA.match(stripped)
            if m:
                unit, unit_line = m.group("unit").strip(), lineno
            continue
        data.append((lineno, raw.rstrip("\r\n")))
    if not data:
        raise NetFileError("no header line", 1, 1, source)
    if "\t" in data[0][1]:
        labels, triples = _parse_matrix(data, source)
    else:
        labels, triples = _parse_edges(data, source)
    return NetworkFile(labels, tuple(triples), unit, source, unit_line)


def _parse_edges(data, source):
    head_line, head = data[0]
    header = [h.strip().lower() for h in next(csv.reader([head]))]
    if header != ["from", "to", "flow"]:
        raise NetFileError(f"expected header 'from,to,flow', got {head.strip()!r}", head_line, 1, source)
    labels: dict[str, None] = {}
    seen: dict[tuple[str, str], int] = {}
    triples = []
    for lineno, raw in data[1:]:
        fields = next(csv.reader([raw]))
        cols = _field_columns(raw, ",")
        if len(fields) != 3:
            raise NetFileError(f"expected 3 fields (from,to,flow), got {len(fields)}", lineno, 1, source)
        a, b = fields[0].strip(), fields[1].strip()
        for k, name in enumerate((a, b)):
            if not name:
                raise NetFileError("empty node label", lineno, cols[min(k, len(cols) - 1)], source)
        v = _number(fields[2], lineno, cols[min(2, len(cols) - 1)], source)
        if (a, b) in seen:
            raise NetFileError(f"duplicate flow {a} -> {b} (first on line {seen[a, b]})", lineno, 1, source)
        seen[a, b] = lineno
        labels.setdefault(a)
        labels.setdefault(b)
        triples.append((a, b, v))
    return tuple(labels), triples


def _parse_matrix(data, source):
    head_line, head = data[0]
    cols = [c.strip() for c in head.split("\t")[1:]]
    if not cols or any(not c for c in cols):
        raise NetFileError("matrix header needs non-empty column labels", head_line, 1, source)
    if len(set(cols)) != len(cols):
        raise NetFileError("duplicate column label", head_line, 1, source)
    rows: dict[str, list[float]] = {}
    for lineno, raw in data[1:]:
        fields = raw.split("\t")
        offsets = _field_columns(raw, "\t")
        if len(fields) != len(cols) + 1:
            raise NetFileError(f"expected {len(cols) + 1} tab-separated fields, got {len(fields)}", lineno, 1, source)
        label = fields[0].strip()
        if label in rows:
            raise NetFileError(f"duplicate row label {label!r}", lineno, 1, source)
        rows[label] = [_number(f, lineno, offsets[k + 1], source) for k, f in enumerate(fields[1:])]
    if set(rows) != set(cols):
        raise NetFileError("row labels must match column labels (square matrix)", head_line, 1, source)
    triples = []
    for a in cols:
        for b, v in zip(cols, rows[a]):
            if v:
                triples.append((a, b, v))
    return tuple(cols), triples


def read_network_file(path) -> NetworkFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_network_text(text, os.fspath(path))


def load_network(path) -> FlowNetwork:
    return read_network_file(path).to_network()
