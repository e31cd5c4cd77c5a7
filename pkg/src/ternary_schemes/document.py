"""Reading and writing AST documents.

A document holds ``n``, the order ``m`` and all ``m + 1`` relations as lists
of 1-based triples (trivial relations first, nontrivial relations ordered by
least triple, triples sorted).  Two encodings are supported:

JSON::

    {
      "n": 3,
      "order": 4,
      "group": "trivial",
      "relations": [
        [[1,1,1],[2,2,2],[3,3,3]],
        ...
      ],
      "valencies": [0,1,1,0,1],
      "intersection_numbers": [[0,0,0,0,1],...]
    }

Text::

    n 3
    order 4
    group trivial
    R0 1,1,1 2,2,2 3,3,3
    ...
    valencies 0 1 1 0 1
    p 0 0 0 0 1

``group``, ``valencies`` and the intersection numbers are optional.  The
writers are deterministic, so ``serialize(parse(s)) == s`` for any ``s``
they produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .axioms import validate_ast
from .relations import ASTCandidate, PartitionError, TernaryRelation, Triple

JSON = "json"
TEXT = "text"
FORMATS = (JSON, TEXT)


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class ASTDocument:
    candidate: ASTCandidate
    group: str | None = None
    valencies: list[int] | None = None
    intersection_numbers: list[tuple[int, int, int, int, int]] | None = None

    @property
    def n(self) -> int:
        return self.candidate.n

    @property
    def order(self) -> int:
        return self.candidate.order


def document_from_candidate(x: ASTCandidate, group: str | None = None,
                            invariants: bool = True) -> ASTDocument:
    """Wrap ``x``; with ``invariants`` the constants are attached when ``x`` is an AST."""
    doc = ASTDocument(x, group)
    if invariants:
        report = validate_ast(x)
        if report.passed:
            doc.valencies = [int(v) for v in report.valencies]
            doc.intersection_numbers = tensor_cells(report.tensor)
    return doc


def tensor_cells(tensor: np.ndarray) -> list[tuple[int, int, int, int, int]]:
    """Nonzero cells ``(i, j, k, l, p_ijk^l)`` in lexicographic index order."""
    return [(*(int(v) for v in idx), int(tensor[tuple(idx)])) for idx in np.argwhere(tensor)]


def _fmt_triple_json(t: Triple) -> str:
    return "[%d,%d,%d]" % t


def serialize(doc: ASTDocument, fmt: str = JSON) -> str:
    x = doc.candidate
    rels = [r.triples() for r in x.relations]
    if fmt == JSON:
        lines = ["{", f'  "n": {x.n},', f'  "order": {x.order},']
        if doc.group is not None:
            lines.append(f'  "group": {json.dumps(doc.group)},')
        lines.append('  "relations": [')
        for i, rel in enumerate(rels):
            sep = "," if i < len(rels) - 1 else ""
            lines.append("    [" + ",".join(map(_fmt_triple_json, rel)) + "]" + sep)
        tail = ["  ]"]
        if doc.valencies is not None:
            tail.append('  "valencies": [' + ",".join(map(str, doc.valencies)) + "]")
        if doc.intersection_numbers is not None:
            cells = ",".join("[" + ",".join(map(str, c)) + "]" for c in doc.intersection_numbers)
            tail.append('  "intersection_numbers": [' + cells + "]")
        lines.append(",\n".join(tail))
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == TEXT:
        lines = [f"n {x.n}", f"order {x.order}"]
        if doc.group is not None:
            lines.append(f"group {doc.group}")
        for i, rel in enumerate(rels):
            lines.append(f"R{i} " + " ".join("%d,%d,%d" % t for t in rel))
        if doc.valencies is not None:
            lines.append("valencies " + " ".join(map(str, doc.valencies)))
        for c in doc.intersection_numbers or ():
            lines.append("p " + " ".join(map(str, c)))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _assemble(n, order, relations, group, valencies, cells, where=lambda i: None) -> ASTDocument:
    if not isinstance(n, int) or n < 3:
        raise DocumentError(f"n must be an integer >= 3, got {n!r}")
    if not isinstance(order, int) or order != len(relations) - 1:
        raise DocumentError(f"order {order!r} does not match {len(relations)} relations")
    rels = []
    for i, rel in enumerate(relations):
        triples = []
        for t in rel:
            if (not isinstance(t, (list, tuple)) or len(t) != 3
                    or not all(isinstance(v, int) and 1 <= v <= n for v in t)):
                raise DocumentError(f"relation {i}: bad triple {t!r}", where(i))
            triples.append(tuple(t))
        if len(set(triples)) != len(triples):
            raise DocumentError(f"relation {i} lists a triple twice", where(i))
        rels.append(TernaryRelation.from_triples(n, triples))
    try:
        x = ASTCandidate.from_relations(n, rels)
    except PartitionError as exc:
        raise DocumentError(str(exc)) from None
    if list(x.relations) != rels and (valencies is not None or cells is not None):
        raise DocumentError("nontrivial relations must be ordered by least triple when invariants are given")
    if valencies is not None:
        if len(valencies) != len(rels) or not all(isinstance(v, int) for v in valencies):
            raise DocumentError("valencies must list one integer per relation")
        valencies = list(valencies)
    if cells is not None:
        cells = [tuple(c) for c in cells]
        if any(len(c) != 5 or not all(isinstance(v, int) for v in c) for c in cells):
            raise DocumentError("intersection numbers must be [i, j, k, l, value] entries")
    return ASTDocument(x, group, valencies, cells)


def _parse_json(text: str) -> ASTDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise DocumentError("top level must be an object", 1, 1)
    missing = [k for k in ("n", "order", "relations") if k not in data]
    if missing:
        raise DocumentError(f"missing field(s): {', '.join(missing)}")
    unknown = set(data) - {"n", "order", "group", "relations", "valencies", "intersection_numbers"}
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(sorted(unknown))}")
    rels = data["relations"]
    if not isinstance(rels, list) or not all(isinstance(r, list) for r in rels):
        raise DocumentError("relations must be a list of triple lists")
    lines = text.splitlines()
    start = next((i for i, ln in enumerate(lines) if ln.strip().startswith('"relations"')), None)

    def where(i):
        # Exact when the writer's one-relation-per-line layout is used.
        return None if start is None else start + 2 + i

    group = data.get("group")
    if group is not None and not isinstance(group, str):
        raise DocumentError("group must be a string")
    return _assemble(data["n"], data["order"], rels, group,
                     data.get("valencies"), data.get("intersection_numbers"), where)


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DocumentError(f"expected an integer, got {tok!r}", line, col) from None


def _parse_text(text: str) -> ASTDocument:
    n = order = group = valencies = None
    relations: dict[int, tuple[int, list]] = {}
    cells = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, _, rest = line.strip().partition(" ")
        col0 = raw.index(key) + 1
        toks = []
        pos = col0 + len(key)
        for tok in rest.split():
            pos = raw.index(tok, pos - 1) + 1
            toks.append((tok, pos))
            pos += len(tok)
        if key == "n":
            n = _int(toks[0][0], lineno, toks[0][1]) if len(toks) == 1 else None
            if n is None:
                raise DocumentError("expected: n <int>", lineno, col0)
        elif key == "order":
            if len(toks) != 1:
                raise DocumentError("expected: order <int>", lineno, col0)
            order = _int(toks[0][0], lineno, toks[0][1])
        elif key == "group":
            group = rest.strip()
        elif key == "valencies":
            valencies = [_int(t, lineno, c) for t, c in toks]
        elif key == "p":
            if len(toks) != 5:
                raise DocumentError("expected: p i j k l value", lineno, col0)
            cells.append(tuple(_int(t, lineno, c) for t, c in toks))
        elif key.startswith("R") and key[1:].isdigit():
            idx = int(key[1:])
            if idx in relations:
                raise DocumentError(f"relation R{idx} given twice", lineno, col0)
            triples = []
            for tok, c in toks:
                parts = tok.split(",")
                if len(parts) != 3:
                    raise DocumentError(f"expected a triple x,y,z, got {tok!r}", lineno, c)
                t = tuple(_int(p, lineno, c) for p in parts)
                if n is not None and not all(1 <= v <= n for v in t):
                    raise DocumentError(f"triple {tok} has an entry outside 1..{n}", lineno, c)
                triples.append(t)
            relations[idx] = (lineno, triples)
        else:
            raise DocumentError(f"unknown keyword {key!r}", lineno, col0)
    if n is None or order is None:
        raise DocumentError("document needs both 'n' and 'order' lines")
    if sorted(relations) != list(range(len(relations))):
        raise DocumentError("relations must be numbered R0, R1, ... without gaps")
    rel_lists = [relations[i][1] for i in range(len(relations))]
    return _assemble(n, order, rel_lists, group, valencies, cells or None,
                     lambda i: relations[i][0])


def parse(text: str, fmt: str | None = None) -> ASTDocument:
    """Parse a document; ``fmt=None`` picks JSON when the text starts with ``{``."""
    if fmt is None:
        fmt = JSON if text.lstrip().startswith("{") else TEXT
    if fmt == JSON:
        return _parse_json(text)
    if fmt == TEXT:
        return _parse_text(text)
    raise ValueError(f"unknown format {fmt!r}")


def load(path: str | Path) -> ASTDocument:
    path = Path(path)
    fmt = {".json": JSON, ".txt": TEXT, ".ast": TEXT}.get(path.suffix.lower())
    return parse(path.read_text(encoding="utf-8"), fmt)


def dump(doc: ASTDocument, path: str | Path, fmt: str = JSON) -> None:
    Path(path).write_text(serialize(doc, fmt), encoding="utf-8")
