"""JSON wire formats for matrices, morphism tuples, 1- and 2-morphisms."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .bimorph import (
    ComposedGauge,
    Gauge,
    OneMorphism,
    RankMatrix,
    TableGauge,
    TrivialGauge,
    compose1,
)
from .exactmat import Mat, format_scalar, parse_scalar
from .svect import MorphismTuple
from .twomorph import TwoMorphism


class ParseError(ValueError):
    """Malformed input; ``location`` is a JSON-pointer-like path."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location or '/'}: {message}")
        self.location = location
        self.message = message


def _need(obj, key, loc):
    if not isinstance(obj, dict):
        raise ParseError(loc, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(loc, f"missing key {key!r}")
    return obj[key]


def _nat(x, loc) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ParseError(loc, f"expected a natural number, got {x!r}")
    return x


def _nat_list(xs, loc) -> tuple[int, ...]:
    if not isinstance(xs, list):
        raise ParseError(loc, "expected a list of natural numbers")
    return tuple(_nat(x, f"{loc}/{k}") for k, x in enumerate(xs))


# --------------------------------------------------------------------------
# Mat


def mat_to_json(m: Mat) -> dict:
    entries = [] if m.is_empty else [[format_scalar(s) for s in row] for row in m.entries()]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def mat_from_json(obj, loc: str = "") -> Mat:
    p = _nat(_need(obj, "rows", loc), f"{loc}/rows")
    q = _nat(_need(obj, "cols", loc), f"{loc}/cols")
    entries = _need(obj, "entries", loc)
    if not isinstance(entries, list):
        raise ParseError(f"{loc}/entries", "expected a list of rows")
    if p * q == 0:
        if entries and any(entries):
            raise ParseError(f"{loc}/entries", f"an empty {p}x{q} matrix must have no entries")
        return Mat.from_rows([], (p, q))
    if len(entries) != p:
        raise ParseError(f"{loc}/entries", f"expected {p} rows, got {len(entries)}")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != q:
            raise ParseError(f"{loc}/entries/{i}", f"expected a row of {q} scalars")
        out = []
        for j, x in enumerate(row):
            try:
                out.append(parse_scalar(str(x)) if not isinstance(x, bool) else None)
            except ValueError as exc:
                raise ParseError(f"{loc}/entries/{i}/{j}", str(exc)) from None
            if out[-1] is None:
                raise ParseError(f"{loc}/entries/{i}/{j}", "booleans are not scalars")
        rows.append(out)
    return Mat.from_rows(rows, (p, q))


# --------------------------------------------------------------------------
# MorphismTuple


def tuple_to_json(f: MorphismTuple) -> dict:
    return {"domain": list(f.domain), "codomain": list(f.codomain), "mats": [mat_to_json(m) for m in f.mats]}


def tuple_from_json(obj, loc: str = "") -> MorphismTuple:
    dom = _nat_list(_need(obj, "domain", loc), f"{loc}/domain")
    cod = _nat_list(_need(obj, "codomain", loc), f"{loc}/codomain")
    mats = _need(obj, "mats", loc)
    if not isinstance(mats, list):
        raise ParseError(f"{loc}/mats", "expected a list of matrices")
    ms = [mat_from_json(m, f"{loc}/mats/{k}") for k, m in enumerate(mats)]
    try:
        return MorphismTuple(dom, cod, ms)
    except ValueError as exc:
        raise ParseError(loc, str(exc)) from None


# --------------------------------------------------------------------------
# OneMorphism


def gauge_to_json(g: Gauge) -> dict:
    if isinstance(g, TrivialGauge):
        return {"type": "trivial"}
    if isinstance(g, TableGauge):
        return {
            "type": "table",
            "entries": [{"i": i, "a": list(a), "mat": mat_to_json(m)} for (i, a), m in sorted(g.table.items())],
        }
    if isinstance(g, ComposedGauge):
        return {"type": "composed", "outer": one_to_json(g.outer), "inner": one_to_json(g.inner)}
    raise TypeError(f"cannot serialize gauge of type {type(g).__name__}")


def one_to_json(F: OneMorphism) -> dict:
    return {"src": F.src, "dst": F.dst, "rank": F.rank.tolist(), "gauge": gauge_to_json(F.gauge)}


def one_from_json(obj, loc: str = "") -> OneMorphism:
    n = _nat(_need(obj, "src", loc), f"{loc}/src")
    m = _nat(_need(obj, "dst", loc), f"{loc}/dst")
    rank_rows = _need(obj, "rank", loc)
    if not isinstance(rank_rows, list) or len(rank_rows) != m:
        raise ParseError(f"{loc}/rank", f"expected {m} rows")
    rows = [_nat_list(r, f"{loc}/rank/{i}") for i, r in enumerate(rank_rows)]
    if any(len(r) != n for r in rows):
        raise ParseError(f"{loc}/rank", f"every row must have {n} entries")
    R = RankMatrix(m, n, rows)
    g = obj.get("gauge", {"type": "trivial"})
    gloc = f"{loc}/gauge"
    kind = _need(g, "type", gloc)
    if kind == "trivial":
        return OneMorphism(n, m, R, TrivialGauge(R))
    if kind == "table":
        entries = _need(g, "entries", gloc)
        if not isinstance(entries, list):
            raise ParseError(f"{gloc}/entries", "expected a list")
        table = {}
        for k, e in enumerate(entries):
            eloc = f"{gloc}/entries/{k}"
            i = _nat(_need(e, "i", eloc), f"{eloc}/i")
            a = _nat_list(_need(e, "a", eloc), f"{eloc}/a")
            table[(i, a)] = mat_from_json(_need(e, "mat", eloc), f"{eloc}/mat")
        try:
            return OneMorphism(n, m, R, TableGauge(R, table))
        except (ValueError, IndexError) as exc:
            raise ParseError(gloc, str(exc)) from None
    if kind == "composed":
        outer = one_from_json(_need(g, "outer", gloc), f"{gloc}/outer")
        inner = one_from_json(_need(g, "inner", gloc), f"{gloc}/inner")
        try:
            F = compose1(outer, inner)
        except ValueError as exc:
            raise ParseError(gloc, str(exc)) from None
        if F.rank != R or (F.src, F.dst) != (n, m):
            raise ParseError(f"{loc}/rank", "rank does not match the composition expression")
        return F
    raise ParseError(f"{gloc}/type", f"unknown gauge type {kind!r}")


# --------------------------------------------------------------------------
# TwoMorphism


def two_to_json(T: TwoMorphism) -> dict:
    return {
        "source": one_to_json(T.source),
        "target": one_to_json(T.target),
        "cells": [[None if c is None else mat_to_json(c) for c in row] for row in T.cells()],
    }


def two_from_json(obj, loc: str = "") -> TwoMorphism:
    src = one_from_json(_need(obj, "source", loc), f"{loc}/source")
    tgt = one_from_json(_need(obj, "target", loc), f"{loc}/target")
    rows = _need(obj, "cells", loc)
    if not isinstance(rows, list):
        raise ParseError(f"{loc}/cells", "expected a grid of cells")
    cells = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"{loc}/cells/{i}", "expected a row of cells")
        cells.append([None if c is None else mat_from_json(c, f"{loc}/cells/{i}/{j}") for j, c in enumerate(row)])
    try:
        return TwoMorphism(src, tgt, cells)
    except ValueError as exc:
        raise ParseError(f"{loc}/cells", str(exc)) from None


# --------------------------------------------------------------------------
# tagged values (used for counterexample certificates)


def encode(value: Any) -> Any:
    if isinstance(value, Mat):
        return {"kind": "mat", **mat_to_json(value)}
    if isinstance(value, MorphismTuple):
        return {"kind": "tuple", **tuple_to_json(value)}
    if isinstance(value, OneMorphism):
        return {"kind": "one", **one_to_json(value)}
    if isinstance(value, TwoMorphism):
        return {"kind": "two", **two_to_json(value)}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


_DECODERS = {"mat": mat_from_json, "tuple": tuple_from_json, "one": one_from_json, "two": two_from_json}


def decode(obj: Any, loc: str = "") -> Any:
    if isinstance(obj, dict):
        kind = obj.get("kind")
        if kind in _DECODERS:
            return _DECODERS[kind]({k: v for k, v in obj.items() if k != "kind"}, loc)
        return {k: decode(v, f"{loc}/{k}") for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v, f"{loc}/{k}") for k, v in enumerate(obj)]
    return obj


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise ParseError(str(path), exc.strerror or str(exc)) from None


def dumps(obj: Any, **kw) -> str:
    return json.dumps(obj, **kw)


def write_jsonl(records: Iterable[dict]) -> str:
    return "\n".join(json.dumps(r, sort_keys=False) for r in records)
