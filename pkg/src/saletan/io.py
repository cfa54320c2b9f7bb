"""JSON formats for algebras, tensor maps and run reports.

Rationals are always strings (``"-3/7"``, ``"2"``).  Algebra files list only
nonzero constants::

    {"dim": 3, "arity": 2, "kind": "product",
     "constants": [{"in": [0, 1], "out": 2, "c": "1"}, ...],
     "axioms": ["antisymmetric", "jacobi"], "labels": ["X1", "X2", "X3"]}

For coproducts ``in`` is the single input index and ``out`` the list of
output indices.  Tensor maps are ``{"matrix": [["1", "0"], ["0", "0"]]}``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from . import linalg
from .algebra import COPRODUCT, KNOWN_AXIOMS, PRODUCT, Algebra, StructureTensor, builtin
from .errors import IndexOutOfRange, ParseError, UnknownName


def _as_indices(value, field: str) -> list[int]:
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    if isinstance(value, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in value):
        return list(value)
    raise ParseError("indices must be an integer or a list of integers", field=field)


def tensor_from_json(data: dict) -> StructureTensor:
    try:
        dim, arity = data["dim"], data.get("arity", 2)
        kind = data.get("kind", PRODUCT)
        entries = data.get("constants", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"missing or malformed field ({exc})", field="algebra") from None
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("dim must be a positive integer", field="dim")
    if not isinstance(arity, int) or arity < 1:
        raise ParseError("arity must be a positive integer", field="arity")
    if kind not in (PRODUCT, COPRODUCT):
        raise ParseError(f"unknown kind {kind!r}", field="kind")
    c = linalg.zeros(*((dim,) * (arity + 1)))
    for n, entry in enumerate(entries):
        where = f"constants[{n}]"
        if not isinstance(entry, dict) or {"in", "out", "c"} - entry.keys():
            raise ParseError("entry needs 'in', 'out' and 'c'", field=where)
        idx = _as_indices(entry["in"], where + ".in") + _as_indices(entry["out"], where + ".out")
        if len(idx) != arity + 1:
            raise ParseError(f"expected {arity + 1} indices in total, got {len(idx)}", field=where)
        if any(not 0 <= i < dim for i in idx):
            raise IndexOutOfRange(f"{where}: index out of range for dim {dim}: {idx}")
        try:
            c[tuple(idx)] += linalg.parse_rational(entry["c"])
        except ParseError as exc:
            raise ParseError(str(exc), field=where + ".c") from None
    return StructureTensor(dim, arity, kind, c)


def algebra_from_json(data: dict, name: str | None = None) -> Algebra:
    tensor = tensor_from_json(data)
    axioms = data.get("axioms", [])
    unknown = [a for a in axioms if a not in KNOWN_AXIOMS]
    if unknown:
        raise ParseError(f"unknown axioms {unknown}", field="axioms")
    labels = data.get("labels")
    return Algebra(tensor, frozenset(axioms), tuple(labels) if labels else None, name or data.get("name"))


def tensor_to_json(t: StructureTensor) -> dict:
    constants = []
    for idx, value in t.nonzero():
        if t.kind == PRODUCT:
            entry = {"in": list(idx[:-1]), "out": idx[-1]}
        else:
            entry = {"in": idx[0], "out": list(idx[1:])}
        entry["c"] = linalg.render_rational(value)
        constants.append(entry)
    return {"dim": t.dim, "arity": t.arity, "kind": t.kind, "constants": constants}


def algebra_to_json(alg: Algebra) -> dict:
    out = tensor_to_json(alg.tensor)
    out["axioms"] = sorted(alg.axioms)
    if alg.labels:
        out["labels"] = list(alg.labels)
    if alg.name:
        out["name"] = alg.name
    return out


def matrix_from_json(data: dict) -> np.ndarray:
    rows = data.get("matrix") if isinstance(data, dict) else None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected a non-empty list of rows", field="matrix")
    parsed = []
    for i, row in enumerate(rows):
        try:
            parsed.append([linalg.parse_rational(x) for x in row])
        except ParseError as exc:
            raise ParseError(str(exc), field=f"matrix[{i}]") from None
    if any(len(r) != len(parsed) for r in parsed):
        raise ParseError("tensor map must be square", field="matrix")
    return linalg.matrix(parsed)


def matrix_to_json(m: np.ndarray) -> dict:
    return {"matrix": [[linalg.render_rational(x) for x in row] for row in m]}


def _read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", field=str(path)) from None


def load_algebra(path) -> Algebra:
    """Read an algebra file; declared axioms are re-verified."""
    return algebra_from_json(_read_json(path), name=Path(path).stem)


def load_tensor(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def save_json(data: dict, path) -> None:
    Path(path).write_text(dumps(data))


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


# -- bundled library -------------------------------------------------------------


def data_path(name: str) -> Path:
    return Path(str(resources.files("saletan") / "data" / name))


def bundled_names() -> list[str]:
    return sorted(p.stem for p in Path(str(resources.files("saletan") / "data")).glob("*.json"))


def resolve_algebra(spec: str) -> Algebra:
    """A path, a bundled file name, or a builtin constructor name."""
    path = Path(spec)
    if path.is_file():
        return load_algebra(path)
    bundled = data_path(spec + ".json")
    if bundled.is_file() and "constants" in _read_json(bundled):
        return load_algebra(bundled)
    try:
        return builtin(spec)
    except UnknownName:
        raise UnknownName(f"no algebra file or builtin called {spec!r}") from None


def resolve_tensor(spec: str) -> np.ndarray:
    path = Path(spec)
    if path.is_file():
        return load_tensor(path)
    bundled = data_path(spec + ".json")
    if bundled.is_file():
        return load_tensor(bundled)
    raise UnknownName(f"no tensor file or bundled tensor called {spec!r}")


# -- run reports -------------------------------------------------------------------

TIMESTAMP_PLACEHOLDER = "<timestamp>"


def normalize_report(report: dict) -> dict:
    """Copy of a run report with the timestamp replaced, for golden comparisons."""
    return {**report, "timestamp": TIMESTAMP_PLACEHOLDER}
