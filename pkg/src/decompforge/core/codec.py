"""JSON instance and certificate formats.

Instances are ``{"n": int, "r": int, "edges": [[...], ...]}``; certificates use the keys
``"matching"``, ``"triangles"`` or ``"weights"`` (``[[edge, num, den], ...]``). The
canonical text sorts edges and uses compact separators so equal objects serialise to
identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

from decompforge.core.errors import InvalidInputError, InvalidInstanceError
from decompforge.core.hypergraph import Edge, Hypergraph, Matching, TriangleDecomposition, canonical


def instance_to_dict(H: Hypergraph) -> dict[str, Any]:
    return {"n": H.n, "r": H.r, "edges": [list(e) for e in H.sorted_edges()]}


def instance_from_dict(data: Mapping[str, Any]) -> Hypergraph:
    try:
        n = int(data["n"])
        r = int(data["r"])
        edges = [[int(v) for v in e] for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed instance document: {exc}") from exc
    return Hypergraph.of(n, r, edges)


def matching_to_dict(M: Matching) -> dict[str, Any]:
    return {"matching": [list(e) for e in M.sorted_edges()]}


def decomposition_to_dict(D: TriangleDecomposition) -> dict[str, Any]:
    return {"triangles": [list(t) for t in D.sorted_triangles()]}


def weights_to_dict(weights: Mapping[Edge, Fraction | int]) -> dict[str, Any]:
    rows = []
    for key in sorted(weights):
        value = Fraction(weights[key])
        rows.append([list(key), value.numerator, value.denominator])
    return {"weights": rows}


def weights_from_dict(data: Mapping[str, Any]) -> dict[Edge, Fraction]:
    try:
        return {canonical(row[0]): Fraction(int(row[1]), int(row[2])) for row in data["weights"]}
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"malformed weights document: {exc}") from exc


def canonical_text(data: Mapping[str, Any]) -> str:
    return json.dumps(data, separators=(",", ":"), sort_keys=True)


def digest(H: Hypergraph) -> str:
    """SHA-256 of the canonical instance text."""
    return hashlib.sha256(canonical_text(instance_to_dict(H)).encode("utf-8")).hexdigest()


def dump_json(path: str | Path, data: Mapping[str, Any]) -> Path:
    """Write ``data`` atomically: readers never observe a half-written file."""
    p = Path(path).expanduser()
    p.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", dir=p.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
        os.replace(tmp, p)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return p


def load_json(path: str | Path) -> dict[str, Any]:
    p = Path(path).expanduser()
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidInputError(f"no such file: {p}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{p} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInputError(f"{p} must hold a JSON object")
    return data


def load_instance(path: str | Path) -> Hypergraph:
    return instance_from_dict(load_json(path))


def save_instance(path: str | Path, H: Hypergraph) -> Path:
    return dump_json(path, instance_to_dict(H))


def certificate_kind(data: Mapping[str, Any]) -> str:
    for kind in ("triangles", "matching", "weights"):
        if kind in data:
            return kind
    raise InvalidInputError("certificate has none of the keys 'triangles', 'matching', 'weights'")


def decomposition_from_dict(data: Mapping[str, Any]) -> TriangleDecomposition:
    try:
        triangles = [[int(v) for v in t] for t in data["triangles"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed decomposition document: {exc}") from exc
    if any(len(t) != 3 for t in triangles):
        raise InvalidInstanceError("every triangle needs exactly three vertices")
    return TriangleDecomposition.of(triangles)


def matching_from_dict(data: Mapping[str, Any]) -> Matching:
    try:
        return Matching.of([[int(v) for v in e] for e in data["matching"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matching document: {exc}") from exc
