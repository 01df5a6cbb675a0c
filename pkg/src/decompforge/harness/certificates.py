"""Certificate documents on disk and their re-verification.

A certificate document bundles the payload (``triangles``, ``matching`` or ``weights``)
with the digest of the instance it was produced for, so a certificate cannot silently be
checked against the wrong instance.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

from decompforge.core.codec import (
    certificate_kind,
    decomposition_from_dict,
    digest,
    dump_json,
    load_json,
    matching_from_dict,
    weights_from_dict,
)
from decompforge.core.hypergraph import Hypergraph, triangle_edges
from decompforge.core.verify import (
    VerificationReport,
    verify_matching,
    verify_perfect_matching,
    verify_triangle_decomposition,
)


def certificate_document(H: Hypergraph, payload: Mapping[str, Any], **extra: Any) -> dict[str, Any]:
    return {"instance_digest": digest(H), **extra, **payload}


def _verify_weights(H: Hypergraph, data: Mapping[str, Any]) -> VerificationReport:
    weights = weights_from_dict(data)
    negative = sorted(k for k, w in weights.items() if w < 0)
    sums: dict[tuple[int, ...], Fraction] = {}
    if H.r == 2:
        kind = "fractional-decomposition"
        foreign = sorted(t for t in weights if len(t) != 3 or any(e not in H.edges for e in triangle_edges(t)))
        for t, w in weights.items():
            if len(t) == 3:
                for e in triangle_edges(t):
                    sums[e] = sums.get(e, Fraction(0)) + w
        targets = [(e[0], e[1]) for e in H.sorted_edges()]
    else:
        kind = "fractional-matching"
        foreign = sorted(e for e in weights if e not in H.edges)
        for e, w in weights.items():
            for v in e:
                sums[(v,)] = sums.get((v,), Fraction(0)) + w
        targets = [(v,) for v in range(H.n)]
    wrong = [list(k) for k in targets if sums.get(k, Fraction(0)) != 1]
    issues: dict[str, list[Any]] = {"negative": negative, "foreign": foreign, "wrong_sum": wrong}
    issues = {k: v for k, v in issues.items() if v}
    return VerificationReport(kind=kind, accepted=not issues, issues=issues, stats={"support": len(weights)})


def verify_certificate(H: Hypergraph, data: Mapping[str, Any], perfect: bool | None = None) -> VerificationReport:
    """Re-check a certificate document against ``H``.

    A digest mismatch rejects the certificate without looking at its payload. Matchings
    must be perfect unless the document (or ``perfect``) says otherwise.

    Raises:
        InvalidInputError: if the document holds no recognisable payload.
    """
    kind = certificate_kind(data)
    expected = data.get("instance_digest")
    if expected is not None and expected != digest(H):
        return VerificationReport(kind=kind, accepted=False, issues={"digest": [expected]})
    if kind == "triangles":
        return verify_triangle_decomposition(H, decomposition_from_dict(data))
    if kind == "matching":
        M = matching_from_dict(data)
        if perfect is None:
            perfect = bool(data.get("perfect", True))
        return verify_perfect_matching(H, M) if perfect else verify_matching(H, M)
    return _verify_weights(H, data)


def write_certificate(path: str | Path, H: Hypergraph, payload: Mapping[str, Any], **extra: Any) -> Path:
    return dump_json(path, certificate_document(H, payload, **extra))


def reload_and_verify(path: str | Path, H: Hypergraph) -> VerificationReport:
    """Read a certificate back from disk and verify it; used before any success is reported."""
    return verify_certificate(H, load_json(path))
