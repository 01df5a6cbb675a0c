"""Certificate checkers.

Verifiers are total: they never raise on malformed certificates, they describe what is
wrong in the returned report. Every pipeline routes its output through one of these
before handing it back.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from decompforge.core.hypergraph import GraphEdge, Hypergraph, Matching, TriangleDecomposition, pair


@dataclass(frozen=True, slots=True)
class VerificationReport:
    kind: str
    accepted: bool
    issues: dict[str, list[Any]] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)

    def summary(self) -> str:
        if self.accepted:
            return f"{self.kind}: accepted ({', '.join(f'{k}={v}' for k, v in self.stats.items())})"
        parts = [f"{k}={len(v)}" for k, v in self.issues.items() if v]
        return f"{self.kind}: rejected ({', '.join(parts)})"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "accepted": self.accepted,
            "issues": {k: [list(x) if isinstance(x, tuple) else x for x in v] for k, v in self.issues.items()},
            "stats": dict(self.stats),
        }


def _report(kind: str, issues: dict[str, list[Any]], stats: dict[str, int]) -> VerificationReport:
    issues = {k: v for k, v in issues.items() if v}
    return VerificationReport(kind=kind, accepted=not issues, issues=issues, stats=stats)


def verify_triangle_decomposition(G: Hypergraph, D: TriangleDecomposition) -> VerificationReport:
    """Accept iff every edge of ``G`` lies in exactly one triangle of ``D`` and nothing else is used."""
    malformed: list[Any] = []
    counts: Counter[GraphEdge] = Counter()
    for t in D.triangles:
        if len(t) != 3 or len(set(t)) != 3:
            malformed.append(t)
            continue
        a, b, c = t
        counts.update((pair(a, b), pair(a, c), pair(b, c)))
    host = {(e[0], e[1]) for e in G.edges} if G.r == 2 else set()
    issues: dict[str, list[Any]] = {
        "not_a_graph": [G.r] if G.r != 2 else [],
        "malformed": sorted(malformed),
        "uncovered": sorted(e for e in host if counts[e] == 0),
        "doubly_covered": sorted(e for e, k in counts.items() if k > 1 and e in host),
        "foreign": sorted(e for e in counts if e not in host),
    }
    stats = {"triangles": len(D.triangles), "edges": len(host)}
    return _report("triangle-decomposition", issues, stats)


def verify_matching(H: Hypergraph, M: Matching) -> VerificationReport:
    """Accept iff ``M`` is a matching of ``H`` (not necessarily perfect)."""
    seen: set[int] = set()
    overlapping: list[int] = []
    for edge in M.sorted_edges():
        for v in edge:
            if v in seen:
                overlapping.append(v)
            seen.add(v)
    issues: dict[str, list[Any]] = {
        "foreign": sorted(e for e in M.edges if e not in H.edges),
        "overlapping": sorted(set(overlapping)),
    }
    stats = {"size": M.size, "covered": len(seen), "uncovered": max(0, H.n - len(seen & set(range(H.n))))}
    return _report("matching", issues, stats)


def verify_perfect_matching(H: Hypergraph, M: Matching) -> VerificationReport:
    """Accept iff ``M``'s edges are in ``H``, pairwise disjoint, and cover all ``n`` vertices."""
    base = verify_matching(H, M)
    covered = M.vertices()
    issues = dict(base.issues)
    issues["uncovered"] = [v for v in range(H.n) if v not in covered]
    if H.r > 0 and H.n % H.r:
        issues["divisibility"] = [H.n % H.r]
    return _report("perfect-matching", issues, dict(base.stats))


@dataclass(frozen=True, slots=True)
class DecompositionReport:
    """Verified output certificate of a decomposition pipeline."""

    decomposition: TriangleDecomposition
    verification: VerificationReport
    seed: int
    method: str
    residual: tuple[GraphEdge, ...] = ()
    stats: dict[str, Any] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "seed": self.seed,
            "triangles": [list(t) for t in self.decomposition.sorted_triangles()],
            "residual": [list(e) for e in self.residual],
            "verification": self.verification.to_dict(),
            "stats": dict(self.stats),
            "params": dict(self.params),
        }


@dataclass(frozen=True, slots=True)
class MatchingReport:
    """Verified output certificate of a matching pipeline."""

    matching: Matching
    verification: VerificationReport
    seed: int
    method: str
    stats: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "seed": self.seed,
            "matching": [list(e) for e in self.matching.sorted_edges()],
            "verification": self.verification.to_dict(),
            "stats": dict(self.stats),
        }
