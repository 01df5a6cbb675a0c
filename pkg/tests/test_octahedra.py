"""Tests for decompforge.core.octahedra"""

import pytest

from decompforge.core.errors import InvalidInputError
from decompforge.core.octahedra import FlipAudit, Octahedron, edge_sums, flip


def test_groups_split_faces():
    O = Octahedron.of([(0, 1), (2, 3), (4, 5)])
    even, odd = O.groups()
    assert len(even) == len(odd) == 4
    assert (0, 2, 4) in even
    assert O.group_of((1, 2, 4)) == 1
    assert len(O.edges()) == 12


def test_flip_keeps_edge_sums():
    O = Octahedron.of([(0, 1), (2, 3), (4, 5)])
    flipped = flip({}, O)
    assert sorted(flipped.values()) == [-1] * 4 + [1] * 4
    assert all(s == 0 for s in edge_sums(flipped).values())


def test_flip_is_an_involution():
    O = Octahedron.of([(0, 1), (2, 3), (4, 5)])
    start = {(0, 2, 4): 1}
    assert flip(flip(start, O), O, direction=-1) == start


def test_octahedron_needs_distinct_vertices():
    with pytest.raises(InvalidInputError):
        Octahedron.of([(0, 1), (1, 2), (3, 4)])
    with pytest.raises(InvalidInputError):
        Octahedron.of([(0, 1), (2, 3), (4, 5)]).group_of((0, 1, 2))


def test_fits():
    O = Octahedron.of([(0, 1), (2, 3), (4, 5)])
    full = [set(range(6)) - {v} for v in range(6)]
    assert O.fits(full)
    # 0-1 is not an octahedron edge, so dropping it changes nothing
    full[0].discard(1)
    full[1].discard(0)
    assert O.fits(full)
    full[0].discard(2)
    assert not O.fits(full)


def test_flip_tallies_checks_in_audit():
    O = Octahedron.of([(0, 1), (2, 3), (4, 5)])
    audit = FlipAudit()
    flip(flip({}, O, audit=audit), O, direction=-1, audit=audit)
    assert audit.to_dict() == {"flips": 2, "edge_checks": 24}
