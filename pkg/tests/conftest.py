from itertools import combinations

import pytest


def fano_triangles() -> list[tuple[int, int, int]]:
    """Lines of the Fano plane on vertices 0..6 (vertex v carries the GF(8) label v + 1)."""
    return [
        (a - 1, b - 1, c - 1) for a, b, c in combinations(range(1, 8), 3) if a ^ b == c or a ^ c == b or b ^ c == a
    ]


@pytest.fixture
def fano():
    return fano_triangles()
