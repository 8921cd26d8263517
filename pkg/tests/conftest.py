import pytest

from transversal import Presentation, TransversalMatroid
from transversal.core import GroundSet, RankOracle


@pytest.fixture
def fan():
    """Three 3-sets meeting exactly in the element e."""
    return TransversalMatroid(
        Presentation.from_labels(
            "euvwxyz", [["e", "u", "v"], ["e", "w", "x"], ["e", "y", "z"]]
        )
    )


@pytest.fixture
def chain():
    """Three 5-sets overlapping in a chain around e."""
    return TransversalMatroid(
        Presentation.from_labels(
            "estuvwxyz",
            [
                ["e", "s", "t", "u", "v"],
                ["e", "u", "v", "w", "x"],
                ["e", "w", "x", "y", "z"],
            ],
        )
    )


@pytest.fixture
def clones():
    """Four identical copies of a 5-set."""
    return TransversalMatroid(
        Presentation.from_labels("ewxyz", [["e", "w", "x", "y", "z"]] * 4)
    )


@pytest.fixture
def u24():
    return TransversalMatroid(
        Presentation.from_labels("abcd", [["a", "b", "c", "d"], ["a", "b", "c", "d"]])
    )


@pytest.fixture
def free3():
    return TransversalMatroid(Presentation.from_labels("abc", [["a"], ["b"], ["c"]]))


K4_EDGES = {
    "ab": (0, 1),
    "ac": (0, 2),
    "ad": (0, 3),
    "bc": (1, 2),
    "bd": (1, 3),
    "cd": (2, 3),
}


@pytest.fixture
def k4_oracle():
    """Cycle matroid of the complete graph on 4 vertices, as a rank oracle."""
    ground = GroundSet(sorted(K4_EDGES))

    def rank_of_mask(mask):
        parent = list(range(4))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        rank = 0
        for pos, label in enumerate(ground.labels):
            if (mask >> pos) & 1:
                a, b = (find(v) for v in K4_EDGES[label])
                if a != b:
                    parent[a] = b
                    rank += 1
        return rank

    return RankOracle(ground, rank_of_mask)


def uniform_oracle(labels, r):
    """Uniform matroid of rank ``r`` on the given labels."""
    ground = GroundSet(labels)
    return RankOracle(ground, lambda mask: min(mask.bit_count(), r))
