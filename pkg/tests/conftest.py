import pytest

from a2tilde import tripres

# order-2 presentation with a non-standard point-line correspondence
FIG6_T = [(3, 3, 1), (6, 6, 2), (5, 5, 4), (1, 4, 2), (0, 1, 6), (0, 2, 5), (0, 4, 3)]
FIG6_ALPHA = [[1, 2, 4], [3, 4, 6], [5, 6, 1], [0, 1, 3], [2, 3, 5], [4, 5, 0], [6, 0, 2]]


def figure6():
    alpha = tripres.Alpha.from_point_sets(FIG6_ALPHA)
    return tripres.TrianglePres(alpha, tripres.class_set(FIG6_T))


@pytest.fixture
def fig6():
    return figure6()
