import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


from planrank.model import (  # noqa: E402
    Alternative,
    BoundKind,
    CriteriaSet,
    Criterion,
    DecisionMatrix,
    Direction,
    Threshold,
)


def make_criteria(specs):
    """specs: list of (id, direction, weight[, threshold])."""
    items = []
    for spec in specs:
        crit_id, direction, weight = spec[:3]
        threshold = spec[3] if len(spec) > 3 else None
        items.append(Criterion(crit_id, direction, weight, threshold=threshold))
    return CriteriaSet(tuple(items))


def make_matrix(criteria, rows, ids=None):
    if ids is None:
        ids = range(1, len(rows) + 1)
    alternatives = tuple(
        Alternative(alt_id, tuple(row)) for alt_id, row in zip(ids, rows)
    )
    return DecisionMatrix(criteria, alternatives)


@pytest.fixture
def hepatectomy_pair_matrix():
    """The published hepatectomy extreme points: EBL cost, VC benefit."""
    criteria = make_criteria([
        ("ebl", Direction.COST, 0.5),
        ("vc", Direction.BENEFIT, 0.5),
    ])
    return make_matrix(criteria, [[0.03, 0.52], [0.43, 0.06], [0.30, 0.22]])


@pytest.fixture
def whipple_pair_matrix():
    """The published Whipple extreme points, cancer/vessel cost columns."""
    criteria = make_criteria([
        ("cancer", Direction.COST, 0.75),
        ("vessel", Direction.COST, 0.25),
    ])
    return make_matrix(criteria, [[0.07, 0.05], [0.41, 0.409]])
