import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mongekit.errors import (
    CoincidesWithVertex,
    DegenerateConfiguration,
    EqualWeights,
    InvalidInput,
    NotOnLine,
)
from mongekit.kernel import Tolerance
from mongekit.menelaus import (
    EdgePointSet,
    Homothety,
    all_pairs,
    edge_points_from_weights,
    menelaus_products,
    monge_hyperplane_from_weights,
    signed_ratio,
)

TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


def test_signed_ratio_examples():
    a, b = (0.0, 0.0), (1.0, 0.0)
    assert signed_ratio(a, b, (2.0, 0.0)) == pytest.approx(2.0)
    assert signed_ratio(a, b, (0.5, 0.0)) == pytest.approx(-1.0)
    assert signed_ratio(a, b, (-1.0, 0.0)) == pytest.approx(0.5)


def test_signed_ratio_errors():
    a, b = (0.0, 0.0), (1.0, 0.0)
    with pytest.raises(NotOnLine):
        signed_ratio(a, b, (0.5, 0.5))
    with pytest.raises(CoincidesWithVertex):
        signed_ratio(a, b, (1.0, 0.0))
    err = None
    try:
        signed_ratio(a, b, (0.5, 0.5), pair=(1, 2))
    except NotOnLine as e:
        err = e
    assert err is not None and err.pair == (1, 2)


def test_signed_ratio_exact():
    a, b = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
    assert signed_ratio(a, b, (Fraction(-1), Fraction(0))) == Fraction(1, 2)
    with pytest.raises(NotOnLine):
        signed_ratio(a, b, (Fraction(1, 2), Fraction(1, 1000000)))


@given(st.integers(0, 100_000))
@settings(max_examples=60)
def test_signed_ratio_homothety_roundtrip(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    a_j = tuple(rng.uniform(-10, 10, size=n))
    center = tuple(rng.uniform(-10, 10, size=n))
    lam = float(rng.uniform(0.2, 5.0))
    if abs(lam - 1.0) < 0.05:
        lam += 0.1
    h = Homothety(center=center, ratio=lam)
    a_i = h.apply(a_j)
    if math.dist(a_i, a_j) < 1e-6:
        return
    got = signed_ratio(a_i, a_j, center)
    assert got == pytest.approx(lam, rel=1e-9, abs=1e-9)


def test_weight_construction_small_triangle():
    eps = edge_points_from_weights(TRIANGLE, (1.0, 2.0, 4.0))
    assert eps.edge_points[(1, 2)] == pytest.approx((-1.0, 0.0))
    assert eps.edge_points[(1, 3)] == pytest.approx((0.0, -1.0 / 3.0))
    assert eps.edge_points[(2, 3)] == pytest.approx((2.0, -1.0))
    report = menelaus_products(eps)
    assert report.verdict
    assert report.lambdas[(1, 2)] == pytest.approx(0.5)
    assert report.lambdas[(1, 3)] == pytest.approx(0.25)
    assert report.lambdas[(2, 3)] == pytest.approx(0.5)
    assert max(report.triple_residuals.values()) <= 1e-12
    # functional 1 + x + 3y vanishes on all three edge points
    plane = monge_hyperplane_from_weights(TRIANGLE, (1.0, 2.0, 4.0))
    assert plane.normal == pytest.approx((1.0 / 3.0, 1.0))
    assert float(plane.offset) == pytest.approx(-1.0 / 3.0)
    for b in eps.edge_points.values():
        assert plane.distance(b) <= 1e-12


def test_weight_construction_matches_three_circle_centers():
    vertices = ((0.0, 0.0), (6.0, 0.0), (0.0, 6.0))
    eps = edge_points_from_weights(vertices, (3.0, 2.0, 1.0))
    assert eps.edge_points[(1, 2)] == pytest.approx((18.0, 0.0))
    assert eps.edge_points[(1, 3)] == pytest.approx((0.0, 9.0))
    assert eps.edge_points[(2, 3)] == pytest.approx((-6.0, 12.0))
    report = menelaus_products(eps)
    assert report.verdict
    assert report.lambdas[(1, 2)] == pytest.approx(1.5)
    assert report.lambdas[(1, 3)] == pytest.approx(3.0)
    assert report.lambdas[(2, 3)] == pytest.approx(2.0)
    # the fitted hyperplane is x + 2y = 18
    assert report.hyperplane.normal == pytest.approx((0.5, 1.0), abs=1e-10)
    assert float(report.hyperplane.offset) == pytest.approx(9.0, abs=1e-9)


def test_midpoints_fail_despite_unsigned_product_one():
    mids = {
        (1, 2): (0.5, 0.0),
        (1, 3): (0.0, 0.5),
        (2, 3): (0.5, 0.5),
    }
    eps = EdgePointSet(vertices=TRIANGLE, edge_points=mids)
    report = menelaus_products(eps)
    assert not report.verdict
    for lam in report.lambdas.values():
        assert lam == pytest.approx(-1.0)
    # signed triple product is -1, residual 2, even though |lambda| products are 1
    assert report.triple_residuals[(1, 2, 3)] == pytest.approx(2.0)
    assert report.hyperplane_residual > 1e-3


def test_exact_mode_verdicts():
    vertices = tuple(tuple(Fraction(x) for x in v) for v in ((0, 0), (1, 0), (0, 1)))
    eps = edge_points_from_weights(vertices, (Fraction(1), Fraction(2), Fraction(4)))
    report = menelaus_products(eps)
    assert report.verdict
    assert report.lambdas[(1, 2)] == Fraction(1, 2)
    assert report.hyperplane_residual == 0
    assert report.hyperplane.normal == (Fraction(1), Fraction(3))
    assert report.hyperplane.offset == Fraction(-1)
    # perturb one edge point along its line: exact verdict flips
    moved = dict(eps.edge_points)
    moved[(1, 2)] = (moved[(1, 2)][0] + Fraction(1, 100), Fraction(0))
    report2 = menelaus_products(EdgePointSet(vertices=vertices, edge_points=moved))
    assert not report2.verdict
    assert report2.hyperplane is None or report2.hyperplane_residual != 0


def test_weight_validation():
    with pytest.raises(EqualWeights):
        edge_points_from_weights(TRIANGLE, (1.0, 1.0, 2.0))
    with pytest.raises(EqualWeights):
        edge_points_from_weights(TRIANGLE, (1.0, -2.0, 3.0))
    with pytest.raises(DegenerateConfiguration):
        edge_points_from_weights(((0, 0), (1, 1), (2, 2)), (1, 2, 3))
    with pytest.raises(EqualWeights):
        monge_hyperplane_from_weights(TRIANGLE, (2.0, 2.0, 2.0))


def test_edge_point_set_validation():
    eps = EdgePointSet(vertices=TRIANGLE, edge_points={(1, 2): (0.5, 0.0)})
    with pytest.raises(InvalidInput):
        eps.validate()
    bad = EdgePointSet(
        vertices=TRIANGLE,
        edge_points={(1, 2): (2.0, 0.5), (1, 3): (0.0, 2.0), (2, 3): (2.0, -1.0)},
    )
    with pytest.raises(NotOnLine):
        bad.validate()


@given(st.integers(0, 100_000), st.integers(2, 5))
@settings(max_examples=40, deadline=None)
def test_weight_construction_verifies_and_perturbation_flips(seed, n):
    rng = np.random.default_rng(seed)
    while True:
        vertices = tuple(tuple(rng.uniform(-10, 10, size=n)) for _ in range(n + 1))
        diffs = np.asarray(vertices[1:]) - np.asarray(vertices[0])
        if np.linalg.svd(diffs, compute_uv=False)[-1] > 1.0:
            break
    w = [float(rng.uniform(1.0, 1.3))]
    for _ in range(n):
        w.append(w[-1] * float(rng.uniform(1.2, 1.3)))
    order = rng.permutation(n + 1)
    weights = tuple(w[i] for i in order)
    eps = edge_points_from_weights(vertices, weights)
    report = menelaus_products(eps)
    assert report.verdict
    for (i, j), lam in report.lambdas.items():
        assert lam == pytest.approx(weights[i - 1] / weights[j - 1], rel=1e-9)
    ref = monge_hyperplane_from_weights(vertices, weights)
    got = np.asarray(report.hyperplane.normal, dtype=float)
    want = np.asarray(ref.as_float().normal, dtype=float)
    assert np.allclose(got, want, atol=1e-8)
    # move one edge point along its line by 1e-3 of the edge length
    pairs = all_pairs(n + 1)
    i, j = pairs[int(rng.integers(0, len(pairs)))]
    ai = np.asarray(vertices[i - 1])
    aj = np.asarray(vertices[j - 1])
    moved = dict(eps.edge_points)
    moved[(i, j)] = tuple(np.asarray(moved[(i, j)]) + 1e-3 * (aj - ai))
    flipped = menelaus_products(EdgePointSet(vertices=vertices, edge_points=moved))
    assert not flipped.verdict
