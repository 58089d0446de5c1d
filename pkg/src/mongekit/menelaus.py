"""Signed division ratios on simplex edges and the hyperplane criterion.

For vertices a_1..a_{n+1} of a simplex in E^n and one point b_ij on each
edge line (off the vertices), the points lie in a common hyperplane
exactly when every triple product lambda_ij^-1 * lambda_ik * lambda_jk^-1
equals 1, where lambda_ij is the signed ratio of the homothety centered
at b_ij taking a_j to a_i.  The sign matters: unsigned length ratios also
give product 1 for edge midpoints, which are never coplanar with each
other in this sense, so an unsigned reading has no equivalence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    CoincidesWithVertex,
    DegenerateConfiguration,
    DimensionMismatch,
    EqualWeights,
    GeometryError,
    InvalidInput,
    NonCoplanar,
    NotOnLine,
)
from .kernel import (
    DEFAULT_TOLERANCE,
    Hyperplane,
    Tolerance,
    _exact_solve,
    affinely_independent,
    fit_hyperplane,
    is_exact,
)

__all__ = [
    "Homothety",
    "EdgePointSet",
    "MenelausReport",
    "signed_ratio",
    "menelaus_products",
    "edge_points_from_weights",
    "monge_hyperplane_from_weights",
]


@dataclass(frozen=True)
class Homothety:
    """Map x -> center + ratio * (x - center) with ratio not in {0, 1}."""

    center: tuple
    ratio: object

    def __post_init__(self):
        if self.ratio == 0 or self.ratio == 1:
            raise InvalidInput("homothety ratio must differ from 0 and 1")

    def apply(self, point):
        if len(point) != len(self.center):
            raise DimensionMismatch("point and center dimensions differ")
        return tuple(c + self.ratio * (x - c) for c, x in zip(self.center, point))


def all_pairs(count):
    """1-based index pairs (i, j), i < j."""
    return list(combinations(range(1, count + 1), 2))


@dataclass(frozen=True)
class EdgePointSet:
    """Simplex vertices plus one marked point per edge line.

    ``edge_points`` maps the 1-based pair (i, j), i < j, to the point on
    the line through vertices i and j.
    """

    vertices: tuple
    edge_points: dict

    @property
    def dimension(self):
        return len(self.vertices[0])

    def validate(self, tol: Tolerance = DEFAULT_TOLERANCE):
        n = self.dimension
        if len(self.vertices) != n + 1:
            raise DimensionMismatch(
                f"need {n + 1} vertices in dimension {n}, got {len(self.vertices)}"
            )
        if not affinely_independent(self.vertices, tol):
            raise DegenerateConfiguration("simplex vertices are affinely dependent")
        expected = set(all_pairs(n + 1))
        got = set(self.edge_points)
        if got != expected:
            raise InvalidInput(
                f"edge point pairs {sorted(got)} do not match expected {sorted(expected)}"
            )
        for (i, j), b in sorted(self.edge_points.items()):
            if len(b) != n:
                raise DimensionMismatch(f"edge point {(i, j)} has wrong dimension")
            # raises NotOnLine / CoincidesWithVertex with pair context
            signed_ratio(self.vertices[i - 1], self.vertices[j - 1], b, tol, pair=(i, j))


@dataclass(frozen=True)
class MenelausReport:
    lambdas: dict
    triple_residuals: dict
    hyperplane: Hyperplane | None
    hyperplane_residual: object
    verdict: bool


def _dist(u, v):
    return math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(u, v)))


def signed_ratio(a_i, a_j, b, tol: Tolerance = DEFAULT_TOLERANCE, pair=None):
    """The unique lambda with a_i = b + lambda * (a_j - b).

    ``b`` must lie on the line through a_i and a_j (within tolerance) and
    must not coincide with either vertex.  Positive lambda puts b outside
    the segment [a_i, a_j]; lambda = -1 is the midpoint.
    """
    if len(a_i) != len(a_j) or len(a_i) != len(b):
        raise DimensionMismatch("points must share one dimension", pair=pair)
    if is_exact([list(a_i), list(a_j), list(b)]):
        ai = [Fraction(x) for x in a_i]
        aj = [Fraction(x) for x in a_j]
        bb = [Fraction(x) for x in b]
        d1 = [x - y for x, y in zip(ai, bb)]
        d2 = [x - y for x, y in zip(aj, bb)]
        if all(x == 0 for x in d2) or all(x == 0 for x in d1):
            raise CoincidesWithVertex("edge point equals a vertex", pair=pair)
        for p in range(len(d1)):
            for q in range(p + 1, len(d1)):
                if d1[p] * d2[q] != d1[q] * d2[p]:
                    raise NotOnLine("point is off the vertex line", pair=pair)
        num = sum(x * y for x, y in zip(d1, d2))
        den = sum(x * x for x in d2)
        return num / den
    ai = np.asarray([float(x) for x in a_i])
    aj = np.asarray([float(x) for x in a_j])
    bb = np.asarray([float(x) for x in b])
    edge = float(np.linalg.norm(aj - ai))
    if edge == 0.0:
        raise DegenerateConfiguration("vertices coincide", pair=pair)
    near = tol.scaled(edge)
    if _dist(b, a_i) <= near or _dist(b, a_j) <= near:
        raise CoincidesWithVertex("edge point equals a vertex", pair=pair)
    direction = (aj - ai) / edge
    rej = (bb - ai) - ((bb - ai) @ direction) * direction
    if float(np.linalg.norm(rej)) > near:
        raise NotOnLine("point is off the vertex line", pair=pair)
    d1 = ai - bb
    d2 = aj - bb
    return float(d1 @ d2) / float(d2 @ d2)


def menelaus_products(eps: EdgePointSet, tol: Tolerance = DEFAULT_TOLERANCE) -> MenelausReport:
    """Evaluate the signed triple products and the hyperplane fit.

    The verdict is true only when every triple residual and the relative
    hyperplane residual pass the tolerance (exact backend: both exactly 0).
    Triple products are evaluated as (lambda_ik / lambda_ij) / lambda_jk
    so that like magnitudes cancel before anything can overflow.
    """
    eps.validate(tol)
    n = eps.dimension
    exact = is_exact([list(v) for v in eps.vertices])
    lambdas = {}
    for (i, j) in all_pairs(n + 1):
        lambdas[(i, j)] = signed_ratio(
            eps.vertices[i - 1], eps.vertices[j - 1], eps.edge_points[(i, j)], tol, pair=(i, j)
        )
    triple_residuals = {}
    for (i, j, k) in combinations(range(1, n + 2), 3):
        prod = (lambdas[(i, k)] / lambdas[(i, j)]) / lambdas[(j, k)]
        triple_residuals[(i, j, k)] = abs(prod - 1)
    thr = 0 if exact else tol.scaled(1.0)
    products_ok = all(r <= thr for r in triple_residuals.values())

    points = [eps.edge_points[p] for p in sorted(eps.edge_points)]
    try:
        plane, plane_res = fit_hyperplane(points, tol)
        plane_ok = plane_res <= thr
    except NonCoplanar:
        plane, plane_res, plane_ok = None, None, False
    except DegenerateConfiguration:
        # edge points span less than a hyperplane, so they certainly lie in one
        plane, plane_res, plane_ok = None, 0, True
    return MenelausReport(
        lambdas=lambdas,
        triple_residuals=triple_residuals,
        hyperplane=plane,
        hyperplane_residual=plane_res,
        verdict=bool(products_ok and plane_ok),
    )


def _check_weights(vertices, weights):
    if len(weights) != len(vertices):
        raise DimensionMismatch("need one weight per vertex")
    for w in weights:
        if w <= 0:
            raise EqualWeights("weights must be positive")
    for a, b in combinations(weights, 2):
        if a == b:
            raise EqualWeights("weights must be pairwise distinct")


def edge_points_from_weights(vertices, weights, tol: Tolerance = DEFAULT_TOLERANCE) -> EdgePointSet:
    """Edge points b_ij = (w_j a_i - w_i a_j) / (w_j - w_i).

    By construction signed_ratio gives lambda_ij = w_i / w_j, so every
    triple product is 1 and the points share a hyperplane.
    """
    vertices = tuple(tuple(v) for v in vertices)
    if not affinely_independent(vertices, tol):
        raise DegenerateConfiguration("simplex vertices are affinely dependent")
    _check_weights(vertices, weights)
    pts = {}
    for (i, j) in all_pairs(len(vertices)):
        wi, wj = weights[i - 1], weights[j - 1]
        denom = wj - wi
        pts[(i, j)] = tuple(
            (wj * x - wi * y) / denom for x, y in zip(vertices[i - 1], vertices[j - 1])
        )
    return EdgePointSet(vertices=vertices, edge_points=pts)


def monge_hyperplane_from_weights(vertices, weights, tol: Tolerance = DEFAULT_TOLERANCE) -> Hyperplane:
    """Zero set of the affine functional g with g(a_k) = w_k.

    The edge points built from the same weights satisfy g(b_ij) = 0, so
    this hyperplane contains all of them.
    """
    vertices = tuple(tuple(v) for v in vertices)
    _check_weights(vertices, weights)
    n = len(vertices[0])
    if len(vertices) != n + 1:
        raise DimensionMismatch(f"need {n + 1} vertices in dimension {n}")
    exact = is_exact([list(v) for v in vertices] + [list(weights)])
    if exact:
        rows = [[Fraction(x) for x in v] + [Fraction(1)] for v in vertices]
        sol = _exact_solve(rows, [Fraction(w) for w in weights])
        if sol is None:
            raise DegenerateConfiguration("simplex vertices are affinely dependent")
        coeffs, const = sol[:n], sol[n]
        if all(c == 0 for c in coeffs):
            raise EqualWeights("weights admit no sloped functional")
        return Hyperplane.build(coeffs, -const)
    a = np.asarray([[float(x) for x in v] for v in vertices])
    m = np.hstack([a, np.ones((n + 1, 1))])
    try:
        sol = np.linalg.solve(m, np.asarray([float(w) for w in weights]))
    except np.linalg.LinAlgError:
        raise DegenerateConfiguration("simplex vertices are affinely dependent") from None
    coeffs, const = sol[:n], float(sol[n])
    if float(np.linalg.norm(coeffs)) <= tol.scaled(abs(const)):
        raise EqualWeights("weights admit no sloped functional")
    return Hyperplane.build(tuple(coeffs), -const)
