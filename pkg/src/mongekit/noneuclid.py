"""Constant-curvature analogs: the unit sphere and the hyperboloid model.

Points of S^n live on the unit sphere of E^{n+1}; points of H^n live on
the upper sheet of <x, x>_L = -1 where <x, y>_L = -x_0 y_0 + sum x_k y_k.
Lines are intersections with two-dimensional linear subspaces, and the
edge-point ratio lambda_ij uses sin (sphere) or sinh (hyperboloid) of
geodesic distances in place of Euclidean lengths.  Hyperplane sections
are zero sets {x : B(w, x) = 0} of the ambient bilinear form; on the
hyperboloid a valid w must be spacelike.

Everything here runs on the float backend only; the transcendental
functions admit no exact rational treatment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    AntipodalPoints,
    ArcOrderViolation,
    CoincidesWithVertex,
    DegenerateConfiguration,
    DimensionMismatch,
    GeometryError,
    InvalidInput,
    NotOnLine,
    NotSpacelike,
    NotTimelike,
)
from .kernel import DEFAULT_TOLERANCE, Tolerance, _float_rank
from .menelaus import _check_weights, all_pairs

__all__ = [
    "SPHERICAL",
    "HYPERBOLIC",
    "XnPoint",
    "XnHyperplane",
    "XnConfig",
    "XnMenelausReport",
    "sphere_point",
    "hyperboloid_point",
    "geodesic_distance",
    "arc_contains",
    "xn_homothety_image",
    "xn_lambda",
    "lambda_from_span",
    "lambda_from_distances",
    "xn_independent",
    "xn_hyperplane_fit",
    "verify_prop2",
    "xn_edge_points_from_weights",
]

SPHERICAL = "spherical"
HYPERBOLIC = "hyperbolic"

ANTIPODAL_GUARD = 1e-9
SURFACE_SLACK = 1e-6  # how far off the model surface input coordinates may sit


def _lorentz_dot(u, v):
    return float(-u[0] * v[0] + u[1:] @ v[1:])


@dataclass(frozen=True)
class XnPoint:
    """A point of S^n or H^n, tagged with its geometry."""

    geometry: str
    coords: tuple

    @property
    def dimension(self):
        return len(self.coords) - 1

    def as_array(self):
        return np.asarray(self.coords, dtype=float)


def sphere_point(coords) -> XnPoint:
    v = np.asarray([float(x) for x in coords])
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > SURFACE_SLACK:
        raise InvalidInput(f"norm {nrm:.9f} is too far from 1 for a sphere point")
    return XnPoint(geometry=SPHERICAL, coords=tuple(float(x) for x in v / nrm))


def hyperboloid_point(coords) -> XnPoint:
    v = np.asarray([float(x) for x in coords])
    q = -_lorentz_dot(v, v)
    if q <= 0:
        raise NotTimelike("coordinates are not timelike")
    if abs(q - 1.0) > 2 * SURFACE_SLACK:
        raise InvalidInput(f"Lorentz norm {-q:.9f} is too far from -1 for a hyperboloid point")
    v = v / math.sqrt(q)
    if v[0] <= 0:
        raise InvalidInput("hyperboloid points must have positive first coordinate")
    return XnPoint(geometry=HYPERBOLIC, coords=tuple(float(x) for x in v))


def _make_point(geometry, vector) -> XnPoint:
    if geometry == SPHERICAL:
        return sphere_point(vector)
    return hyperboloid_point(vector)


def _same_space(*points):
    geos = {p.geometry for p in points}
    if len(geos) > 1:
        raise DimensionMismatch("points belong to different geometries")
    dims = {p.dimension for p in points}
    if len(dims) > 1:
        raise DimensionMismatch("points have different dimensions")
    g = next(iter(geos))
    if g not in (SPHERICAL, HYPERBOLIC):
        raise InvalidInput(f"unknown geometry {g!r}")
    return g


def geodesic_distance(x: XnPoint, y: XnPoint) -> float:
    """Geodesic distance, computed from chords for stability at small gaps.

    On the sphere |x - y| = 2 sin(d/2) (switching to |x + y| past a right
    angle); on the hyperboloid <x-y, x-y>_L = 4 sinh^2(d/2).  Both avoid
    the catastrophic cancellation the direct acos/acosh of the dot product
    suffers when d is small.
    """
    g = _same_space(x, y)
    u, v = x.as_array(), y.as_array()
    if g == SPHERICAL:
        if float(u @ v) >= 0.0:
            half = float(np.linalg.norm(u - v)) / 2.0
            return 2.0 * math.asin(min(1.0, half))
        half = float(np.linalg.norm(u + v)) / 2.0
        return math.pi - 2.0 * math.asin(min(1.0, half))
    diff = u - v
    chord_sq = max(0.0, _lorentz_dot(diff, diff))
    return 2.0 * math.asinh(math.sqrt(chord_sq) / 2.0)


def arc_contains(x: XnPoint, z: XnPoint, y: XnPoint, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when y lies on the geodesic arc from x to z.

    Tests the triangle equality |xy| + |yz| = |xz| within tolerance.  On
    the sphere the arc endpoints must stay short of antipodal.
    """
    g = _same_space(x, z, y)
    dxz = geodesic_distance(x, z)
    if g == SPHERICAL and dxz >= math.pi - ANTIPODAL_GUARD:
        raise AntipodalPoints("arc endpoints are (nearly) antipodal")
    gap = geodesic_distance(x, y) + geodesic_distance(y, z) - dxz
    return gap <= tol.scaled(1.0)


def _tangent_toward(center: XnPoint, target: XnPoint, dist):
    c, p = center.as_array(), target.as_array()
    if center.geometry == SPHERICAL:
        return (p - c * math.cos(dist)) / math.sin(dist)
    return (p - c * math.cosh(dist)) / math.sinh(dist)


def xn_homothety_image(center: XnPoint, p: XnPoint, lam, tol: Tolerance = DEFAULT_TOLERANCE) -> XnPoint:
    """Point at distance lam * |center p| from center along the ray to p."""
    g = _same_space(center, p)
    if lam <= 0:
        raise InvalidInput("ratio must be positive")
    d = geodesic_distance(center, p)
    if d <= tol.scaled(1.0):
        raise CoincidesWithVertex("homothety center coincides with the point")
    if g == SPHERICAL and d >= math.pi - ANTIPODAL_GUARD:
        raise AntipodalPoints("center and point are (nearly) antipodal")
    t = float(lam) * d
    if g == SPHERICAL:
        if t >= math.pi - ANTIPODAL_GUARD:
            raise AntipodalPoints("image distance reaches the antipode")
        u = _tangent_toward(center, p, d)
        vec = center.as_array() * math.cos(t) + u * math.sin(t)
    else:
        u = _tangent_toward(center, p, d)
        vec = center.as_array() * math.cosh(t) + u * math.sinh(t)
    return _make_point(g, vec)


def lambda_from_span(a_i: XnPoint, a_j: XnPoint, b: XnPoint, tol: Tolerance = DEFAULT_TOLERANCE):
    """Ratio |beta / alpha| from the decomposition b = alpha a_i + beta a_j.

    The coefficients are found by Euclidean least squares in the ambient
    space; a large residual means b is off the line through a_i and a_j.
    """
    _same_space(a_i, a_j, b)
    m = np.stack([a_i.as_array(), a_j.as_array()], axis=1)
    sol, *_ = np.linalg.lstsq(m, b.as_array(), rcond=None)
    alpha, beta = float(sol[0]), float(sol[1])
    gap = float(np.linalg.norm(m @ sol - b.as_array()))
    if gap > tol.scaled(1.0):
        raise NotOnLine("edge point is off the vertex line")
    if alpha == 0.0:
        raise NotOnLine("edge point is in the direction of a vertex")
    return abs(beta / alpha)


def lambda_from_distances(a_i: XnPoint, a_j: XnPoint, b: XnPoint):
    """sin or sinh ratio of the two sub-arcs |a_i b| and |b a_j|."""
    g = _same_space(a_i, a_j, b)
    d_ib = geodesic_distance(a_i, b)
    d_bj = geodesic_distance(b, a_j)
    if g == SPHERICAL:
        return math.sin(d_ib) / math.sin(d_bj)
    return math.sinh(d_ib) / math.sinh(d_bj)


def xn_lambda(a_i: XnPoint, a_j: XnPoint, b: XnPoint, tol: Tolerance = DEFAULT_TOLERANCE, pair=None):
    """Homothety-analog ratio of the edge point b on the line a_i a_j.

    Requires a_j on the arc from a_i to b.  The sphere value is computed
    from the span decomposition, the hyperboloid value from sinh of the
    stable geodesic distances; the two agree on valid input.
    """
    try:
        g = _same_space(a_i, a_j, b)
        d_ij = geodesic_distance(a_i, a_j)
        if d_ij <= tol.scaled(1.0):
            raise CoincidesWithVertex("vertices coincide")
        if g == SPHERICAL and d_ij >= math.pi - ANTIPODAL_GUARD:
            raise AntipodalPoints("vertices are (nearly) antipodal")
        near = tol.scaled(1.0)
        if geodesic_distance(b, a_i) <= near or geodesic_distance(b, a_j) <= near:
            raise CoincidesWithVertex("edge point coincides with a vertex")
        lam_span = lambda_from_span(a_i, a_j, b, tol)
        if not arc_contains(a_i, b, a_j, tol):
            raise ArcOrderViolation("second vertex is not on the arc to the edge point")
        if g == SPHERICAL:
            return lam_span
        return lambda_from_distances(a_i, a_j, b)
    except GeometryError as e:
        if pair is not None and e.pair is None:
            e.pair = pair
            e.args = (f"pair {pair}: {e.args[0]}",) if e.args else (f"pair {pair}",)
        raise


def xn_independent(points, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when the ambient coordinate vectors are linearly independent."""
    if not points:
        raise InvalidInput("need at least one point")
    _same_space(*points)
    m = np.stack([p.as_array() for p in points])
    return _float_rank(m, tol) == len(points)


def _normalize_max_entry(w):
    k = int(np.argmax(np.abs(w)))
    if w[k] == 0.0:
        raise InvalidInput("hyperplane normal must be nonzero")
    return w / w[k]


@dataclass(frozen=True)
class XnHyperplane:
    """Section {x : B(w, x) = 0} with the largest normal entry scaled to 1."""

    geometry: str
    normal: tuple

    def evaluate(self, point: XnPoint):
        w = np.asarray(self.normal)
        x = point.as_array()
        if self.geometry == HYPERBOLIC:
            return _lorentz_dot(w, x)
        return float(w @ x)


def xn_hyperplane_fit(points, tol: Tolerance = DEFAULT_TOLERANCE):
    """Least-squares hyperplane section through ambient points.

    Returns (hyperplane, residual) where residual is the largest |B(w, x)|
    over the points with w in canonical scaling.  Needs the points to span
    at least dimension n; the hyperboloid normal must come out spacelike.
    """
    if not points:
        raise InvalidInput("need at least one point")
    g = _same_space(*points)
    n = points[0].dimension
    rows = np.stack([p.as_array() for p in points])
    if g == HYPERBOLIC:
        rows = rows.copy()
        rows[:, 0] = -rows[:, 0]
    rk = _float_rank(rows, tol)
    if rk < n:
        raise DegenerateConfiguration(f"points span rank {rk} < {n}, section not determined")
    _, _, vt = np.linalg.svd(rows)
    w = _normalize_max_entry(vt[-1])
    if g == HYPERBOLIC and _lorentz_dot(w, w) <= 0:
        raise NotSpacelike("fitted section normal is not spacelike")
    residual = float(np.max(np.abs(rows @ w)))
    return XnHyperplane(geometry=g, normal=tuple(w)), residual


@dataclass(frozen=True)
class XnConfig:
    """Simplex-like vertex tuple on X^n plus one edge point per pair."""

    vertices: tuple
    edge_points: dict

    @property
    def geometry(self):
        return self.vertices[0].geometry

    @property
    def dimension(self):
        return self.vertices[0].dimension

    def validate(self, tol: Tolerance = DEFAULT_TOLERANCE):
        pts = list(self.vertices) + [self.edge_points[k] for k in sorted(self.edge_points)]
        _same_space(*pts)
        n = self.dimension
        if len(self.vertices) != n + 1:
            raise DimensionMismatch(
                f"need {n + 1} vertices on a {n}-dimensional space, got {len(self.vertices)}"
            )
        if set(self.edge_points) != set(all_pairs(n + 1)):
            raise InvalidInput("edge point pairs do not cover all vertex pairs exactly once")
        if not xn_independent(self.vertices, tol):
            raise DegenerateConfiguration("vertex vectors are linearly dependent")


@dataclass(frozen=True)
class XnMenelausReport:
    lambdas: dict
    triple_residuals: dict
    hyperplane: XnHyperplane | None
    hyperplane_residual: float | None
    verdict: bool


def verify_prop2(config: XnConfig, tol: Tolerance = DEFAULT_TOLERANCE) -> XnMenelausReport:
    """Test the triple products and common section of an X^n edge-point set.

    The verdict is true when every product lambda_ij^-1 lambda_ik
    lambda_jk^-1 is 1 within tolerance and one hyperplane section carries
    all edge points within tolerance.
    """
    config.validate(tol)
    n = config.dimension
    lambdas = {}
    for (i, j) in all_pairs(n + 1):
        lambdas[(i, j)] = xn_lambda(
            config.vertices[i - 1], config.vertices[j - 1],
            config.edge_points[(i, j)], tol, pair=(i, j),
        )
    triple_residuals = {}
    for (i, j, k) in combinations(range(1, n + 2), 3):
        prod = (lambdas[(i, k)] / lambdas[(i, j)]) / lambdas[(j, k)]
        triple_residuals[(i, j, k)] = abs(prod - 1.0)
    thr = tol.scaled(1.0)
    products_ok = all(r <= thr for r in triple_residuals.values())
    points = [config.edge_points[p] for p in sorted(config.edge_points)]
    try:
        plane, plane_res = xn_hyperplane_fit(points, tol)
        plane_ok = plane_res <= thr
    except (DegenerateConfiguration, NotSpacelike):
        plane, plane_res, plane_ok = None, None, False
    return XnMenelausReport(
        lambdas=lambdas,
        triple_residuals=triple_residuals,
        hyperplane=plane,
        hyperplane_residual=plane_res,
        verdict=bool(products_ok and plane_ok),
    )


def xn_edge_points_from_weights(vertices, weights, tol: Tolerance = DEFAULT_TOLERANCE) -> XnConfig:
    """Edge points b_ij ~ -w_j a_i + w_i a_j normalized back to the surface.

    Guarantees lambda_ij = w_i / w_j and puts every b_ij on the section
    {x : B(w, x) = 0} for the w interpolating B(w, a_k) = w_k.  On the
    hyperboloid the combination must be timelike and the arc condition
    satisfiable; pairs violating either are rejected.
    """
    vertices = tuple(vertices)
    g = _same_space(*vertices)
    if not xn_independent(vertices, tol):
        raise DegenerateConfiguration("vertex vectors are linearly dependent")
    _check_weights(vertices, weights)
    edge_points = {}
    for (i, j) in all_pairs(len(vertices)):
        wi, wj = float(weights[i - 1]), float(weights[j - 1])
        v = -wj * vertices[i - 1].as_array() + wi * vertices[j - 1].as_array()
        if g == SPHERICAL:
            nrm = float(np.linalg.norm(v))
            if nrm == 0.0:
                raise DegenerateConfiguration("weight combination vanished", pair=(i, j))
            candidates = [v / nrm, -v / nrm]
        else:
            s = _lorentz_dot(v, v)
            if s >= 0:
                raise NotTimelike(
                    "weight combination is not timelike; vertices too far apart "
                    "for this weight ratio", pair=(i, j),
                )
            w = v / math.sqrt(-s)
            candidates = [w if w[0] > 0 else -w]
        placed = None
        for cand in candidates:
            b = _make_point(g, cand)
            try:
                if arc_contains(vertices[i - 1], b, vertices[j - 1], tol):
                    placed = b
                    break
            except AntipodalPoints:
                continue
        if placed is None:
            raise ArcOrderViolation(
                "no sign choice puts the second vertex on the arc", pair=(i, j)
            )
        edge_points[(i, j)] = placed
    return XnConfig(vertices=vertices, edge_points=edge_points)
