"""Bounded and unbounded convex shapes plus pairwise homothety detection.

Three shape kinds are supported: Ball, VertexSet (a finite point cloud,
usually polytope vertices) and HalfspaceSet (intersection of closed half
spaces, possibly unbounded).  detect_homothety(src, dst) finds the unique
homothety with ratio above 1 mapping src onto dst, or explains why there
is none.  All shapes work on both scalar backends; half-space feasibility
is probed with an LP on a float copy of the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DegenerateShape,
    DimensionMismatch,
    InfeasibleRegion,
    InvalidInput,
    NonUniqueHomothety,
    NotHomothetic,
    RatioNotGreaterThanOne,
    UnboundedShape,
)
from .kernel import (
    DEFAULT_TOLERANCE,
    Tolerance,
    _exact_solve,
    _float_rank,
    is_exact,
)
from .menelaus import Homothety
from .errors import DegenerateConfiguration

__all__ = [
    "Ball",
    "VertexSet",
    "HalfspaceSet",
    "Halfspace",
    "detect_homothety",
    "size_measure",
    "apply_homothety",
]


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: object

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(self.center))
        if self.radius <= 0:
            raise InvalidInput("ball radius must be positive")

    @property
    def dimension(self):
        return len(self.center)

    kind = "ball"


@dataclass(frozen=True)
class VertexSet:
    """Finite set of points; duplicates are dropped on construction."""

    vertices: tuple

    def __post_init__(self):
        seen = []
        for v in self.vertices:
            t = tuple(v)
            if t not in seen:
                seen.append(t)
        if not seen:
            raise InvalidInput("vertex set must be non-empty")
        if len({len(v) for v in seen}) > 1:
            raise DimensionMismatch("vertices have inconsistent dimensions")
        object.__setattr__(self, "vertices", tuple(seen))

    @property
    def dimension(self):
        return len(self.vertices[0])

    kind = "vertices"


def _unit_normal_float(normal, offset):
    nrm = math.sqrt(sum(float(x) ** 2 for x in normal))
    if nrm == 0.0:
        raise InvalidInput("half-space normal must be nonzero")
    return tuple(float(x) / nrm for x in normal), float(offset) / nrm


def _primitive_normal_exact(normal, offset):
    normal = [Fraction(x) for x in normal]
    if all(x == 0 for x in normal):
        raise InvalidInput("half-space normal must be nonzero")
    denom_lcm = 1
    for f in normal:
        denom_lcm = denom_lcm * f.denominator // math.gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in normal]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    scale = Fraction(denom_lcm, g)  # positive: orientation preserved
    return tuple(Fraction(v // g) for v in ints), Fraction(offset) * scale


@dataclass(frozen=True)
class Halfspace:
    """Closed half-space {x : normal . x >= offset} in canonical scaling."""

    normal: tuple
    offset: object


@dataclass(frozen=True)
class HalfspaceSet:
    constraints: tuple

    def __post_init__(self):
        canon = []
        for c in self.constraints:
            if isinstance(c, Halfspace):
                n, d = c.normal, c.offset
            else:
                n, d = c
            if is_exact([list(n), d]):
                n, d = _primitive_normal_exact(n, d)
            else:
                n, d = _unit_normal_float(n, d)
            canon.append(Halfspace(normal=n, offset=d))
        if not canon:
            raise InvalidInput("half-space set must be non-empty")
        if len({len(h.normal) for h in canon}) > 1:
            raise DimensionMismatch("constraint normals have inconsistent dimensions")
        if len({(h.normal, h.offset) for h in canon}) != len(canon):
            raise InvalidInput("duplicate half-space constraint")
        object.__setattr__(self, "constraints", tuple(canon))
        if not self._feasible():
            raise InfeasibleRegion("half-space constraints have empty intersection")

    def _feasible(self):
        a = -np.asarray([[float(x) for x in h.normal] for h in self.constraints])
        b = -np.asarray([float(h.offset) for h in self.constraints])
        res = linprog(np.zeros(self.dimension), A_ub=a, b_ub=b,
                      bounds=[(None, None)] * self.dimension, method="highs")
        return res.status == 0

    @property
    def dimension(self):
        return len(self.constraints[0].normal)

    kind = "halfspaces"


# ----------------------------------------------------------------------
# size

def _sq_dist_exact(u, v):
    return sum((Fraction(a) - Fraction(b)) ** 2 for a, b in zip(u, v))


def _exact_sqrt(value: Fraction):
    if value < 0:
        return None
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _vertexset_diameter(vs: VertexSet):
    if len(vs.vertices) == 1:
        return 0 if is_exact([list(vs.vertices[0])]) else 0.0
    if is_exact([list(v) for v in vs.vertices]):
        best = max(_sq_dist_exact(u, v) for u, v in combinations(vs.vertices, 2))
        root = _exact_sqrt(best)
        return root if root is not None else math.sqrt(float(best))
    pts = np.asarray([[float(x) for x in v] for v in vs.vertices])
    best = 0.0
    for i in range(len(pts)):
        d = np.linalg.norm(pts[i + 1:] - pts[i], axis=1)
        if d.size:
            best = max(best, float(d.max()))
    return best


def _halfspace_vertices(hs: HalfspaceSet, tol: Tolerance):
    n = hs.dimension
    normals = np.asarray([[float(x) for x in h.normal] for h in hs.constraints])
    offsets = np.asarray([float(h.offset) for h in hs.constraints])
    for sign in (1.0, -1.0):
        for axis in range(n):
            c = np.zeros(n)
            c[axis] = sign
            res = linprog(c, A_ub=-normals, b_ub=-offsets,
                          bounds=[(None, None)] * n, method="highs")
            if res.status == 3:
                raise UnboundedShape("half-space intersection is unbounded")
            if res.status != 0:
                raise InfeasibleRegion("half-space constraints have empty intersection")
    scale = max(1.0, float(np.abs(offsets).max()))
    slack = tol.scaled(scale)
    found = []
    for idx in combinations(range(len(hs.constraints)), n):
        a = normals[list(idx)]
        b = offsets[list(idx)]
        if _float_rank(a, tol) < n:
            continue
        x = np.linalg.lstsq(a, b, rcond=None)[0]
        if np.max(np.abs(a @ x - b)) > slack:
            continue
        if np.all(normals @ x >= offsets - slack):
            key = tuple(np.round(x, 9))
            if key not in {k for k, _ in found}:
                found.append((key, x))
    if not found:
        raise DegenerateShape("bounded half-space set has no vertices")
    return np.asarray([x for _, x in found])


def size_measure(shape, tol: Tolerance = DEFAULT_TOLERANCE):
    """Radius for balls, diameter for vertex sets and bounded polytopes.

    Raises UnboundedShape when the half-space intersection is unbounded
    and DegenerateShape when the extent is zero.
    """
    if isinstance(shape, Ball):
        return shape.radius
    if isinstance(shape, VertexSet):
        d = _vertexset_diameter(shape)
        if d == 0:
            raise DegenerateShape("vertex set has zero diameter")
        return d
    if isinstance(shape, HalfspaceSet):
        verts = _halfspace_vertices(shape, tol)
        if len(verts) == 1:
            raise DegenerateShape("half-space set has zero diameter")
        best = 0.0
        for i in range(len(verts)):
            d = np.linalg.norm(verts[i + 1:] - verts[i], axis=1)
            if d.size:
                best = max(best, float(d.max()))
        return best
    raise InvalidInput(f"unsupported shape type {type(shape).__name__}")


# ----------------------------------------------------------------------
# homothety detection

def _centroid(vertices, exact):
    m = len(vertices)
    if exact:
        return tuple(sum(Fraction(v[k]) for v in vertices) / m for k in range(len(vertices[0])))
    return tuple(float(sum(float(v[k]) for v in vertices)) / m for k in range(len(vertices[0])))


def _center_from_ratio(lam, c_from, c_to):
    return tuple((lam * a - b) / (lam - 1) for a, b in zip(c_from, c_to))


def _hausdorff(a_pts, b_pts):
    a = np.asarray(a_pts, dtype=float)
    b = np.asarray(b_pts, dtype=float)
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return max(float(d.min(axis=1).max()), float(d.min(axis=0).max()))


def _detect_ball(src: Ball, dst: Ball, tol: Tolerance) -> Homothety:
    exact = is_exact([list(src.center), src.radius, list(dst.center), dst.radius])
    if exact:
        lam = Fraction(dst.radius) / Fraction(src.radius)
        if lam == 1:
            raise RatioNotGreaterThanOne("equal radii give a translation, not a homothety")
        if lam < 1:
            raise RatioNotGreaterThanOne("target ball is smaller than source")
        center = _center_from_ratio(lam, [Fraction(x) for x in src.center],
                                    [Fraction(x) for x in dst.center])
        return Homothety(center=center, ratio=lam)
    lam = float(dst.radius) / float(src.radius)
    if abs(lam - 1.0) <= tol.scaled(1.0):
        raise RatioNotGreaterThanOne("equal radii give a translation, not a homothety")
    if lam < 1.0:
        raise RatioNotGreaterThanOne("target ball is smaller than source")
    center = _center_from_ratio(lam, [float(x) for x in src.center],
                                [float(x) for x in dst.center])
    return Homothety(center=center, ratio=lam)


def _detect_vertexset(src: VertexSet, dst: VertexSet, tol: Tolerance) -> Homothety:
    if len(src.vertices) != len(dst.vertices):
        raise NotHomothetic("vertex counts differ")
    exact = is_exact([list(v) for v in src.vertices] + [list(v) for v in dst.vertices])
    d_from = _vertexset_diameter(src)
    d_to = _vertexset_diameter(dst)
    if d_from == 0 or d_to == 0:
        raise DegenerateShape("vertex set has zero diameter")
    if exact:
        ratio_sq = _sq_diameter_exact(dst) / _sq_diameter_exact(src)
        lam = _exact_sqrt(ratio_sq)
        if lam is None:
            raise NotHomothetic("squared diameter ratio is not a rational square")
        if lam == 1:
            raise RatioNotGreaterThanOne("equal diameters give a translation")
        if lam < 1:
            raise RatioNotGreaterThanOne("target vertex set is smaller than source")
        g_from = _centroid(src.vertices, True)
        g_to = _centroid(dst.vertices, True)
        center = _center_from_ratio(lam, g_from, g_to)
        h = Homothety(center=center, ratio=lam)
        image = {h.apply(v) for v in src.vertices}
        target = {tuple(Fraction(x) for x in v) for v in dst.vertices}
        if image != target:
            raise NotHomothetic("centroid and diameter agree but vertices do not map")
        return h
    lam = float(d_to) / float(d_from)
    if abs(lam - 1.0) <= tol.scaled(1.0):
        raise RatioNotGreaterThanOne("equal diameters give a translation")
    if lam < 1.0:
        raise RatioNotGreaterThanOne("target vertex set is smaller than source")
    g_from = _centroid(src.vertices, False)
    g_to = _centroid(dst.vertices, False)
    center = _center_from_ratio(lam, g_from, g_to)
    h = Homothety(center=center, ratio=lam)
    image = [h.apply(v) for v in src.vertices]
    if _hausdorff(image, [tuple(float(x) for x in v) for v in dst.vertices]) > tol.scaled(float(d_to)):
        raise NotHomothetic("centroid and diameter agree but vertices do not map")
    return h


def _sq_diameter_exact(vs: VertexSet):
    return max(_sq_dist_exact(u, v) for u, v in combinations(vs.vertices, 2))


def _match_constraints(src: HalfspaceSet, dst: HalfspaceSet, tol: Tolerance, exact: bool):
    if len(src.constraints) != len(dst.constraints):
        raise NotHomothetic("constraint counts differ")
    if exact:
        groups_src = {}
        groups_dst = {}
        for h in src.constraints:
            groups_src.setdefault(h.normal, []).append(h.offset)
        for h in dst.constraints:
            groups_dst.setdefault(h.normal, []).append(h.offset)
        if set(groups_src) != set(groups_dst):
            raise NotHomothetic("constraint normals do not match")
        matched = []
        for normal in sorted(groups_src, key=str):
            a = sorted(groups_src[normal])
            b = sorted(groups_dst[normal])
            if len(a) != len(b):
                raise NotHomothetic("constraint normals do not match")
            matched.extend((normal, da, db) for da, db in zip(a, b))
        return matched
    used = set()
    matched = []
    for h in src.constraints:
        nf = np.asarray(h.normal, dtype=float)
        best, best_k = None, None
        for k, g in enumerate(dst.constraints):
            if k in used:
                continue
            gap = float(np.linalg.norm(nf - np.asarray(g.normal, dtype=float)))
            if best is None or gap < best:
                best, best_k = gap, k
        if best is None or best > math.sqrt(tol.scaled(1.0)):
            # unit normals: allow a generous but still tiny direction gap
            raise NotHomothetic("constraint normals do not match")
        used.add(best_k)
        matched.append((h.normal, h.offset, dst.constraints[best_k].offset))
    return matched


def _detect_halfspaceset(src: HalfspaceSet, dst: HalfspaceSet, tol: Tolerance) -> Homothety:
    exact = is_exact(
        [list(h.normal) + [h.offset] for h in src.constraints]
        + [list(h.normal) + [h.offset] for h in dst.constraints]
    )
    matched = _match_constraints(src, dst, tol, exact)
    n = src.dimension
    # image of {x : a.x >= d} under (b, lam>0) is {x : a.x >= lam d + (1-lam) a.b};
    # with c = (1 - lam) b the unknowns (lam, c) satisfy d_from*lam + a.c = d_to
    if exact:
        rows = [[Fraction(d_from)] + [Fraction(x) for x in normal] for normal, d_from, _ in matched]
        rhs = [Fraction(d_to) for _, _, d_to in matched]
        try:
            sol = _exact_solve(rows, rhs)
        except DegenerateConfiguration:
            raise NonUniqueHomothety(
                "constraints do not pin down a unique homothety"
            ) from None
        if sol is None:
            raise NotHomothetic("no homothety maps the constraints onto each other")
        lam, c = sol[0], sol[1:]
        if lam == 1:
            raise RatioNotGreaterThanOne("shapes are translates")
        if lam < 1:
            raise RatioNotGreaterThanOne("target is smaller than source")
        center = tuple(x / (1 - lam) for x in c)
        return Homothety(center=center, ratio=lam)
    rows = np.asarray(
        [[float(d_from)] + [float(x) for x in normal] for normal, d_from, _ in matched]
    )
    rhs = np.asarray([float(d_to) for _, _, d_to in matched])
    if _float_rank(rows, tol) < n + 1:
        raise NonUniqueHomothety("constraints do not pin down a unique homothety")
    sol, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    scale = max(1.0, float(np.abs(rhs).max()))
    if float(np.max(np.abs(rows @ sol - rhs))) > tol.scaled(scale):
        raise NotHomothetic("no homothety maps the constraints onto each other")
    lam = float(sol[0])
    if abs(lam - 1.0) <= tol.scaled(1.0):
        raise RatioNotGreaterThanOne("shapes are translates")
    if lam < 1.0:
        raise RatioNotGreaterThanOne("target is smaller than source")
    center = tuple(float(x) / (1.0 - lam) for x in sol[1:])
    return Homothety(center=center, ratio=lam)


def detect_homothety(src, dst, tol: Tolerance = DEFAULT_TOLERANCE) -> Homothety:
    """Unique homothety h with h(src) = dst and ratio above 1.

    Shapes must share kind and dimension.  Equal sizes mean the map is a
    translation and raise RatioNotGreaterThanOne; shape pairs that no
    homothety relates raise NotHomothetic; pairs related by infinitely
    many (parallel half-plane translates, say) raise NonUniqueHomothety.
    """
    if type(src) is not type(dst):
        raise NotHomothetic("shapes must have the same kind")
    if src.dimension != dst.dimension:
        raise DimensionMismatch("shapes must share a dimension")
    if isinstance(src, Ball):
        return _detect_ball(src, dst, tol)
    if isinstance(src, VertexSet):
        return _detect_vertexset(src, dst, tol)
    if isinstance(src, HalfspaceSet):
        return _detect_halfspaceset(src, dst, tol)
    raise InvalidInput(f"unsupported shape type {type(src).__name__}")


def apply_homothety(h: Homothety, shape):
    """Image shape under the homothety (exact when the data is exact)."""
    if isinstance(shape, Ball):
        r = h.ratio if h.ratio > 0 else -h.ratio
        return Ball(center=h.apply(shape.center), radius=r * shape.radius)
    if isinstance(shape, VertexSet):
        return VertexSet(vertices=tuple(h.apply(v) for v in shape.vertices))
    if isinstance(shape, HalfspaceSet):
        if h.ratio <= 0:
            raise InvalidInput("half-space homothety needs a positive ratio")
        out = []
        for c in shape.constraints:
            shifted = sum(a * b for a, b in zip(c.normal, h.center))
            out.append((c.normal, h.ratio * c.offset + (1 - h.ratio) * shifted))
        return HalfspaceSet(constraints=tuple(out))
    raise InvalidInput(f"unsupported shape type {type(shape).__name__}")
