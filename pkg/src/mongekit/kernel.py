"""Dimension-generic affine linear algebra over two scalar backends.

Every public operation accepts point rows whose entries are either all
floats (approximate backend, numpy based) or all ints/Fractions (exact
backend, stdlib Fraction based).  Mixing a Fraction with a float in one
input is rejected rather than silently coerced.  Tolerances only apply
to the approximate backend; the exact backend compares against zero.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BackendMixError,
    DegenerateConfiguration,
    DimensionMismatch,
    InvalidInput,
    NearParallel,
    NonCoplanar,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "Hyperplane",
    "is_exact",
    "rank",
    "affine_span_dim",
    "affinely_independent",
    "fit_hyperplane",
    "line_hyperplane_intersection",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative tolerance pair for the approximate backend."""

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0:
            raise InvalidInput("tolerance components must be non-negative")
        if self.abs == 0 and self.rel == 0:
            raise InvalidInput("at least one tolerance component must be positive")

    def scaled(self, scale):
        """Threshold for a quantity whose natural magnitude is ``scale``."""
        return self.abs + self.rel * float(scale)


DEFAULT_TOLERANCE = Tolerance()


def _iter_scalars(values):
    for v in values:
        if isinstance(v, (list, tuple)):
            yield from _iter_scalars(v)
        elif isinstance(v, np.ndarray):
            yield from _iter_scalars(v.tolist())
        else:
            yield v


def is_exact(values) -> bool:
    """True when every scalar in ``values`` is an int or Fraction.

    Raises BackendMixError when exact and float scalars are mixed.
    """
    saw_exact = False
    saw_float = False
    for v in _iter_scalars(values):
        if isinstance(v, Fraction) or isinstance(v, numbers.Integral):
            saw_exact = True
        elif isinstance(v, numbers.Real):
            if not math.isfinite(float(v)):
                raise InvalidInput("coordinates must be finite")
            saw_float = True
        else:
            raise InvalidInput(f"unsupported scalar type {type(v).__name__}")
    if saw_float and saw_exact:
        # ints among floats are fine; only Fraction-with-float is a real mix
        has_fraction = any(isinstance(v, Fraction) for v in _iter_scalars(values))
        if has_fraction:
            raise BackendMixError("cannot mix Fraction and float scalars in one input")
        return False
    return not saw_float


def _as_float_rows(rows):
    a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
    if a.ndim != 2:
        raise DimensionMismatch("expected a rectangular table of rows")
    return a


def _as_fraction_rows(rows):
    out = [[Fraction(x) for x in r] for r in rows]
    width = {len(r) for r in out}
    if len(width) > 1:
        raise DimensionMismatch("rows have inconsistent lengths")
    return out


def _check_rect(rows):
    lens = {len(r) for r in rows}
    if len(lens) > 1:
        raise DimensionMismatch("rows have inconsistent lengths")


# ----------------------------------------------------------------------
# exact (Fraction) elimination helpers

def _exact_echelon(rows):
    """Row-reduce a copy of ``rows``; returns (echelon, pivot_cols)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(m)):
            if m[k][c] != 0:
                pivot = k
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _exact_rank(rows):
    _, pivots = _exact_echelon(rows)
    return len(pivots)


def _exact_nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0} as Fraction tuples (RREF back-substitution)."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, pivots = _exact_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def _exact_solve(a_rows, rhs):
    """Unique exact solution of ``a_rows @ x = rhs``.

    Returns None when the system is inconsistent; raises
    DegenerateConfiguration when the solution is not unique.
    """
    ncols = len(a_rows[0]) if a_rows else 0
    aug = [list(r) + [b] for r, b in zip(a_rows, rhs)]
    red, pivots = _exact_echelon(aug)
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    if len(pivots) < ncols:
        raise DegenerateConfiguration(
            "linear system is underdetermined", span_dim=len(pivots)
        )
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)


# ----------------------------------------------------------------------
# rank and affine span

def _float_rank(a: np.ndarray, tol: Tolerance) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    thr = max(tol.abs, tol.rel * float(s[0]))
    return int(np.sum(s > thr))


def rank(rows, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    """Numerical (or exact) rank of a table of row vectors.

    Approximate backend counts singular values above
    max(tol.abs, tol.rel * sigma_1); exact backend eliminates exactly.
    """
    rows = list(rows)
    if not rows:
        return 0
    _check_rect(rows)
    if is_exact(rows):
        return _exact_rank(_as_fraction_rows(rows))
    return _float_rank(_as_float_rows(rows), tol)


def affine_span_dim(points, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    """Dimension of the affine span of ``points`` (0 for a single point)."""
    pts = list(points)
    if not pts:
        raise InvalidInput("need at least one point")
    _check_rect(pts)
    if is_exact(pts):
        rows = _as_fraction_rows(pts)
        base = rows[0]
        diffs = [[x - b for x, b in zip(r, base)] for r in rows[1:]]
        return _exact_rank(diffs) if diffs else 0
    a = _as_float_rows(pts)
    if a.shape[0] == 1:
        return 0
    return _float_rank(a[1:] - a[0], tol)


def affinely_independent(points, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when k+1 points span a k-dimensional affine subspace.

    Requires exactly n+1 points of dimension n.
    """
    pts = list(points)
    if not pts:
        raise InvalidInput("need at least one point")
    _check_rect(pts)
    n = len(pts[0])
    if len(pts) != n + 1:
        raise DimensionMismatch(
            f"need exactly {n + 1} points in dimension {n}, got {len(pts)}"
        )
    return affine_span_dim(pts, tol) == n


# ----------------------------------------------------------------------
# hyperplanes

def _normalize_float(normal, offset):
    normal = [float(x) for x in normal]
    k = max(range(len(normal)), key=lambda i: abs(normal[i]))
    piv = normal[k]
    if piv == 0.0:
        raise InvalidInput("hyperplane normal must be nonzero")
    return tuple(x / piv for x in normal), offset / piv


def _normalize_exact(normal, offset):
    normal = [Fraction(x) for x in normal]
    offset = Fraction(offset)
    if all(x == 0 for x in normal):
        raise InvalidInput("hyperplane normal must be nonzero")
    denom_lcm = 1
    for f in normal + [offset]:
        denom_lcm = denom_lcm * f.denominator // math.gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in normal] + [int(offset * denom_lcm)]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    ints = [v // g for v in ints]
    lead = next(v for v in ints[:-1] if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane {x : normal . x = offset} in canonical form.

    Approximate backend: the largest-magnitude normal entry equals 1.
    Exact backend: normal and offset form a primitive integer vector whose
    first nonzero normal entry is positive.
    """

    normal: tuple
    offset: object

    @classmethod
    def build(cls, normal, offset):
        if is_exact(list(normal) + [offset]):
            n, d = _normalize_exact(normal, offset)
        else:
            n, d = _normalize_float(normal, offset)
        return cls(normal=n, offset=d)

    @property
    def dim(self):
        return len(self.normal)

    def evaluate(self, point):
        """Signed affine value normal . x - offset (not distance-scaled)."""
        acc = -self.offset
        for a, x in zip(self.normal, point):
            acc += a * x
        return acc

    def distance(self, point) -> float:
        nrm = math.sqrt(sum(float(a) * float(a) for a in self.normal))
        return abs(float(self.evaluate(point))) / nrm

    def as_float(self):
        """Same hyperplane re-normalized under the float convention."""
        return Hyperplane.build([float(a) for a in self.normal], float(self.offset))


def _bbox_diameter(a: np.ndarray) -> float:
    return float(np.linalg.norm(a.max(axis=0) - a.min(axis=0)))


def _fit_exact(rows):
    base = rows[0]
    diffs = [[x - b for x, b in zip(r, base)] for r in rows[1:]]
    n = len(base)
    r = _exact_rank(diffs)
    if r == n:
        raise NonCoplanar("points do not lie in a common hyperplane")
    if r < n - 1:
        raise DegenerateConfiguration(
            f"points span affine dimension {r} < {n - 1}", span_dim=r
        )
    normal = _exact_nullspace(diffs, n)[0]
    offset = sum(a * x for a, x in zip(normal, base))
    return Hyperplane.build(normal, offset), Fraction(0)


def _fit_float(a: np.ndarray, tol: Tolerance):
    m, n = a.shape
    span = _float_rank(a[1:] - a[0], tol) if m > 1 else 0
    if span < n - 1:
        raise DegenerateConfiguration(
            f"points span affine dimension {span} < {n - 1}", span_dim=span
        )
    if m == n:
        # interpolate: null direction of the homogeneous system [x | -1]
        hom = np.hstack([a, -np.ones((m, 1))])
        _, _, vt = np.linalg.svd(hom)
        u = vt[-1]
        normal, offset = u[:n], u[n]
    else:
        centroid = a.mean(axis=0)
        _, _, vt = np.linalg.svd(a - centroid)
        normal = vt[-1]
        offset = float(normal @ centroid)
    plane = Hyperplane.build(normal, offset)
    nrm = math.sqrt(sum(float(x) ** 2 for x in plane.normal))
    dev = np.abs(a @ np.asarray(plane.normal, dtype=float) - float(plane.offset)) / nrm
    maxdev = float(dev.max())
    if maxdev == 0.0:
        return plane, 0.0
    diam = _bbox_diameter(a)
    return plane, maxdev / diam


def fit_hyperplane(points, tol: Tolerance = DEFAULT_TOLERANCE):
    """Best containing hyperplane of ``points`` plus a relative residual.

    With m == n points the hyperplane interpolates them exactly; with
    m > n it is the orthogonal least-squares fit (smallest singular
    direction about the centroid).  The residual is the largest point
    deviation divided by the bounding-box diameter.  The exact backend
    returns residual 0 or raises NonCoplanar.
    """
    pts = list(points)
    if not pts:
        raise InvalidInput("need at least one point")
    _check_rect(pts)
    n = len(pts[0])
    if n < 1:
        raise InvalidInput("points must have dimension >= 1")
    if len(pts) < n:
        raise DimensionMismatch(f"need at least {n} points in dimension {n}")
    if is_exact(pts):
        return _fit_exact(_as_fraction_rows(pts))
    return _fit_float(_as_float_rows(pts), tol)


def line_hyperplane_intersection(p, q, plane: Hyperplane, tol: Tolerance = DEFAULT_TOLERANCE):
    """Intersection point of the line through p, q with ``plane``.

    Raises NearParallel when the direction is (numerically) parallel.
    """
    exact = is_exact([list(p), list(q), list(plane.normal), plane.offset])
    if len(p) != len(q) or len(p) != plane.dim:
        raise DimensionMismatch("point and hyperplane dimensions differ")
    if exact:
        pp = [Fraction(x) for x in p]
        qq = [Fraction(x) for x in q]
        if pp == qq:
            raise InvalidInput("line endpoints must differ")
        direction = [b - a for a, b in zip(pp, qq)]
        denom = sum(a * d for a, d in zip(plane.normal, direction))
        if denom == 0:
            raise NearParallel("line is parallel to the hyperplane")
        t = (plane.offset - sum(a * x for a, x in zip(plane.normal, pp))) / denom
        return tuple(a + t * d for a, d in zip(pp, direction))
    pa = np.asarray([float(x) for x in p])
    qa = np.asarray([float(x) for x in q])
    na = np.asarray([float(x) for x in plane.normal])
    direction = qa - pa
    dir_norm = float(np.linalg.norm(direction))
    if dir_norm == 0.0:
        raise InvalidInput("line endpoints must differ")
    denom = float(na @ direction)
    scale = float(np.linalg.norm(na)) * dir_norm
    if abs(denom) <= tol.scaled(scale):
        raise NearParallel("line is (nearly) parallel to the hyperplane")
    t = (float(plane.offset) - float(na @ pa)) / denom
    return tuple(pa + t * direction)
