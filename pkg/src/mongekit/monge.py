"""End-to-end check that pairwise homothety centers share a hyperplane.

Given n+1 pairwise homothetic shapes in E^n, indexed by strictly
decreasing size, each pair (i, j) with i < j has a homothety with ratio
above 1 taking shape j to shape i.  run_monge detects all n(n+1)/2
centers and fits a hyperplane through them; for genuinely homothetic
input families the fit succeeds with tiny residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DimensionMismatch,
    GeometryError,
    InvalidInput,
    NonCoplanar,
    RatioNotGreaterThanOne,
    UnboundedShape,
)
from .kernel import (
    DEFAULT_TOLERANCE,
    Hyperplane,
    Tolerance,
    _exact_nullspace,
    fit_hyperplane,
    is_exact,
)
from .menelaus import all_pairs
from .shapes import size_measure

__all__ = ["MongeConfig", "MongeReport", "run_monge", "cross_ratio_consistency"]


@dataclass(frozen=True)
class MongeConfig:
    """n+1 same-kind shapes in E^n, largest first."""

    dimension: int
    shapes: tuple

    @classmethod
    def build(cls, shapes, tol: Tolerance = DEFAULT_TOLERANCE):
        """Validate and size-sort the shapes (unbounded sets keep their order)."""
        shapes = tuple(shapes)
        if not shapes:
            raise InvalidInput("need at least one shape")
        n = shapes[0].dimension
        if len(shapes) != n + 1:
            raise DimensionMismatch(f"need {n + 1} shapes in dimension {n}, got {len(shapes)}")
        if any(s.dimension != n for s in shapes):
            raise DimensionMismatch("shapes must share one dimension")
        kinds = {s.kind for s in shapes}
        if len(kinds) > 1:
            raise InvalidInput("shapes must all have the same kind")
        try:
            sizes = [size_measure(s, tol) for s in shapes]
        except UnboundedShape:
            return cls(dimension=n, shapes=shapes)
        for a, b in combinations(sizes, 2):
            if a == b:
                raise RatioNotGreaterThanOne("two shapes have equal size (translation pair)")
        order = sorted(range(len(shapes)), key=lambda k: sizes[k], reverse=True)
        return cls(dimension=n, shapes=tuple(shapes[k] for k in order))


@dataclass(frozen=True)
class MongeReport:
    centers: dict
    ratios: dict
    hyperplane: Hyperplane | None
    residual: object
    degenerate: bool
    span_dim: int | None
    verdict: bool


def _canonical_plane_through(points, span, exact):
    """Some hyperplane containing the low-dimensional span of ``points``."""
    if exact:
        base = points[0]
        if span == 0:
            normal = tuple(Fraction(int(k == 0)) for k in range(len(base)))
        else:
            diffs = [[Fraction(x) - Fraction(b) for x, b in zip(p, base)] for p in points[1:]]
            normal = _exact_nullspace(diffs, len(base))[0]
        offset = sum(a * Fraction(x) for a, x in zip(normal, base))
        return Hyperplane.build(normal, offset), Fraction(0)
    pts = np.asarray([[float(x) for x in p] for p in points])
    if span == 0:
        normal = np.zeros(pts.shape[1])
        normal[0] = 1.0
    else:
        centered = pts - pts.mean(axis=0)
        _, _, vt = np.linalg.svd(centered)
        normal = vt[-1]
    plane = Hyperplane.build(tuple(normal), float(normal @ pts.mean(axis=0)))
    dev = max(plane.distance(p) for p in pts)
    diam = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    residual = 0.0 if dev == 0.0 else dev / max(diam, 1.0)
    return plane, residual


def run_monge(config: MongeConfig, tol: Tolerance = DEFAULT_TOLERANCE) -> MongeReport:
    """Detect all pairwise homothety centers and test their coplanarity.

    The verdict is true when the centers fit a hyperplane within
    tolerance, including the degenerate situation where they span fewer
    than n-1 dimensions (then the report's degenerate flag is set and a
    canonical containing hyperplane is returned).
    """
    from .shapes import detect_homothety  # local import avoids cycle at module load

    n = config.dimension
    centers = {}
    ratios = {}
    for (i, j) in all_pairs(n + 1):
        try:
            h = detect_homothety(config.shapes[j - 1], config.shapes[i - 1], tol)
        except GeometryError as e:
            if e.pair is None:
                e.pair = (i, j)
                e.args = (f"pair {(i, j)}: {e.args[0]}",) if e.args else (f"pair {(i, j)}",)
            raise
        centers[(i, j)] = h.center
        ratios[(i, j)] = h.ratio
    points = [centers[p] for p in sorted(centers)]
    exact = is_exact([list(p) for p in points])
    thr = 0 if exact else tol.scaled(1.0)
    try:
        plane, residual = fit_hyperplane(points, tol)
        return MongeReport(
            centers=centers, ratios=ratios, hyperplane=plane, residual=residual,
            degenerate=False, span_dim=None, verdict=bool(residual <= thr),
        )
    except NonCoplanar:
        return MongeReport(
            centers=centers, ratios=ratios, hyperplane=None, residual=None,
            degenerate=False, span_dim=None, verdict=False,
        )
    except DegenerateConfiguration as e:
        plane, residual = _canonical_plane_through(points, e.span_dim, exact)
        return MongeReport(
            centers=centers, ratios=ratios, hyperplane=plane, residual=residual,
            degenerate=True, span_dim=e.span_dim, verdict=True,
        )


def cross_ratio_consistency(report: MongeReport) -> dict:
    """Per-triple consistency gaps |lambda_ij * lambda_jk / lambda_ik - 1|.

    For any three shapes the two-step ratio composition must equal the
    direct one; the map is empty only for degenerate index sets.
    """
    count = max(j for _, j in report.ratios)
    out = {}
    for (i, j, k) in combinations(range(1, count + 1), 3):
        val = (report.ratios[(i, j)] * report.ratios[(j, k)]) / report.ratios[(i, k)]
        out[(i, j, k)] = abs(val - 1)
    return out
