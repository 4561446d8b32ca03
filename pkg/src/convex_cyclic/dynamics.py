"""Orbit dynamics: growth witnesses and empirical hull-density scans.

The membership question "is a target in the closed convex hull of the
polynomial images of a vector" is settled empirically: hulls are sampled
by nonnegative least squares over a finite generator set (orbit points,
first-degree peaking images, and their pairwise products), and growth
witnesses certify unboundedness of functionals along orbits, which is the
separation-based obstruction to such capture ever failing on admissible
matrices.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

import numpy as np
from scipy.optimize import nnls

from .convex_poly import ConvexPolynomial
from .errors import (
    DimensionMismatch,
    OverflowReached,
    PreconditionViolated,
    PremiseViolated,
    ZeroFunctional,
)
from .jordan_forms import DirectSumSpec, build, matrix_polynomial
from .spectral import MatrixSpec, classify, convex_cyclic_vector_test

__all__ = [
    "OVERFLOW_LIMIT",
    "OrbitTrace",
    "GrowthWitness",
    "Bounded",
    "HullQuery",
    "HullResult",
    "DensityReport",
    "orbit",
    "growth_witness",
    "hull_contains",
    "empirical_density_scan",
    "direct_sum_vector",
]

logger = logging.getLogger("convex_cyclic.dynamics")

OVERFLOW_LIMIT = 1e300

MatrixLike = Union[MatrixSpec, np.ndarray, Sequence[Sequence[float]]]


def _entries(matrix: MatrixLike) -> np.ndarray:
    if isinstance(matrix, MatrixSpec):
        return matrix.entries
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise PreconditionViolated("matrix must be square")
    if np.iscomplexobj(arr):
        return arr.astype(complex)
    return arr.astype(float)


def _vector(x: Any, dimension: int, is_complex: bool) -> np.ndarray:
    arr = np.asarray(x, dtype=complex if is_complex or np.iscomplexobj(np.asarray(x)) else float)
    arr = np.atleast_1d(arr)
    if arr.ndim != 1 or len(arr) != dimension:
        raise DimensionMismatch(dimension, arr.shape[0] if arr.ndim == 1 else -1)
    if is_complex:
        return arr.astype(complex)
    if np.iscomplexobj(arr):
        raise PreconditionViolated("real matrix requires a real vector")
    return arr.astype(float)


@dataclass(frozen=True)
class OrbitTrace:
    """Iterates ``points[n] = T^n x`` for n = 0 .. horizon."""

    points: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.points) - 1


def orbit(matrix: MatrixLike, x: Any, horizon: int) -> OrbitTrace:
    """Forward orbit of ``x`` under the matrix, horizon + 1 points."""
    if not (isinstance(horizon, int) and horizon >= 0):
        raise PreconditionViolated("horizon must be an integer >= 0")
    T = _entries(matrix)
    v = _vector(x, T.shape[0], np.iscomplexobj(T))
    points = np.empty((horizon + 1, len(v)), dtype=T.dtype)
    points[0] = v
    for n in range(horizon):
        points[n + 1] = T @ points[n]
    return OrbitTrace(points)


@dataclass(frozen=True)
class GrowthWitness:
    """First orbit index where the functional's real part beats the threshold."""

    index: int
    value: float
    threshold: float

    def to_jsonable(self) -> dict:
        return {"witnessed": True, "index": self.index, "value": self.value, "threshold": self.threshold}


@dataclass(frozen=True)
class Bounded:
    """No index up to max_n beat the threshold; best value observed."""

    max_observed: float
    max_n: int

    def to_jsonable(self) -> dict:
        return {"witnessed": False, "max_observed": self.max_observed, "max_n": self.max_n}


def growth_witness(
    matrix: MatrixLike, x: Any, functional: Any, threshold: float, max_n: int = 2000
) -> GrowthWitness | Bounded:
    """Scan Re<T^n x, f> for n = 0 .. max_n against the threshold.

    The pairing conjugates the functional in the complex case.  Raises
    ZeroFunctional for f = 0 and OverflowReached if the orbit leaves the
    representable range before any witness appears.
    """
    T = _entries(matrix)
    is_complex = np.iscomplexobj(T)
    v = _vector(x, T.shape[0], is_complex)
    f = _vector(functional, T.shape[0], is_complex)
    if not np.any(f != 0):
        raise ZeroFunctional()
    if not (isinstance(max_n, int) and max_n >= 0):
        raise PreconditionViolated("max_n must be an integer >= 0")

    best = -math.inf
    # overflow is detected through the isfinite checks below, so numpy's
    # warnings would only duplicate the OverflowReached signal
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(max_n + 1):
            if is_complex:
                value = float(np.vdot(f, v).real)
            else:
                value = float(f @ v)
            if math.isfinite(value) and value > threshold:
                return GrowthWitness(index=n, value=value, threshold=float(threshold))
            if not np.all(np.isfinite(v)) or np.max(np.abs(v)) > OVERFLOW_LIMIT:
                raise OverflowReached(n)
            if math.isfinite(value):
                best = max(best, value)
            if n < max_n:
                v = T @ v
    return Bounded(max_observed=best, max_n=max_n)


def _embed(v: np.ndarray) -> np.ndarray:
    """Real coordinates of a vector; complex entries interleave as (re, im)."""
    if np.iscomplexobj(v):
        out = np.empty(2 * len(v))
        out[0::2] = v.real
        out[1::2] = v.imag
        return out
    return np.asarray(v, dtype=float)


@dataclass(frozen=True)
class HullQuery:
    points: tuple
    target: Any
    tolerance: float = 1e-6


@dataclass(frozen=True)
class HullResult:
    contained: bool
    residual: float
    weights: np.ndarray


def hull_contains(query: HullQuery) -> HullResult:
    """Convex-hull membership by nonnegative least squares.

    The unit-sum constraint rides along as a heavily weighted extra row;
    the decision uses the true Euclidean distance after renormalizing the
    weights, so the verdict never depends on the penalty weight.
    """
    pts = [_embed(np.atleast_1d(np.asarray(p))) for p in query.points]
    if not pts:
        raise PreconditionViolated("hull query needs at least one point")
    target = _embed(np.atleast_1d(np.asarray(query.target)))
    dims = {len(p) for p in pts} | {len(target)}
    if len(dims) != 1:
        raise DimensionMismatch(len(target), len(pts[0]))
    G = np.column_stack(pts)
    # the weight must dominate the target scale but stay far below
    # 1 / eps times the tolerance, or rounding in the weighted row alone
    # would swamp the residual decision
    weight = 1e3 * max(1.0, float(np.linalg.norm(target)))
    A = np.vstack([G, weight * np.ones((1, G.shape[1]))])
    b = np.append(target, weight)
    w, _ = nnls(A, b)
    total = w.sum()
    if total > 0:
        w = w / total
    residual = float(np.linalg.norm(G @ w - target))
    return HullResult(contained=residual <= query.tolerance, residual=residual, weights=w)


@dataclass(frozen=True)
class DensityReport:
    total: int
    captured: int
    fraction: float
    miss_indices: tuple[int, ...]
    generators_used: int

    def to_jsonable(self) -> dict:
        return {
            "total": self.total,
            "captured": self.captured,
            "fraction": self.fraction,
            "miss_indices": list(self.miss_indices),
            "generators_used": self.generators_used,
        }


def _generator_points(
    T: np.ndarray, x: np.ndarray, budget: int, norm_cap: float
) -> list[np.ndarray]:
    """Polynomial images of x used as hull generators, deterministic order.

    Orbit points come first, then the degree-(m+1) two-term family
    z^m (alpha z + 1 - alpha) for alpha in {1/8 .. 7/8} with m ascending,
    then pairwise products of that family.  Every one is a convex
    combination of orbit points, so the scan only ever samples inside the
    true attainable hull.
    """
    alphas = [i / 8 for i in range(1, 8)]
    orbit_pts: list[np.ndarray] = [x.copy()]
    while len(orbit_pts) <= budget:
        nxt = T @ orbit_pts[-1]
        if not np.all(np.isfinite(nxt)) or np.max(np.abs(nxt)) > norm_cap:
            break
        orbit_pts.append(nxt)

    generators: list[np.ndarray] = list(orbit_pts[: budget])
    for m in range(len(orbit_pts) - 1):
        if len(generators) >= budget:
            break
        for alpha in alphas:
            if len(generators) >= budget:
                break
            generators.append((1 - alpha) * orbit_pts[m] + alpha * orbit_pts[m + 1])
    # products (z^m (a z + 1 - a)) * (z^l (b z + 1 - b)) expand over three
    # consecutive orbit points starting at m + l
    for m in range(len(orbit_pts) - 2):
        for l in range(m, len(orbit_pts) - 2 - m):
            if m + l + 2 >= len(orbit_pts) or len(generators) >= budget:
                break
            for a in alphas:
                if len(generators) >= budget:
                    break
                for bcoef in alphas:
                    if len(generators) >= budget:
                        break
                    generators.append(
                        (1 - a) * (1 - bcoef) * orbit_pts[m + l]
                        + (a * (1 - bcoef) + bcoef * (1 - a)) * orbit_pts[m + l + 1]
                        + a * bcoef * orbit_pts[m + l + 2]
                    )
        if len(generators) >= budget:
            break
    return generators


def empirical_density_scan(
    matrix: MatrixLike,
    x: Any,
    targets: Iterable[Any],
    poly_budget: int = 400,
    tolerance: float = 1e-6,
) -> DensityReport:
    """Fraction of targets captured by hulls of polynomial images of x.

    Targets live in the matrix's own space (complex coordinates allowed
    for complex matrices); the hull test runs in interleaved real
    coordinates.  An empty target list counts as fully captured.
    """
    if not (isinstance(poly_budget, int) and poly_budget >= 1):
        raise PreconditionViolated("poly_budget must be an integer >= 1")
    T = _entries(matrix)
    is_complex = np.iscomplexobj(T)
    v = _vector(x, T.shape[0], is_complex)
    target_list = [
        _vector(t, T.shape[0], is_complex or np.iscomplexobj(np.asarray(t))) for t in targets
    ]
    if not target_list:
        return DensityReport(total=0, captured=0, fraction=1.0, miss_indices=(), generators_used=0)

    scale = max(
        [1.0, float(np.linalg.norm(v))] + [float(np.linalg.norm(_embed(t))) for t in target_list]
    )
    generators = _generator_points(T, v, poly_budget, norm_cap=1e7 * scale)
    misses = []
    for i, t in enumerate(target_list):
        result = hull_contains(HullQuery(tuple(generators), t, tolerance))
        if not result.contained:
            misses.append(i)
            logger.debug("target %d missed, residual %.3e", i, result.residual)
    captured = len(target_list) - len(misses)
    return DensityReport(
        total=len(target_list),
        captured=captured,
        fraction=captured / len(target_list),
        miss_indices=tuple(misses),
        generators_used=len(generators),
    )


def direct_sum_vector(
    summands: Sequence[tuple[DirectSumSpec | MatrixSpec, Any]],
    polynomial: ConvexPolynomial,
    radius_tol: float = 1e-6,
) -> np.ndarray:
    """Assemble the candidate vector for a direct sum of one or two summands.

    With one summand the vector passes through after the coordinate test.
    With two, the polynomial must turn the first summand convex-cyclic and
    annihilate the second (spectral radius of its image within
    ``radius_tol`` of zero, relative to the image's scale); each block's
    vector is checked coordinatewise, and the concatenation is returned.
    """
    summands = list(summands)
    if not 1 <= len(summands) <= 2:
        raise PreconditionViolated("expected one or two summands")

    def canonical(desc) -> DirectSumSpec:
        if isinstance(desc, DirectSumSpec):
            return desc
        raise PreconditionViolated("summand descriptors must be canonical direct sums")

    specs = [canonical(d) for d, _ in summands]
    vectors = []
    for spec, vec in zip(specs, (v for _, v in summands)):
        matrix = build(spec)
        checked = _vector(vec, matrix.dimension, matrix.field == "complex")
        if not convex_cyclic_vector_test(spec, checked):
            raise PremiseViolated("vector has a zero coordinate in a leading block position")
        vectors.append(checked)

    if len(summands) == 2:
        first_image = matrix_polynomial(polynomial, build(specs[0]))
        verdict = classify(first_image)
        if not verdict.is_convex_cyclic:
            raise PremiseViolated("first summand is not convex-cyclic under the polynomial")
        second_image = matrix_polynomial(polynomial, build(specs[1]))
        entries = second_image.entries if isinstance(second_image, MatrixSpec) else second_image
        radius = float(np.max(np.abs(np.linalg.eigvals(entries.astype(complex)))))
        scale = max(1.0, float(np.linalg.norm(entries, 2)))
        if radius > radius_tol * scale:
            raise PremiseViolated("second summand image is not nilpotent within tolerance")
    if len(vectors) == 1:
        return vectors[0]
    if np.iscomplexobj(vectors[0]) != np.iscomplexobj(vectors[1]):
        vectors = [v.astype(complex) for v in vectors]
    return np.concatenate(vectors)
