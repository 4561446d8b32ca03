"""Convex-polynomials: simplex-coefficient polynomials and their algebra.

A convex-polynomial has nonnegative coefficients that sum to one on the
monomial basis.  The class is closed under multiplication and composition,
fixes ``z = 1``, maps the closed unit disk into itself and commutes with
complex conjugation.  On top of the algebra this module constructs peaking
polynomials ``z^m (alpha*z + 1 - alpha)`` for admissible node sets and runs
the threshold-crossing growth scans used by the density criterion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import (
    AlphaGridExhausted,
    NegativeCoefficient,
    NoPeakWithinCap,
    NotFoundWithinCap,
    PreconditionViolated,
    SumNotOne,
    ThetaMultipleOfPi,
    ZeroCoefficient,
)

__all__ = [
    "SUM_TOLERANCE",
    "NODE_TOLERANCE",
    "DEFAULT_POWER_CAP",
    "ConvexPolynomial",
    "PeakingCertificate",
    "GrowthQuery",
    "validate",
    "evaluate",
    "derivative",
    "multiply",
    "compose",
    "peaking_polynomial",
    "find_growth_index",
    "growth_indices",
    "multivariable_growth_index",
]

# Construction tolerance on the coefficient sum; nonnegativity is exact.
SUM_TOLERANCE = 1e-12

# Absolute tolerance for node equality / conjugacy checks.
NODE_TOLERANCE = 1e-10

# Default cap for the peak-power scan.
DEFAULT_POWER_CAP = 10000

# Largest magnitude a certificate value may take; beyond this the scan
# reports the cap instead of returning non-representable numbers.
_LOG_VALUE_MAX = math.log(1e300)

# Realness-avoidance retries draw from a grid of this many alpha values.
_ALPHA_GRID_SIZE = 16


@dataclass(frozen=True, eq=False)
class ConvexPolynomial:
    """Polynomial with nonnegative coefficients summing to one.

    Coefficients are ascending (``coeffs[k]`` multiplies ``z**k``).
    Construction validates and canonicalizes: every entry must be exactly
    nonnegative, the sum must be within ``SUM_TOLERANCE`` of one, and the
    stored vector is renormalized and stripped of trailing zeros.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise PreconditionViolated("coefficients must be a nonempty 1-d vector")
        if not np.all(np.isfinite(arr)):
            raise PreconditionViolated("coefficients must be finite")
        for index, value in enumerate(arr):
            if value < 0.0:
                raise NegativeCoefficient(index, float(value))
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise SumNotOne(total)
        arr = arr / total
        nonzero = np.nonzero(arr)[0]
        end = int(nonzero[-1]) + 1 if nonzero.size else 1
        arr = arr[:end].copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex | float) -> complex | float:
        return evaluate(self, z)

    def __repr__(self) -> str:
        body = ", ".join(format(c, ".6g") for c in self.coeffs)
        return f"ConvexPolynomial([{body}])"


def validate(coeffs: Sequence[float]) -> ConvexPolynomial:
    """Validate a raw coefficient vector and return the canonical polynomial.

    Raises
    ------
    NegativeCoefficient
        If any entry is negative (exact test, no tolerance).
    SumNotOne
        If the sum differs from one by more than ``SUM_TOLERANCE``.
    """
    return ConvexPolynomial(np.asarray(coeffs, dtype=float))


def evaluate(p: ConvexPolynomial, z: complex | float) -> complex | float:
    """Evaluate ``p`` at ``z`` by Horner's scheme.

    Returns a float for real ``z`` and a complex number otherwise; the
    scheme commutes with conjugation exactly, so ``p(conj(z)) == conj(p(z))``.
    """
    coeffs = p.coeffs
    if isinstance(z, complex):
        acc: complex | float = 0.0 + 0.0j
    else:
        z = float(z)
        acc = 0.0
    for a in coeffs[::-1]:
        acc = acc * z + a
    return acc


def derivative(p: ConvexPolynomial, order: int = 1) -> np.ndarray:
    """Coefficients of the ``order``-th derivative, as a plain vector.

    The result is not renormalized (derivatives of convex-polynomials are
    generally not convex-polynomials).  An empty vector is returned when
    ``order`` exceeds the degree.
    """
    if order < 0:
        raise PreconditionViolated("derivative order must be nonnegative")
    c = np.asarray(p.coeffs, dtype=float)
    for _ in range(order):
        if len(c) <= 1:
            return np.zeros(0)
        c = c[1:] * np.arange(1, len(c), dtype=float)
    return c


def _derivative_coeffs(coeffs: np.ndarray, order: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    for _ in range(order):
        if len(c) <= 1:
            return np.zeros(0)
        c = c[1:] * np.arange(1, len(c), dtype=float)
    return c


def multiply(p: ConvexPolynomial, q: ConvexPolynomial) -> ConvexPolynomial:
    """Product polynomial; coefficient convolution then renormalization."""
    return ConvexPolynomial(np.convolve(p.coeffs, q.coeffs))


def compose(p: ConvexPolynomial, q: ConvexPolynomial) -> ConvexPolynomial:
    """Composition ``p(q(z))`` by Horner's scheme on coefficient vectors."""
    out = np.array([p.coeffs[-1]])
    for a in p.coeffs[-2::-1]:
        out = np.convolve(out, q.coeffs)
        out[0] += a
    return ConvexPolynomial(out)


@dataclass(frozen=True)
class PeakingCertificate:
    """Verified strict peak of ``z^power * (alpha*z + 1 - alpha)`` on a node set.

    ``peak_value`` is the closed form ``c * max_modulus**power`` where ``c``
    is the largest ``|alpha*z + 1 - alpha|`` over maximum-modulus nodes;
    ``margin`` is the measured gap to the second-largest node value and
    ``min_power`` the smallest power verified to peak (the scan returns the
    smallest, so it equals ``power``).
    """

    polynomial: ConvexPolynomial
    alpha: float
    power: int
    peak_point: complex
    peak_value: float
    max_modulus: float
    min_power: int
    margin: float


def _peaking_coeffs(power: int, alpha: float) -> np.ndarray:
    coeffs = np.zeros(power + 2)
    coeffs[power] = 1.0 - alpha
    coeffs[power + 1] = alpha
    return coeffs


def _check_peaking_nodes(nodes: list[complex]) -> tuple[float, list[complex]]:
    """Validate the peaking preconditions; return (R, maximum-modulus nodes)."""
    if not nodes:
        raise PreconditionViolated("node set must be nonempty")
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if abs(nodes[i] - nodes[j]) <= NODE_TOLERANCE:
                raise PreconditionViolated("nodes must be distinct")
    moduli = [abs(z) for z in nodes]
    max_modulus = max(moduli)
    if not max_modulus > 1.0:
        raise PreconditionViolated("maximum node modulus must exceed 1")
    top = [z for z, m in zip(nodes, moduli) if max_modulus - m <= NODE_TOLERANCE * max(1.0, max_modulus)]
    for i in range(len(top)):
        for j in range(len(top)):
            if i != j and abs(top[i] - top[j].conjugate()) <= NODE_TOLERANCE:
                raise PreconditionViolated("conjugate pair among maximum-modulus nodes")
    return max_modulus, top


def _scan_for_peak(
    nodes: list[complex],
    alpha: float,
    margin_goal: float,
    power_cap: int,
    max_modulus: float,
) -> tuple[int, int, float] | None:
    """Find the smallest power whose peak lies at a maximum-modulus node.

    Comparisons run in log space so large powers cannot overflow; the scan
    additionally stops once the would-be peak value leaves double range.
    Returns ``(power, peak_index, margin)`` or None at the cap.
    """
    log_base = [math.log(abs(a)) if (a := alpha * z + (1.0 - alpha)) != 0 else -math.inf for z in nodes]
    log_mod = [math.log(abs(z)) if z != 0 else -math.inf for z in nodes]
    is_top = [max_modulus - abs(z) <= NODE_TOLERANCE * max(1.0, max_modulus) for z in nodes]

    def node_log(power: int, lm: float, lb: float) -> float:
        # z**0 is 1 even for the node 0, so keep 0 * (-inf) out of the arithmetic.
        if lm == -math.inf:
            return lb if power == 0 else -math.inf
        return power * lm + lb

    for power in range(power_cap + 1):
        logs = [node_log(power, lm, lb) for lm, lb in zip(log_mod, log_base)]
        best = max(range(len(nodes)), key=lambda k: logs[k])
        if logs[best] > _LOG_VALUE_MAX:
            raise NoPeakWithinCap(power, "peak value left float range before a strict peak")
        if not is_top[best]:
            continue
        # Confirm with direct linear-scale evaluation; these are the numbers
        # a caller can reproduce through evaluate().
        poly = ConvexPolynomial(_peaking_coeffs(power, alpha))
        values = [abs(evaluate(poly, complex(z))) for z in nodes]
        others = [v for k, v in enumerate(values) if k != best]
        margin = values[best] - max(others) if others else values[best]
        if values[best] >= max(values) and margin > margin_goal:
            return power, best, margin
    return None


def peaking_polynomial(
    nodes: Sequence[complex],
    alpha: float | str = "auto",
    margin_goal: float = 0.0,
    power_cap: int = DEFAULT_POWER_CAP,
    avoid_real_values: bool = False,
) -> PeakingCertificate:
    """Construct ``z^m (alpha*z + 1 - alpha)`` strictly peaking on ``nodes``.

    The smallest power ``m <= power_cap`` is returned for which the largest
    node value sits at a maximum-modulus node and exceeds every other node
    value by more than ``margin_goal``.  ``alpha="auto"`` picks 1/2 (or 1/3
    in the degenerate case where 1/2 is the single excluded value for the
    dominant node).  With ``avoid_real_values=True`` (only meaningful for
    node sets disjoint from the real axis) alpha is perturbed over a
    deterministic grid until every node value is non-real.

    Raises
    ------
    PreconditionViolated
        Nodes not distinct, maximum modulus at most 1, a conjugate pair
        among maximum-modulus nodes, alpha outside (0, 1), or an explicit
        alpha equal to the excluded value for this node set.
    NoPeakWithinCap
        The scan (or the realness-avoidance grid) was exhausted.
    """
    node_list = [complex(z) for z in nodes]
    max_modulus, top = _check_peaking_nodes(node_list)

    auto = isinstance(alpha, str)
    if auto:
        if alpha != "auto":
            raise PreconditionViolated("alpha must be a number in (0, 1) or 'auto'")
        alpha_value = 0.5
    else:
        alpha_value = float(alpha)
        if not 0.0 < alpha_value < 1.0:
            raise PreconditionViolated("alpha must lie in the open interval (0, 1)")

    # The single excluded alpha solves (alpha - 1)/alpha = dominant node,
    # which kills the dominant node value and makes a peak impossible.
    dominant = max(top, key=lambda z: z.real)
    scale = 1.0 + alpha_value * max_modulus

    def excluded(a: float) -> bool:
        return abs(a * dominant + (1.0 - a)) <= 1e-14 * scale

    if auto and excluded(alpha_value):
        alpha_value = 1.0 / 3.0
    if not auto and excluded(alpha_value):
        raise PreconditionViolated("alpha is the excluded value for this node set")

    if avoid_real_values:
        if any(abs(z.imag) <= NODE_TOLERANCE for z in node_list):
            raise PreconditionViolated("avoid_real_values requires a node set disjoint from the real axis")
        candidates = _alpha_grid(alpha_value)
        last_cap = power_cap
        for a in candidates:
            if excluded(a):
                continue
            try:
                found = _scan_for_peak(node_list, a, margin_goal, power_cap, max_modulus)
            except NoPeakWithinCap:
                continue
            if found is None:
                continue
            power, best, margin = found
            poly = ConvexPolynomial(_peaking_coeffs(power, a))
            values = [evaluate(poly, complex(z)) for z in node_list]
            if all(abs(v.imag) > NODE_TOLERANCE * max(1.0, abs(v)) for v in values):
                return _certificate(poly, a, power, node_list[best], max_modulus, top, margin)
        raise AlphaGridExhausted(last_cap, len(candidates))

    found = _scan_for_peak(node_list, alpha_value, margin_goal, power_cap, max_modulus)
    if found is None:
        raise NoPeakWithinCap(power_cap)
    power, best, margin = found
    poly = ConvexPolynomial(_peaking_coeffs(power, alpha_value))
    return _certificate(poly, alpha_value, power, node_list[best], max_modulus, top, margin)


def _alpha_grid(center: float) -> list[float]:
    """Deterministic grid of alphas around ``center``, clipped to (0, 1)."""
    grid = [center]
    step = 1.0 / 53.0
    j = 1
    while len(grid) < _ALPHA_GRID_SIZE:
        for sign in (+1.0, -1.0):
            a = center + sign * j * step
            if 0.02 <= a <= 0.98 and len(grid) < _ALPHA_GRID_SIZE:
                grid.append(a)
        j += 1
        if j > 60:
            break
    return grid


def _certificate(
    poly: ConvexPolynomial,
    alpha: float,
    power: int,
    peak_point: complex,
    max_modulus: float,
    top: list[complex],
    margin: float,
) -> PeakingCertificate:
    factor = max(abs(alpha * z + (1.0 - alpha)) for z in top)
    return PeakingCertificate(
        polynomial=poly,
        alpha=alpha,
        power=power,
        peak_point=peak_point,
        peak_value=factor * max_modulus**power,
        max_modulus=max_modulus,
        min_power=power,
        margin=margin,
    )


@dataclass(frozen=True)
class GrowthQuery:
    """Inputs for the scalar growth scan.

    The scan looks for the first index ``n`` with
    ``magnitude(n) * Re(perturbation(n) + exp(i*n*theta) * coefficient)``
    above ``threshold``.  ``perturbation=None`` means identically zero.
    """

    theta: float
    coefficient: complex
    magnitude: Callable[[int], float]
    perturbation: Callable[[int], complex] | None
    threshold: float
    max_n: int


def _check_theta(theta: float) -> None:
    nearest = round(theta / math.pi)
    if abs(theta - nearest * math.pi) <= 1e-12 * max(1.0, abs(theta)):
        raise ThetaMultipleOfPi(theta)


def growth_indices(query: GrowthQuery) -> Iterator[int]:
    """Yield every index up to ``max_n`` whose scan value crosses the threshold."""
    _check_theta(query.theta)
    if complex(query.coefficient) == 0:
        raise ZeroCoefficient()
    eps = query.perturbation
    for n in range(1, query.max_n + 1):
        rotated = cmath.exp(1j * n * query.theta) * query.coefficient
        base = rotated if eps is None else eps(n) + rotated
        value = query.magnitude(n) * base.real
        if value > query.threshold:
            yield n


def find_growth_index(query: GrowthQuery) -> int:
    """Smallest index whose scan value exceeds the threshold.

    Raises ``ThetaMultipleOfPi`` / ``ZeroCoefficient`` for degenerate
    queries and ``NotFoundWithinCap`` when no index up to ``max_n`` works.
    """
    for n in growth_indices(query):
        return n
    raise NotFoundWithinCap(query.max_n)


def multivariable_growth_index(
    ratio: float,
    thetas: Sequence[float],
    coefficients: Sequence[complex],
    threshold: float,
    max_n: int,
) -> int:
    """Smallest ``n`` with ``ratio**n * Re(sum_k exp(i*n*theta_k) * f_k)`` above threshold.

    Requires ``ratio > 1``, every theta off the multiples of pi, no two
    thetas congruent up to sign modulo 2*pi, and coefficients not all zero.
    """
    if not ratio > 1.0:
        raise PreconditionViolated("ratio must exceed 1")
    thetas = [float(t) for t in thetas]
    coeffs = [complex(c) for c in coefficients]
    if len(thetas) != len(coeffs):
        raise PreconditionViolated("thetas and coefficients must have equal length")
    two_pi = 2.0 * math.pi
    for j, t in enumerate(thetas):
        if abs(t - round(t / math.pi) * math.pi) <= NODE_TOLERANCE:
            raise PreconditionViolated(f"theta[{j}] is an integer multiple of pi")
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            for combo in (thetas[i] - thetas[j], thetas[i] + thetas[j]):
                if abs(combo - round(combo / two_pi) * two_pi) <= NODE_TOLERANCE:
                    raise PreconditionViolated(f"theta[{i}] and theta[{j}] coincide up to sign modulo 2*pi")
    if all(c == 0 for c in coeffs):
        raise PreconditionViolated("coefficients must not all be zero")

    power = 1.0
    for n in range(1, max_n + 1):
        power *= ratio
        total = sum(cmath.exp(1j * n * t) * c for t, c in zip(thetas, coeffs))
        value = power * total.real
        if value > threshold:
            return n
    raise NotFoundWithinCap(max_n)
