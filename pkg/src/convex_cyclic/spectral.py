"""Spectral analysis and the convex-cyclicity decision.

A matrix is classified from its eigenstructure alone.  Over the complex
field, convex-cyclicity requires cyclicity, every eigenvalue outside the
closed unit disk, no real eigenvalue and no conjugate pair among the
eigenvalues.  Over the real field it requires cyclicity and every eigenvalue
outside both the closed unit disk and the nonnegative reals (conjugate pairs
are then permitted).  Dropping the cyclicity requirement in either case
characterizes the matrices whose invariant closed convex sets with nonempty
orbit interaction are all subspaces, so the verdict reports that property
separately.  Decisions near the spectral boundary are taken conservatively
and flagged as borderline rather than decided silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Any, Sequence

import numpy as np

from ._jsonutil import complex_pair, parse_complex, parse_real
from .errors import (
    DimensionMismatch,
    NonSquare,
    NotCanonicalForm,
    ParseError,
    PreconditionViolated,
)

__all__ = [
    "MatrixSpec",
    "EigenvalueInfo",
    "Eigenstructure",
    "FailedCondition",
    "ConvexCyclicVerdict",
    "REASON_NOT_CYCLIC",
    "REASON_IN_CLOSED_DISK",
    "REASON_REAL_EIGENVALUE",
    "REASON_NONNEGATIVE_REAL",
    "REASON_CONJUGATE_PAIR",
    "REASON_REPEATED_EIGENVALUE",
    "default_tolerance",
    "eigenstructure",
    "is_cyclic",
    "classify",
    "convex_cyclic_vector_test",
]

REASON_NOT_CYCLIC = "NotCyclic"
REASON_IN_CLOSED_DISK = "EigenvalueInClosedDisk"
REASON_REAL_EIGENVALUE = "RealEigenvalue"
REASON_NONNEGATIVE_REAL = "NonNegativeRealEigenvalue"
REASON_CONJUGATE_PAIR = "ConjugatePair"
REASON_REPEATED_EIGENVALUE = "RepeatedEigenvalue"

_REASON_ORDER = {
    REASON_NOT_CYCLIC: 0,
    REASON_REPEATED_EIGENVALUE: 1,
    REASON_IN_CLOSED_DISK: 2,
    REASON_REAL_EIGENVALUE: 3,
    REASON_NONNEGATIVE_REAL: 4,
    REASON_CONJUGATE_PAIR: 5,
}


@dataclass(frozen=True, eq=False)
class MatrixSpec:
    """A square matrix together with its scalar field tag.

    ``field`` is ``"real"`` or ``"complex"``; real matrices must have
    exactly zero imaginary parts.  The tag decides which classification
    rules apply, not the storage dtype.
    """

    field: str
    entries: np.ndarray

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise PreconditionViolated(f"unknown field tag {self.field!r}")
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise NonSquare(arr.shape)
        if arr.shape[0] < 1:
            raise PreconditionViolated("matrix must be at least 1x1")
        if not np.all(np.isfinite(arr.real)) or (np.iscomplexobj(arr) and not np.all(np.isfinite(arr.imag))):
            raise PreconditionViolated("matrix entries must be finite")
        if self.field == "real":
            if np.iscomplexobj(arr):
                if np.any(arr.imag != 0.0):
                    raise PreconditionViolated("real field requires exactly real entries")
                arr = arr.real
            arr = arr.astype(float)
        else:
            arr = arr.astype(complex)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def to_jsonable(self) -> dict:
        if self.field == "real":
            rows = [[float(x) for x in row] for row in self.entries]
        else:
            rows = [[complex_pair(x) for x in row] for row in self.entries]
        return {"field": self.field, "rows": rows}

    @staticmethod
    def from_jsonable(obj: Any) -> "MatrixSpec":
        if not isinstance(obj, dict):
            raise ParseError("matrix spec must be an object")
        field = obj.get("field")
        if field not in ("real", "complex"):
            raise ParseError(f"matrix 'field' must be 'real' or 'complex', got {field!r}")
        rows = obj.get("rows")
        if not isinstance(rows, list) or not rows:
            raise ParseError("matrix 'rows' must be a nonempty list of lists")
        parsed = []
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise ParseError(f"rows[{i}] must be a list")
            if field == "real":
                parsed.append([parse_real(x, f"rows[{i}]") for x in row])
            else:
                parsed.append([parse_complex(x, f"rows[{i}]") for x in row])
        lengths = {len(r) for r in parsed}
        if lengths != {len(rows)}:
            raise ParseError("matrix rows must form a square array")
        dtype = float if field == "real" else complex
        try:
            return MatrixSpec(field, np.array(parsed, dtype=dtype))
        except NonSquare as exc:
            raise ParseError(str(exc)) from exc


def _coerce_matrix(matrix: MatrixSpec | np.ndarray | Sequence) -> MatrixSpec:
    if isinstance(matrix, MatrixSpec):
        return matrix
    arr = np.asarray(matrix)
    field = "complex" if np.iscomplexobj(arr) else "real"
    return MatrixSpec(field, arr)


def default_tolerance(matrix: MatrixSpec | np.ndarray) -> float:
    """Default spectral tolerance: ``1e-9 * max(1, ||T||_2)``."""
    spec = _coerce_matrix(matrix)
    return 1e-9 * max(1.0, float(np.linalg.norm(spec.entries, 2)))


@dataclass(frozen=True)
class EigenvalueInfo:
    value: complex
    algebraic_mult: int
    geometric_mult: int


@dataclass(frozen=True)
class Eigenstructure:
    """Clustered eigenvalues with multiplicities and adjoint spectrum.

    Every cluster gets an entry (conjugate partners of a real matrix are
    listed separately so that algebraic multiplicities sum to the
    dimension); ``conjugate_pairs`` carries the pairing metadata as index
    pairs into ``eigenvalues`` for real matrices.
    """

    field: str
    eigenvalues: tuple[EigenvalueInfo, ...]
    adjoint_spectrum: tuple[complex, ...]
    conjugate_pairs: tuple[tuple[int, int], ...]
    tol: float

    @property
    def dimension(self) -> int:
        return sum(info.algebraic_mult for info in self.eigenvalues)


def _cluster(values: np.ndarray, radius: float) -> list[list[int]]:
    """Single-linkage clustering of points in the plane."""
    n = len(values)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def eigenstructure(matrix: MatrixSpec | np.ndarray, tol: float | None = None) -> Eigenstructure:
    """Cluster the spectrum and compute multiplicities.

    Eigenvalues within ``tol`` of each other are merged (single linkage)
    and reported at their mean; the geometric multiplicity is the kernel
    dimension of ``T - lambda*I`` measured by singular values against the
    threshold ``tol * max(1, sigma_max)``.
    """
    spec = _coerce_matrix(matrix)
    if tol is None:
        tol = default_tolerance(spec)
    if not tol > 0.0:
        raise PreconditionViolated("tolerance must be positive")
    entries = spec.entries.astype(complex)
    n = spec.dimension
    raw = np.linalg.eig(entries)[0]
    infos = []
    for group in _cluster(raw, tol):
        value = complex(np.mean(raw[group]))
        shifted = entries - value * np.eye(n)
        sigma = np.linalg.svd(shifted, compute_uv=False)
        threshold = tol * max(1.0, float(sigma[0]) if len(sigma) else 0.0)
        rank = int(np.sum(sigma > threshold))
        geometric = min(max(1, n - rank), len(group))
        infos.append(EigenvalueInfo(value, len(group), geometric))
    infos.sort(key=lambda info: (info.value.real, info.value.imag))
    pairs = []
    if spec.field == "real":
        for i, a in enumerate(infos):
            if a.value.imag > tol:
                for j, b in enumerate(infos):
                    if abs(a.value - b.value.conjugate()) <= tol:
                        pairs.append((min(i, j), max(i, j)))
    pairs = sorted(set(pairs))
    return Eigenstructure(
        field=spec.field,
        eigenvalues=tuple(infos),
        adjoint_spectrum=tuple(info.value.conjugate() for info in infos),
        conjugate_pairs=tuple(pairs),
        tol=float(tol),
    )


def is_cyclic(structure: Eigenstructure | MatrixSpec | np.ndarray, tol: float | None = None) -> bool:
    """Cyclic exactly when every eigenvalue has geometric multiplicity one."""
    if not isinstance(structure, Eigenstructure):
        structure = eigenstructure(structure, tol)
    return all(info.geometric_mult == 1 for info in structure.eigenvalues)


@dataclass(frozen=True)
class FailedCondition:
    """One violated clause with the offending eigenvalue(s)."""

    reason: str
    eigenvalues: tuple[complex, ...] = ()

    def to_jsonable(self) -> dict:
        return {
            "reason": self.reason,
            "eigenvalues": [complex_pair(z) for z in self.eigenvalues],
        }


@dataclass(frozen=True)
class ConvexCyclicVerdict:
    field: str
    is_cyclic: bool
    is_convex_cyclic: bool
    invariant_convex_sets_are_subspaces: bool
    failed_conditions: tuple[FailedCondition, ...]
    borderline: bool
    tolerances_used: dict[str, float]
    eigenstructure: Eigenstructure = dataclass_field(repr=False)

    def to_jsonable(self) -> dict:
        return {
            "field": self.field,
            "is_cyclic": self.is_cyclic,
            "is_convex_cyclic": self.is_convex_cyclic,
            "invariant_convex_sets_are_subspaces": self.invariant_convex_sets_are_subspaces,
            "borderline": self.borderline,
            "failed_conditions": [c.to_jsonable() for c in self.failed_conditions],
            "eigenvalues": [
                {
                    "value": complex_pair(info.value),
                    "algebraic_mult": info.algebraic_mult,
                    "geometric_mult": info.geometric_mult,
                }
                for info in self.eigenstructure.eigenvalues
            ],
            "tolerances_used": dict(self.tolerances_used),
        }


def _sort_failures(failures: list[FailedCondition]) -> tuple[FailedCondition, ...]:
    def key(c: FailedCondition):
        values = tuple((z.real, z.imag) for z in c.eigenvalues)
        return (_REASON_ORDER.get(c.reason, 99), values)

    return tuple(sorted(failures, key=key))


def classify(matrix: MatrixSpec | np.ndarray, tol: float | None = None) -> ConvexCyclicVerdict:
    """Decide convex-cyclicity and the invariant-convex-set property.

    Strictness margins: an eigenvalue counts as inside the closed unit disk
    when ``|lambda| <= 1 + tol``, as real when ``|Im lambda| <= tol``, as on
    the nonnegative reals when additionally ``Re lambda >= -tol``, and two
    eigenvalues form a conjugate pair when ``|a - conj(b)| <= tol``.  Any
    decision within ``2 * tol`` of flipping sets ``borderline``.
    """
    spec = _coerce_matrix(matrix)
    if tol is None:
        tol = default_tolerance(spec)
    structure = eigenstructure(spec, tol)
    infos = structure.eigenvalues

    failures: list[FailedCondition] = []
    borderline = False

    cyclic = True
    for info in infos:
        if info.geometric_mult >= 2:
            cyclic = False
            failures.append(FailedCondition(REASON_REPEATED_EIGENVALUE, (info.value,)))
    if not cyclic:
        failures.append(FailedCondition(REASON_NOT_CYCLIC))

    eigen_ok = True
    for info in infos:
        lam = info.value
        if abs(abs(lam) - 1.0) <= 2 * tol:
            borderline = True
        if abs(lam) <= 1.0 + tol:
            eigen_ok = False
            failures.append(FailedCondition(REASON_IN_CLOSED_DISK, (lam,)))
        if 0.0 < abs(lam.imag) <= 2 * tol:
            borderline = True
        if spec.field == "complex":
            if abs(lam.imag) <= tol:
                eigen_ok = False
                failures.append(FailedCondition(REASON_REAL_EIGENVALUE, (lam,)))
        else:
            if abs(lam.imag) <= tol and lam.real >= -tol:
                eigen_ok = False
                failures.append(FailedCondition(REASON_NONNEGATIVE_REAL, (lam,)))
            if abs(lam.imag) <= 2 * tol and abs(lam.real) <= 2 * tol:
                borderline = True
    if spec.field == "complex":
        for i in range(len(infos)):
            for j in range(i + 1, len(infos)):
                gap = abs(infos[i].value - infos[j].value.conjugate())
                if gap <= tol:
                    eigen_ok = False
                    failures.append(
                        FailedCondition(REASON_CONJUGATE_PAIR, (infos[i].value, infos[j].value))
                    )
                elif gap <= 2 * tol:
                    borderline = True

    return ConvexCyclicVerdict(
        field=spec.field,
        is_cyclic=cyclic,
        is_convex_cyclic=cyclic and eigen_ok,
        invariant_convex_sets_are_subspaces=eigen_ok,
        failed_conditions=_sort_failures(failures),
        borderline=borderline,
        tolerances_used={
            "tol": float(tol),
            "disk_threshold": 1.0 + float(tol),
            "realness_threshold": float(tol),
            "conjugate_threshold": float(tol),
            "borderline_band": 2.0 * float(tol),
        },
        eigenstructure=structure,
    )


def convex_cyclic_vector_test(canonical: Any, vector: Sequence[complex]) -> bool:
    """Blockwise test for convex-cyclic vectors of a canonical direct sum.

    For a convex-cyclic canonical matrix the convex-cyclic vectors are
    exactly those with a nonzero coordinate for every diagonal entry, a
    nonzero first coordinate for every Jordan block, and a nonzero first
    coordinate pair for every 2x2-cell real block.  Zero tests are exact;
    the answer is only meaningful when the built matrix is convex-cyclic.
    """
    from .jordan_forms import (
        DiagonalEntrySpec,
        DirectSumSpec,
        JordanBlockSpec,
        RealJordanBlockSpec,
    )

    if isinstance(canonical, (JordanBlockSpec, RealJordanBlockSpec, DiagonalEntrySpec)):
        canonical = DirectSumSpec((canonical,))
    if not isinstance(canonical, DirectSumSpec):
        raise NotCanonicalForm(
            f"expected a canonical direct-sum descriptor, got {type(canonical).__name__}"
        )
    arr = np.asarray(vector, dtype=complex).ravel()
    if arr.size != canonical.dimension:
        raise DimensionMismatch(canonical.dimension, arr.size)
    pos = 0
    for block in canonical.blocks:
        if isinstance(block, DiagonalEntrySpec):
            if arr[pos] == 0:
                return False
        elif isinstance(block, JordanBlockSpec):
            if arr[pos] == 0:
                return False
        else:
            if arr[pos] == 0 and arr[pos + 1] == 0:
                return False
        pos += block.dimension
    return True
