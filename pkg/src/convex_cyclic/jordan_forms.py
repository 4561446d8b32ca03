"""Canonical blocks: Jordan blocks, 2x2 rotation-scaling blocks, direct sums.

Lower-triangular convention throughout: a Jordan block carries its
eigenvalue on the diagonal and ones on the subdiagonal; a real block of
half-dimension ``k`` carries ``r * R(theta)`` rotation cells on the diagonal
and 2x2 identity cells on the block subdiagonal.  Closed forms are provided
for polynomials of Jordan blocks (Toeplitz in the derivatives) and for
powers of real blocks (binomial in the rotation angles), plus the
complexification map pairing adjacent real coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np

from ._jsonutil import complex_pair, parse_complex, parse_real
from .errors import OddLength, ParseError, PreconditionViolated
from .spectral import MatrixSpec

__all__ = [
    "JordanBlockSpec",
    "RealJordanBlockSpec",
    "DiagonalEntrySpec",
    "DirectSumSpec",
    "BlockSpec",
    "build",
    "poly_on_jordan_block",
    "matrix_polynomial",
    "complexify",
    "rotation",
    "real_block_power",
]


@dataclass(frozen=True)
class JordanBlockSpec:
    """Jordan block of dimension ``size`` with the given eigenvalue."""

    size: int
    eigenvalue: complex

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise PreconditionViolated("Jordan block size must be an integer >= 1")
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))

    @property
    def dimension(self) -> int:
        return self.size

    @property
    def is_real(self) -> bool:
        return self.eigenvalue.imag == 0.0


@dataclass(frozen=True)
class RealJordanBlockSpec:
    """Real block of dimension ``2 * size`` for the pair ``modulus * exp(+-i*angle)``."""

    size: int
    modulus: float
    angle: float

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise PreconditionViolated("real block size must be an integer >= 1")
        if not self.modulus >= 0.0:
            raise PreconditionViolated("real block modulus must be nonnegative")
        object.__setattr__(self, "modulus", float(self.modulus))
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def dimension(self) -> int:
        return 2 * self.size

    @property
    def is_real(self) -> bool:
        return True


@dataclass(frozen=True)
class DiagonalEntrySpec:
    """A 1x1 block."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    @property
    def dimension(self) -> int:
        return 1

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


BlockSpec = Union[JordanBlockSpec, RealJordanBlockSpec, DiagonalEntrySpec]


@dataclass(frozen=True)
class DirectSumSpec:
    """Ordered direct sum of canonical blocks."""

    blocks: tuple[BlockSpec, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise PreconditionViolated("direct sum needs at least one block")
        for b in blocks:
            if not isinstance(b, (JordanBlockSpec, RealJordanBlockSpec, DiagonalEntrySpec)):
                raise PreconditionViolated(f"unsupported block type {type(b).__name__}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dimension(self) -> int:
        return sum(b.dimension for b in self.blocks)

    @property
    def is_real(self) -> bool:
        return all(b.is_real for b in self.blocks)

    def to_jsonable(self) -> dict:
        out = []
        for b in self.blocks:
            if isinstance(b, JordanBlockSpec):
                out.append({"type": "jordan", "k": b.size, "lambda": complex_pair(b.eigenvalue)})
            elif isinstance(b, RealJordanBlockSpec):
                out.append({"type": "real_jordan", "k": b.size, "r": b.modulus, "theta": b.angle})
            else:
                value = b.value
                entry = value.real if value.imag == 0.0 else complex_pair(value)
                out.append({"type": "diag", "value": entry})
        return {"blocks": out}

    @staticmethod
    def from_jsonable(obj: Any) -> "DirectSumSpec":
        if not isinstance(obj, dict) or "blocks" not in obj:
            raise ParseError("direct sum spec must be an object with a 'blocks' list")
        raw = obj["blocks"]
        if not isinstance(raw, list) or not raw:
            raise ParseError("'blocks' must be a nonempty list")
        blocks: list[BlockSpec] = []
        for i, item in enumerate(raw):
            where = f"blocks[{i}]"
            if not isinstance(item, dict) or "type" not in item:
                raise ParseError(f"{where}: expected an object with a 'type' tag")
            kind = item["type"]
            try:
                if kind == "jordan":
                    blocks.append(JordanBlockSpec(int(item["k"]), parse_complex(item["lambda"], where)))
                elif kind == "real_jordan":
                    blocks.append(
                        RealJordanBlockSpec(
                            int(item["k"]),
                            parse_real(item["r"], where),
                            parse_real(item["theta"], where),
                        )
                    )
                elif kind == "diag":
                    blocks.append(DiagonalEntrySpec(parse_complex(item["value"], where)))
                else:
                    raise ParseError(f"{where}: unknown block type {kind!r}")
            except KeyError as exc:
                raise ParseError(f"{where}: missing field {exc.args[0]!r}") from exc
            except PreconditionViolated as exc:
                raise ParseError(f"{where}: {exc}") from exc
        return DirectSumSpec(tuple(blocks))


def rotation(angle: float) -> np.ndarray:
    """The 2x2 rotation matrix R(angle)."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _build_block(block: BlockSpec, dtype) -> np.ndarray:
    if isinstance(block, JordanBlockSpec):
        out = np.zeros((block.size, block.size), dtype=dtype)
        lam = block.eigenvalue if dtype == complex else block.eigenvalue.real
        np.fill_diagonal(out, lam)
        for i in range(block.size - 1):
            out[i + 1, i] = 1.0
        return out
    if isinstance(block, RealJordanBlockSpec):
        k = block.size
        out = np.zeros((2 * k, 2 * k), dtype=dtype)
        cell = block.modulus * rotation(block.angle)
        for i in range(k):
            out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = cell
        for i in range(k - 1):
            out[2 * i + 2 : 2 * i + 4, 2 * i : 2 * i + 2] = np.eye(2)
        return out
    value = block.value if dtype == complex else block.value.real
    return np.array([[value]], dtype=dtype)


def build(spec: BlockSpec | DirectSumSpec) -> MatrixSpec:
    """Materialize a canonical descriptor as a matrix.

    The field tag is real exactly when every block has real entries
    (real eigenvalues, real diagonal values, or rotation-scaling blocks).
    """
    if isinstance(spec, (JordanBlockSpec, RealJordanBlockSpec, DiagonalEntrySpec)):
        spec = DirectSumSpec((spec,))
    if not isinstance(spec, DirectSumSpec):
        raise PreconditionViolated(f"cannot build from {type(spec).__name__}")
    field = "real" if spec.is_real else "complex"
    dtype = float if field == "real" else complex
    n = spec.dimension
    out = np.zeros((n, n), dtype=dtype)
    pos = 0
    for block in spec.blocks:
        d = block.dimension
        out[pos : pos + d, pos : pos + d] = _build_block(block, dtype)
        pos += d
    return MatrixSpec(field, out)


def _poly_derivative(coeffs: np.ndarray, order: int) -> np.ndarray:
    c = np.asarray(coeffs)
    for _ in range(order):
        if len(c) <= 1:
            return np.zeros(0)
        c = c[1:] * np.arange(1, len(c))
    return c


def _horner(coeffs: np.ndarray, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for a in np.asarray(coeffs)[::-1]:
        acc = acc * z + complex(a)
    return acc


def poly_on_jordan_block(p: Sequence[float], eigenvalue: complex, size: int) -> np.ndarray:
    """Closed form for ``p(J)`` on a lower-triangular Jordan block.

    The result is lower-triangular Toeplitz: entry ``(i, j)`` for ``i >= j``
    equals the ``(i - j)``-th derivative of ``p`` at the eigenvalue divided
    by ``(i - j)!``.  Derivative coefficients come from exact index shifts,
    so ``p(J) == 0`` exactly when ``p`` has a zero of order ``size`` there.
    """
    if size < 1:
        raise PreconditionViolated("block size must be >= 1")
    coeffs = np.asarray(getattr(p, "coeffs", p))
    lam = complex(eigenvalue)
    out = np.zeros((size, size), dtype=complex)
    for d in range(size):
        value = _horner(_poly_derivative(coeffs, d), lam) / math.factorial(d)
        for i in range(d, size):
            out[i, i - d] = value
    return out


def matrix_polynomial(p: Sequence[float], matrix: MatrixSpec | np.ndarray) -> np.ndarray:
    """Dense Horner evaluation of a polynomial at a matrix."""
    entries = matrix.entries if isinstance(matrix, MatrixSpec) else np.asarray(matrix)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise PreconditionViolated("matrix polynomial needs a square matrix")
    coeffs = np.asarray(getattr(p, "coeffs", p))
    n = entries.shape[0]
    dtype = np.result_type(entries.dtype, coeffs.dtype)
    eye = np.eye(n, dtype=dtype)
    acc = coeffs[-1] * eye
    for a in coeffs[-2::-1]:
        acc = acc @ entries + a * eye
    return acc


def complexify(x: Sequence[float]) -> np.ndarray:
    """Pair adjacent real coordinates into complex ones.

    ``(x1, x2, ..., x_{2n-1}, x_{2n}) -> (x1 + i*x2, ..., x_{2n-1} + i*x_{2n})``.
    A linear isometry; it intertwines a real block of half-dimension ``k``
    with the Jordan block of dimension ``k`` at ``modulus * exp(i*angle)``.
    """
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PreconditionViolated("complexify expects a real vector") from exc
    if arr.ndim != 1:
        raise PreconditionViolated("complexify expects a 1-d vector")
    if arr.size % 2 != 0:
        raise OddLength(arr.size)
    return arr[0::2] + 1j * arr[1::2]


def real_block_power(modulus: float, angle: float, size: int, n: int) -> np.ndarray:
    """Closed form for the ``n``-th power of a real block.

    Cell ``(i, j)`` with ``d = i - j >= 0`` equals
    ``C(n, d) * modulus**(n - d) * R((n - d) * angle)`` and zero above the
    diagonal; ``n = 0`` gives the identity.
    """
    if size < 1:
        raise PreconditionViolated("block size must be >= 1")
    if n < 0:
        raise PreconditionViolated("power must be nonnegative")
    out = np.zeros((2 * size, 2 * size))
    for d in range(size):
        if d > n:
            break
        cell = math.comb(n, d) * modulus ** (n - d) * rotation((n - d) * angle)
        for i in range(d, size):
            j = i - d
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = cell
    return out
