"""Matrices over C[t, t^-1] and their determinants."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .laurent import LaurentPoly


class PolyMatrix:
    """rows x cols matrix of Laurent polynomials.

    Held densely as ``coeffs[k, i, j]``, the coefficient of
    t^(min_degree + k) in entry (i, j).
    """

    __slots__ = ("coeffs", "min_degree")

    def __init__(self, coeffs: np.ndarray, min_degree: int = 0):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 3:
            raise ValueError("coefficient array must have shape (terms, rows, cols)")
        nz = np.nonzero(np.abs(c).reshape(len(c), -1).max(axis=1) > 0)[0] if len(c) else []
        if len(nz) == 0:
            c = np.zeros((0,) + c.shape[1:], dtype=complex)
            min_degree = 0
        else:
            c = c[nz[0] : nz[-1] + 1]
            min_degree += int(nz[0])
        c.flags.writeable = False
        self.coeffs = c
        self.min_degree = int(min_degree)

    @classmethod
    def from_terms(cls, terms: dict[int, np.ndarray], shape: tuple[int, int] | None = None) -> "PolyMatrix":
        """Build sum_k terms[k] t^k from constant matrices."""
        if not terms:
            if shape is None:
                raise ValueError("shape required for an empty term dict")
            return cls(np.zeros((0,) + shape), 0)
        lo, hi = min(terms), max(terms)
        first = np.asarray(next(iter(terms.values())))
        c = np.zeros((hi - lo + 1,) + first.shape, dtype=complex)
        for k, m in terms.items():
            c[k - lo] += m
        return cls(c, lo)

    @classmethod
    def constant(cls, m: np.ndarray, power: int = 0) -> "PolyMatrix":
        return cls(np.asarray(m, dtype=complex)[None], power)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.constant(np.eye(n))

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[LaurentPoly]]) -> "PolyMatrix":
        rows, cols = len(entries), len(entries[0])
        terms: dict[int, np.ndarray] = {}
        for i in range(rows):
            for j in range(cols):
                for k, v in entries[i][j].to_dict().items():
                    terms.setdefault(k, np.zeros((rows, cols), dtype=complex))[i, j] += v
        return cls.from_terms(terms, (rows, cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1], self.coeffs.shape[2]

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    def entry(self, i: int, j: int) -> LaurentPoly:
        return LaurentPoly(self.coeffs[:, i, j], self.min_degree)

    def entries(self) -> list[LaurentPoly]:
        """Row-major list of entries."""
        return [self.entry(i, j) for i in range(self.rows) for j in range(self.cols)]

    def __call__(self, z) -> np.ndarray:
        """Evaluate at a point, or at an array of points (leading axis)."""
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** (self.min_degree + np.arange(len(self.coeffs)))
        return np.tensordot(powers, self.coeffs, axes=([-1], [0]))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        terms = self.to_terms()
        for k, m in other.to_terms().items():
            terms[k] = terms.get(k, 0) + m
        return PolyMatrix.from_terms(terms, self.shape)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(-self.coeffs, self.min_degree)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        terms: dict[int, np.ndarray] = {}
        for k1, m1 in self.to_terms().items():
            for k2, m2 in other.to_terms().items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + m1 @ m2
        return PolyMatrix.from_terms(terms, (self.rows, other.cols))

    def scale(self, c: complex) -> "PolyMatrix":
        return PolyMatrix(self.coeffs * c, self.min_degree)

    def shift(self, k: int) -> "PolyMatrix":
        return PolyMatrix(self.coeffs, self.min_degree + k)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.coeffs.transpose(0, 2, 1), self.min_degree)

    def to_terms(self) -> dict[int, np.ndarray]:
        return {self.min_degree + k: m for k, m in enumerate(self.coeffs)}

    def row_degree_range(self, i: int) -> tuple[int, int] | None:
        nz = np.nonzero(np.abs(self.coeffs[:, i, :]).max(axis=1) > 0)[0]
        if nz.size == 0:
            return None
        return self.min_degree + int(nz[0]), self.min_degree + int(nz[-1])

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, degrees {self.min_degree}..{self.min_degree + len(self.coeffs) - 1})"


def matrix_det(a: PolyMatrix) -> LaurentPoly:
    """Determinant by evaluation at roots of unity and inverse-DFT interpolation.

    Row i is shifted by t^(-lo_i) so its entries are ordinary polynomials of
    degree at most hi_i - lo_i; the shifted determinant then has degree at
    most D = sum_i (hi_i - lo_i), so D + 1 sample points on the unit circle
    determine it exactly.
    """
    n, m = a.shape
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    if n == 0:
        return LaurentPoly.constant(1.0)
    lo_total = 0
    bound = 0
    for i in range(n):
        rng = a.row_degree_range(i)
        if rng is None:
            return LaurentPoly()
        lo_total += rng[0]
        bound += rng[1] - rng[0]
    npts = bound + 1
    nodes = np.exp(2j * np.pi * np.arange(npts) / npts)
    values = np.linalg.det(a(nodes)) * nodes ** (-lo_total)
    coeffs = np.fft.fft(values) / npts
    # numerically singular: everything below roundoff of the Hadamard bound
    row_sizes = np.abs(a.coeffs).sum(axis=(0, 2))
    if np.abs(coeffs).max() < 1e-14 * np.prod(row_sizes):
        return LaurentPoly()
    return LaurentPoly(coeffs, lo_total)


def block_assemble(blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Glue a grid of equally sized blocks into a single matrix."""
    if not blocks or not blocks[0]:
        raise ValueError("empty block grid")
    shape = blocks[0][0].shape
    for row in blocks:
        if len(row) != len(blocks[0]):
            raise ValueError("ragged block grid")
        for b in row:
            if b.shape != shape:
                raise ValueError(f"block shape {b.shape} differs from {shape}")
    lo = min(b.min_degree for row in blocks for b in row)
    hi = max(b.min_degree + len(b.coeffs) - 1 for row in blocks for b in row)
    br, bc = shape
    out = np.zeros((max(hi - lo + 1, 0), br * len(blocks), bc * len(blocks[0])), dtype=complex)
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            off = b.min_degree - lo
            out[off : off + len(b.coeffs), i * br : (i + 1) * br, j * bc : (j + 1) * bc] = b.coeffs
    return PolyMatrix(out, lo)


def remove_block_column(m: PolyMatrix, j: int, block: int = 3) -> PolyMatrix:
    """Drop the j-th block column (1-based) of width ``block``."""
    ncols = m.cols // block
    if m.cols % block or not 1 <= j <= ncols:
        raise ValueError(f"cannot remove block column {j} from a matrix with {m.cols} columns")
    keep = [c for c in range(m.cols) if not (j - 1) * block <= c < j * block]
    return PolyMatrix(m.coeffs[:, :, keep], m.min_degree)
