"""Exact arithmetic over the Boolean hypercube, at brute-force oracle scale.

Functions on {0,1}^(r x n) are stored as dense tables indexed by an integer
code: row i of a matrix occupies bits [(i-1)*n, i*n) of the code, and inside
a row bit j-1 is column j.  Column patterns u in {0,1}^r use the package-wide
encoding sum(u_i * 2^(i-1)).  Everything here is deliberately a direct
transcription of the definitions; this module is the ground truth the
algebraic modules are checked against, not a performance kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DimensionError, OracleLimitError
from .indexset import GlElement, MultiIndex

DEFAULT_ORACLE_LIMIT_BITS = 16

Rational = Fraction | int


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BitVector:
    """A vector in {0,1}^n, stored as a bit mask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.mask < (1 << self.n):
            raise DimensionError(f"mask {self.mask} out of range for length {self.n}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"entries must be 0/1: {bits}")
        return cls(len(bits), sum(b << i for i, b in enumerate(bits)))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.mask ^ other.mask)


@dataclass(frozen=True)
class BitMatrix:
    """An r x n matrix over F2, stored as one mask per row."""

    r: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.r:
            raise DimensionError(f"expected {self.r} rows, got {len(self.rows)}")
        if any(not 0 <= m < (1 << self.n) for m in self.rows):
            raise DimensionError(f"row mask out of range for n={self.n}")

    @classmethod
    def from_rows(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        n = vectors[0].n
        if any(v.n != n for v in vectors):
            raise DimensionError("rows differ in length")
        return cls(len(vectors), n, tuple(v.mask for v in vectors))

    @classmethod
    def from_code(cls, r: int, n: int, code: int) -> "BitMatrix":
        mask = (1 << n) - 1
        return cls(r, n, tuple((code >> (i * n)) & mask for i in range(r)))

    @property
    def code(self) -> int:
        return sum(m << (i * self.n) for i, m in enumerate(self.rows))

    def row(self, i: int) -> BitVector:
        """Row i, 1-based."""
        return BitVector(self.n, self.rows[i - 1])

    def column(self, j: int) -> int:
        """Pattern code of column j, 1-based."""
        return sum(((m >> (j - 1)) & 1) << i for i, m in enumerate(self.rows))


def hamming_weight(x: BitVector) -> int:
    """Number of nonzero bits."""
    return _popcount(x.mask)


def character(x: BitVector, y: BitVector) -> int:
    """The Fourier character chi_x(y) = (-1)^<x,y>."""
    if x.n != y.n:
        raise DimensionError(f"length mismatch: {x.n} vs {y.n}")
    return -1 if _popcount(x.mask & y.mask) & 1 else 1


def row_combine(u: BitVector, X: BitMatrix) -> BitVector:
    """The combination u^T X over F2: XOR of the rows i with u_i = 1."""
    if u.n != X.r:
        raise DimensionError(f"u has length {u.n}, matrix has {X.r} rows")
    mask = 0
    for i in range(X.r):
        if (u.mask >> i) & 1:
            mask ^= X.rows[i]
    return BitVector(X.n, mask)


def column_enumerator(X: BitMatrix) -> MultiIndex:
    """cf_X: how many times each pattern in {0,1}^r occurs as a column of X."""
    return MultiIndex(X.r, column_counts(X.r, X.n, X.code))


def column_counts(r: int, n: int, code: int) -> tuple[int, ...]:
    counts = [0] * (1 << r)
    for j in range(n):
        u = 0
        for i in range(r):
            u |= ((code >> (i * n + j)) & 1) << i
        counts[u] += 1
    return tuple(counts)


def act_column_permutation(sigma: Sequence[int], X: BitMatrix) -> BitMatrix:
    """Column action: column j of the result is column sigma[j] of X (0-based perm)."""
    if sorted(sigma) != list(range(X.n)):
        raise ValueError(f"not a permutation of 0..{X.n - 1}: {sigma}")
    rows = tuple(
        sum(((m >> sigma[j]) & 1) << j for j in range(X.n)) for m in X.rows
    )
    return BitMatrix(X.r, X.n, rows)


def act_gl(T: GlElement, X: BitMatrix) -> BitMatrix:
    """The product TX over F2; T acts on every column of X."""
    if T.r != X.r:
        raise DimensionError(f"group element has r={T.r}, matrix has r={X.r}")
    rows = [0] * X.r
    for j in range(X.n):
        u = T.apply(X.column(j + 1))
        for i in range(X.r):
            rows[i] |= ((u >> i) & 1) << j
    return BitMatrix(X.r, X.n, tuple(rows))


def act_row_permutation(pi: Sequence[int], X: BitMatrix) -> BitMatrix:
    """Row action used by the S_r symmetry checks: row i of the result is row pi[i] (0-based)."""
    if sorted(pi) != list(range(X.r)):
        raise ValueError(f"not a permutation of 0..{X.r - 1}: {pi}")
    return BitMatrix(X.r, X.n, tuple(X.rows[pi[i]] for i in range(X.r)))


class CubeFunction:
    """A dense table of exact values over all r x n bit matrices.

    Immutable by convention after construction.  Values may be ints or
    Fractions; all arithmetic stays exact either way.
    """

    __slots__ = ("r", "n", "values")

    def __init__(
        self,
        r: int,
        n: int,
        values: Sequence[Rational],
        limit: int | None = None,
    ) -> None:
        bits = r * n
        cap = DEFAULT_ORACLE_LIMIT_BITS if limit is None else limit
        if bits > cap:
            raise OracleLimitError(
                f"r*n = {bits} exceeds the oracle limit of {cap} bits"
            )
        if len(values) != 1 << bits:
            raise DimensionError(
                f"expected {1 << bits} values for r={r}, n={n}, got {len(values)}"
            )
        self.r = r
        self.n = n
        self.values = list(values)

    @classmethod
    def from_callable(
        cls, r: int, n: int, fn: Callable[[BitMatrix], Rational], limit: int | None = None
    ) -> "CubeFunction":
        return cls(
            r, n, [fn(BitMatrix.from_code(r, n, c)) for c in range(1 << (r * n))], limit
        )

    def __call__(self, X: BitMatrix) -> Rational:
        return self.values[X.code]

    def at_code(self, code: int) -> Rational:
        return self.values[code]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeFunction):
            return NotImplemented
        return (
            self.r == other.r
            and self.n == other.n
            and all(a == b for a, b in zip(self.values, other.values))
        )


def delta_function(r: int, n: int, at: int = 0) -> CubeFunction:
    values = [0] * (1 << (r * n))
    values[at] = 1
    return CubeFunction(r, n, values)


def level_set_indicator(alpha: MultiIndex, n: int | None = None) -> CubeFunction:
    """Indicator L_alpha of the matrices whose column enumerator equals alpha."""
    r, n = alpha.r, alpha.n if n is None else n
    if alpha.n != n:
        raise DimensionError(f"alpha sums to {alpha.n}, expected {n}")
    values = [
        1 if column_counts(r, n, code) == alpha.counts else 0
        for code in range(1 << (r * n))
    ]
    return CubeFunction(r, n, values)


def _subset_mask(r: int, S: Iterable[int]) -> int:
    mask = 0
    for i in S:
        if not 1 <= i <= r:
            raise DimensionError(f"row index {i} outside 1..{r}")
        mask |= 1 << (i - 1)
    return mask


def partial_fourier(f: CubeFunction, S: Iterable[int]) -> CubeFunction:
    """The transform F_S(f): Fourier on the rows in S, identity on the others.

    F_S(f)(x_1..x_r) = 2^(-|S|n) * sum over assignments y_i of the rows in S of
    f(y) * prod_{i in S} chi_{x_i}(y_i), with the remaining rows pinned.
    Direct summation straight from the definition.
    """
    r, n = f.r, f.n
    smask = _subset_mask(r, S)
    srows = [i for i in range(r) if (smask >> i) & 1]
    if not srows:
        return CubeFunction(r, n, list(f.values))
    row_bits = (1 << n) - 1
    clear = ~sum(row_bits << (i * n) for i in srows)
    scale = Fraction(1, 1 << (len(srows) * n))
    size = 1 << (r * n)
    values: list[Rational] = [0] * size
    y_space = list(itertools.product(range(1 << n), repeat=len(srows)))
    for xcode in range(size):
        base = xcode & clear
        xrows = [(xcode >> (i * n)) & row_bits for i in srows]
        total = 0
        for ys in y_space:
            parity = 0
            ycode = base
            for xr, y, i in zip(xrows, ys, srows):
                parity ^= _popcount(xr & y) & 1
                ycode |= y << (i * n)
            v = f.values[ycode]
            total = total - v if parity else total + v
        values[xcode] = scale * total
    return CubeFunction(r, n, values)


def fourier(f: CubeFunction) -> CubeFunction:
    """Full Fourier transform, i.e. F_S with S = all rows."""
    return partial_fourier(f, range(1, f.r + 1))


def inner_product(f: CubeFunction, g: CubeFunction) -> Fraction:
    """Normalized inner product 2^(-rn) * sum f*g."""
    if (f.r, f.n) != (g.r, g.n):
        raise DimensionError("mismatched domains")
    total = sum(a * b for a, b in zip(f.values, g.values))
    return Fraction(total, 1 << (f.r * f.n))


def fourier_inner_product(f: CubeFunction, g: CubeFunction) -> Fraction:
    """Unnormalized inner product used on the Fourier side."""
    if (f.r, f.n) != (g.r, g.n):
        raise DimensionError("mismatched domains")
    return Fraction(sum(a * b for a, b in zip(f.values, g.values)))


def convolution(f: CubeFunction, g: CubeFunction) -> CubeFunction:
    """(f * g)(X) = 2^(-rn) * sum_Y f(Y) g(X + Y)."""
    if (f.r, f.n) != (g.r, g.n):
        raise DimensionError("mismatched domains")
    size = 1 << (f.r * f.n)
    scale = Fraction(1, size)
    values = [
        scale * sum(f.values[y] * g.values[x ^ y] for y in range(size))
        for x in range(size)
    ]
    return CubeFunction(f.r, f.n, values)


def compose_gl(f: CubeFunction, T: GlElement) -> CubeFunction:
    """(f o T)(X) = f(TX)."""
    return CubeFunction(
        f.r,
        f.n,
        [
            f.values[act_gl(T, BitMatrix.from_code(f.r, f.n, c)).code]
            for c in range(1 << (f.r * f.n))
        ],
    )


def compose_column_permutation(f: CubeFunction, sigma: Sequence[int]) -> CubeFunction:
    """(f o sigma)(X) = f(sigma . X)."""
    return CubeFunction(
        f.r,
        f.n,
        [
            f.values[act_column_permutation(sigma, BitMatrix.from_code(f.r, f.n, c)).code]
            for c in range(1 << (f.r * f.n))
        ],
    )


def compose_row_permutation(f: CubeFunction, pi: Sequence[int]) -> CubeFunction:
    """(f o pi)(X) = f(pi . X) for a 0-based row permutation pi."""
    return CubeFunction(
        f.r,
        f.n,
        [
            f.values[act_row_permutation(pi, BitMatrix.from_code(f.r, f.n, c)).code]
            for c in range(1 << (f.r * f.n))
        ],
    )
