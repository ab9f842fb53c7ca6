"""Index set of the symmetrized LPs: compositions of n into 2^r parts.

A composition alpha assigns a count to every column pattern u in {0,1}^r.
Throughout the package u is encoded as the integer sum(u_i * 2^(i-1)), i.e.
row 1 is the least-significant bit.  The group GL(r,2) of invertible bit
matrices permutes the 2^r patterns and therefore acts on compositions; its
orbits index the variables of the GL-fused LPs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import CapabilityError, DimensionError, InvalidGroupElementError

MAX_ROWS = 4          # 2^r bins; the LP family is out of supported scope beyond this
MAX_ORBIT_ROWS = 3    # full orbit enumeration is only offered for r <= 3


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class MultiIndex:
    """A composition of n into 2^r nonnegative parts, indexed by u-code."""

    r: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.r < 1 or len(self.counts) != 1 << self.r:
            raise DimensionError(
                f"expected {1 << self.r} counts for r={self.r}, got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative count in {self.counts}")

    @property
    def n(self) -> int:
        return sum(self.counts)

    def __getitem__(self, u: int) -> int:
        return self.counts[u]

    def walsh_hadamard(self) -> tuple[Fraction, ...]:
        """Spectrum alpha_hat(u) = 2^-r * sum_v (-1)^<u,v> alpha(v)."""
        scale = Fraction(1, 1 << self.r)
        return tuple(
            scale * sum(-c if _parity(u & v) else c for v, c in enumerate(self.counts))
            for u in range(1 << self.r)
        )

    def row_weight(self, u: int) -> int:
        """Hamming weight |u^T X| of the u-combination of rows, for any X with cf_X = alpha.

        Equals (n - 2^r * alpha_hat(u)) / 2, which simplifies to the number of
        columns v with <u,v> odd.  Defined for u != 0 only; the zero
        combination's weight is 0 by convention and is the caller's business.
        """
        if u == 0:
            raise ValueError("row weight of the zero combination is not defined here")
        if not 0 < u < (1 << self.r):
            raise DimensionError(f"u={u} out of range for r={self.r}")
        return sum(c for v, c in enumerate(self.counts) if _parity(u & v))

    def unit(self) -> bool:
        return self.n == 1


def epsilon(r: int, u: int, n: int = 1) -> MultiIndex:
    """n times the indicator of pattern u, as a composition."""
    counts = [0] * (1 << r)
    counts[u] = n
    return MultiIndex(r, tuple(counts))


def enumerate_index_set(r: int, n: int) -> list[MultiIndex]:
    """All compositions of n into 2^r parts, in descending lexicographic order.

    The count is the stars-and-bars number C(n + 2^r - 1, 2^r - 1).
    """
    if r < 1 or n < 1:
        raise ValueError(f"need r >= 1 and n >= 1, got r={r}, n={n}")
    if r > MAX_ROWS:
        raise CapabilityError(f"r={r} exceeds the supported limit r <= {MAX_ROWS}")
    parts = 1 << r
    out: list[MultiIndex] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(MultiIndex(r, tuple(prefix + [remaining])))
            return
        for c in range(remaining, -1, -1):
            rec(prefix + [c], remaining - c, slots - 1)

    rec([], n, parts)
    assert len(out) == comb(n + parts - 1, parts - 1)
    return out


@dataclass(frozen=True)
class GlElement:
    """An invertible r x r bit matrix, stored as column masks (column j maps e_j)."""

    r: int
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cols) != self.r:
            raise DimensionError(f"expected {self.r} columns, got {len(self.cols)}")
        if _rank_of_cols(self.r, self.cols) != self.r:
            raise InvalidGroupElementError(f"singular matrix with columns {self.cols}")

    def apply(self, u: int) -> int:
        """Image T*u of a pattern code under the matrix, over F2."""
        out = 0
        for j in range(self.r):
            if (u >> j) & 1:
                out ^= self.cols[j]
        return out

    def __mul__(self, other: "GlElement") -> "GlElement":
        if self.r != other.r:
            raise DimensionError("mixed dimensions in group product")
        return GlElement(self.r, tuple(self.apply(c) for c in other.cols))

    def inverse(self) -> "GlElement":
        # invert by Gauss-Jordan on the rows of [T | I]
        r = self.r
        rows = [_col_to_row_mask(self.cols, i) | (1 << (r + i)) for i in range(r)]
        for j in range(r):
            piv = next(i for i in range(j, r) if (rows[i] >> j) & 1)
            rows[j], rows[piv] = rows[piv], rows[j]
            for i in range(r):
                if i != j and (rows[i] >> j) & 1:
                    rows[i] ^= rows[j]
        inv_rows = [row >> r for row in rows]
        inv_cols = tuple(
            sum(((inv_rows[i] >> j) & 1) << i for i in range(r)) for j in range(r)
        )
        return GlElement(r, inv_cols)

    def transpose(self) -> "GlElement":
        r = self.r
        return GlElement(
            self.r,
            tuple(sum(((self.cols[i] >> j) & 1) << i for i in range(r)) for j in range(r)),
        )


def _col_to_row_mask(cols: tuple[int, ...], i: int) -> int:
    return sum(((cols[j] >> i) & 1) << j for j in range(len(cols)))


def _rank_of_cols(r: int, cols: tuple[int, ...]) -> int:
    rows = [_col_to_row_mask(cols, i) for i in range(r)]
    rank = 0
    for j in range(r):
        piv = next((i for i in range(rank, r) if (rows[i] >> j) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(r):
            if i != rank and (rows[i] >> j) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def gl_identity(r: int) -> GlElement:
    return GlElement(r, tuple(1 << j for j in range(r)))


def gl_transvection(r: int, i: int, j: int) -> GlElement:
    """Elementary row addition e_i -> e_i + e_j (rows 1-based), an involution."""
    if not (1 <= i <= r and 1 <= j <= r) or i == j:
        raise ValueError(f"need distinct rows in 1..{r}, got i={i}, j={j}")
    # column action: e_j also feeds row i, every other basis vector is fixed
    cols = [1 << c for c in range(r)]
    cols[j - 1] |= 1 << (i - 1)
    return GlElement(r, tuple(cols))


def gl_permutation(r: int, perm: tuple[int, ...]) -> GlElement:
    """Permutation matrix sending e_i to e_perm(i) (both 1-based)."""
    if sorted(perm) != list(range(1, r + 1)):
        raise ValueError(f"not a permutation of 1..{r}: {perm}")
    return GlElement(r, tuple(1 << (perm[j] - 1) for j in range(r)))


def gl_generators(r: int) -> list[GlElement]:
    """All transvections; they generate GL(r,2) for r >= 2 (trivial group for r=1)."""
    return [
        gl_transvection(r, i, j)
        for i in range(1, r + 1)
        for j in range(1, r + 1)
        if i != j
    ]


def gl_group(r: int) -> list[GlElement]:
    """The full group, of size prod_{i<r} (2^r - 2^i)."""
    if r > MAX_ROWS:
        raise CapabilityError(f"r={r} exceeds the supported limit r <= {MAX_ROWS}")
    if r == 1:
        return [gl_identity(1)]
    group: list[GlElement] = []
    for cols in itertools.product(range(1, 1 << r), repeat=r):
        if _rank_of_cols(r, cols) == r:
            group.append(GlElement(r, cols))
    expected = 1
    for i in range(r):
        expected *= (1 << r) - (1 << i)
    assert len(group) == expected
    return group


def act(T: GlElement, alpha: MultiIndex) -> MultiIndex:
    """Composition action (T.alpha)_u = alpha_{T^-1 u}, i.e. count of u moves to T*u."""
    if T.r != alpha.r:
        raise DimensionError(f"group element has r={T.r}, index has r={alpha.r}")
    counts = [0] * len(alpha.counts)
    for v, c in enumerate(alpha.counts):
        counts[T.apply(v)] = c
    return MultiIndex(alpha.r, tuple(counts))


@dataclass(frozen=True)
class OrbitPartition:
    """GL(r,2)-orbits of the index set, keyed by lexicographically minimal members."""

    r: int
    n: int
    representatives: tuple[MultiIndex, ...]
    orbit_ids: dict[tuple[int, ...], int]

    def orbit_id(self, alpha: MultiIndex) -> int:
        return self.orbit_ids[alpha.counts]

    def representative(self, alpha: MultiIndex) -> MultiIndex:
        return self.representatives[self.orbit_id(alpha)]

    def members(self, orbit: int) -> list[MultiIndex]:
        return [
            MultiIndex(self.r, counts)
            for counts, oid in self.orbit_ids.items()
            if oid == orbit
        ]


def gl_orbits(r: int, n: int) -> OrbitPartition:
    """Partition I_{r,n} into GL(r,2)-orbits via closure under the transvections."""
    if r > MAX_ORBIT_ROWS:
        raise CapabilityError(
            f"orbit enumeration supports r <= {MAX_ORBIT_ROWS}, got r={r}"
        )
    # permutation of pattern codes induced by each generator
    gen_perms = [
        tuple(T.apply(v) for v in range(1 << r)) for T in gl_generators(r)
    ]
    orbit_ids: dict[tuple[int, ...], int] = {}
    reps: list[MultiIndex] = []
    for alpha in enumerate_index_set(r, n):
        if alpha.counts in orbit_ids:
            continue
        oid = len(reps)
        stack = [alpha.counts]
        seen = {alpha.counts}
        while stack:
            cur = stack.pop()
            for perm in gen_perms:
                nxt = [0] * len(cur)
                for v, c in enumerate(cur):
                    nxt[perm[v]] = c
                t = tuple(nxt)
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        for member in seen:
            orbit_ids[member] = oid
        reps.append(MultiIndex(r, min(seen)))
    return OrbitPartition(r, n, tuple(reps), orbit_ids)


def is_even_admissible(alpha: MultiIndex) -> bool:
    """True iff every nonzero row combination of a matrix with cf = alpha has even weight."""
    return all(alpha.row_weight(u) % 2 == 0 for u in range(1, 1 << alpha.r))


def is_distance_admissible(alpha: MultiIndex, d: int) -> bool:
    """True iff no nonzero row combination has weight in the forbidden band [1, d-1]."""
    if not 1 <= d <= alpha.n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={alpha.n}")
    for u in range(1, 1 << alpha.r):
        w = alpha.row_weight(u)
        if 0 < w < d:
            return False
    return True
