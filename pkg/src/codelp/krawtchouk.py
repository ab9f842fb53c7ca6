"""Multivariate Krawtchouk polynomial values K_alpha(beta) and partial versions.

K_alpha is the (scaled) Fourier transform of the level-set indicator of the
composition alpha; on 2^r uniform bins it has the generating-function form

    K_alpha(beta) = coef of w^alpha in  prod_u ( sum_v (-1)^<u,v> w_v )^beta_u.

Two independent evaluation routes are kept side by side: coefficient
extraction from that product (the default) and a signed sum over contingency
tables with margins (beta, alpha).  They are cross-checked against each other
and, in the test suite, against brute-force partial Fourier transforms.
All values are integers; arithmetic is arbitrary precision throughout.
"""

from __future__ import annotations

import struct
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CapabilityError, DimensionError
from .indexset import (
    GlElement,
    MultiIndex,
    act,
    enumerate_index_set,
    gl_permutation,
    gl_transvection,
)
from .report import Report

CACHE_MAGIC = b"KTBL"
CACHE_VERSION = 1


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def multinomial(total: int, parts: Iterable[int]) -> int:
    """total! / prod(parts!); parts must sum to total."""
    parts = tuple(parts)
    if sum(parts) != total:
        raise ValueError(f"parts {parts} do not sum to {total}")
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        yield (total,)
        return
    for c in range(total, -1, -1):
        for rest in compositions(total - c, slots - 1):
            yield (c,) + rest


def _check_pair(alpha: MultiIndex, beta: MultiIndex) -> None:
    if alpha.r != beta.r or alpha.n != beta.n:
        raise DimensionError(
            f"mismatched parameters: ({alpha.r},{alpha.n}) vs ({beta.r},{beta.n})"
        )


def _expand_power(r: int, u: int, k: int) -> dict[tuple[int, ...], int]:
    """Multinomial expansion of (sum_v (-1)^<u,v> w_v)^k as exponent -> coefficient."""
    bins = 1 << r
    out: dict[tuple[int, ...], int] = {}
    for exps in compositions(k, bins):
        coef = multinomial(k, exps)
        sign_power = sum(e for v, e in enumerate(exps) if _parity(u & v))
        out[exps] = -coef if sign_power & 1 else coef
    return out


def krawtchouk_row(r: int, n: int, beta: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """All coefficients {alpha: K_alpha(beta)} at once, by expanding the full product."""
    bins = 1 << r
    poly: dict[tuple[int, ...], int] = {(0,) * bins: 1}
    # largest exponents first keeps the intermediate polynomials small
    for u in sorted(range(bins), key=lambda u: -beta[u]):
        k = beta[u]
        if k == 0:
            continue
        factor = _expand_power(r, u, k)
        nxt: dict[tuple[int, ...], int] = {}
        for e1, c1 in poly.items():
            for e2, c2 in factor.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                nxt[key] = nxt.get(key, 0) + c1 * c2
        poly = {k_: v for k_, v in nxt.items() if v != 0}
    return poly


def krawtchouk_generating(alpha: MultiIndex, beta: MultiIndex) -> int:
    """Single coefficient, with exponents pruned against alpha while expanding."""
    _check_pair(alpha, beta)
    bins = 1 << alpha.r
    target = alpha.counts
    poly: dict[tuple[int, ...], int] = {(0,) * bins: 1}
    for u in sorted(range(bins), key=lambda u: -beta.counts[u]):
        k = beta.counts[u]
        if k == 0:
            continue
        factor = _expand_power(alpha.r, u, k)
        nxt: dict[tuple[int, ...], int] = {}
        for e1, c1 in poly.items():
            for e2, c2 in factor.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                if any(kv > tv for kv, tv in zip(key, target)):
                    continue
                nxt[key] = nxt.get(key, 0) + c1 * c2
        poly = nxt
        if not poly:
            return 0
    return poly.get(target, 0)


def krawtchouk_contingency(alpha: MultiIndex, beta: MultiIndex) -> int:
    """Independent evaluation: signed sum over tables A with A.1 = beta, 1^T A = alpha.

    Each table contributes prod_u C(beta_u; row A_u) * (-1)^(sum <u,v> A_uv).
    Exponential in the table size; meant for cross-checking at small n only.
    """
    _check_pair(alpha, beta)
    bins = 1 << alpha.r
    total = 0
    col_target = alpha.counts

    def place(u: int, col_sums: tuple[int, ...], coef: int, parity: int) -> None:
        nonlocal total
        if u == bins:
            if col_sums == col_target:
                total += -coef if parity else coef
            return
        for row in compositions(beta.counts[u], bins):
            nxt = tuple(a + b for a, b in zip(col_sums, row))
            if any(a > b for a, b in zip(nxt, col_target)):
                continue
            row_parity = sum(e for v, e in enumerate(row) if _parity(u & v)) & 1
            place(u + 1, nxt, coef * multinomial(beta.counts[u], row), parity ^ row_parity)

    place(0, (0,) * bins, 1, 0)
    return total


def krawtchouk(alpha: MultiIndex, beta: MultiIndex) -> int:
    """K_alpha(beta) for the full transform (S = all rows)."""
    return krawtchouk_generating(alpha, beta)


@dataclass(frozen=True)
class MatrixRearrangement:
    """alpha rearranged into a 2^(r-|S|) x 2^|S| grid: entry (u'', u') = alpha_u."""

    r: int
    smask: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, alpha: MultiIndex, S: Iterable[int]) -> "MatrixRearrangement":
        r = alpha.r
        smask = 0
        for i in S:
            if not 1 <= i <= r:
                raise DimensionError(f"row index {i} outside 1..{r}")
            smask |= 1 << (i - 1)
        sbits = [i for i in range(r) if (smask >> i) & 1]
        cbits = [i for i in range(r) if not (smask >> i) & 1]
        grid = [[0] * (1 << len(sbits)) for _ in range(1 << len(cbits))]
        for u, c in enumerate(alpha.counts):
            up = sum(((u >> b) & 1) << k for k, b in enumerate(sbits))
            upp = sum(((u >> b) & 1) << k for k, b in enumerate(cbits))
            grid[upp][up] = c
        return cls(r, smask, tuple(tuple(row) for row in grid))

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)


def partial_krawtchouk(alpha: MultiIndex, beta: MultiIndex, S: Iterable[int]) -> int:
    """K^S_alpha(beta): marginal-matched product of lower-order Krawtchouks.

    Zero unless every off-S row marginal of alpha and beta agrees; otherwise the
    product over off-S patterns v of K_{alpha^S_v}(beta^S_v), each a full
    Krawtchouk on row-sum many positions with 2^|S| bins.  S = all rows recovers
    krawtchouk(); S = empty set is the Kronecker delta [alpha == beta].
    """
    _check_pair(alpha, beta)
    S = tuple(S)
    ra = MatrixRearrangement.of(alpha, S)
    rb = MatrixRearrangement.of(beta, S)
    if ra.row_sums != rb.row_sums:
        return 0
    s_size = len(S)
    out = 1
    for arow, brow, nv in zip(ra.rows, rb.rows, ra.row_sums):
        if s_size == 0:
            if arow != brow:
                return 0
            continue
        if nv == 0:
            continue
        out *= krawtchouk_generating(
            MultiIndex(s_size, arow), MultiIndex(s_size, brow)
        )
        if out == 0:
            return 0
    return out


class KrawtchoukTable:
    """Lazy cache of K^S values for fixed (r, n, S), safe for concurrent readers.

    Lookups that miss are computed and inserted under an exclusive lock; reads
    are lock-free.  The table can be persisted to a little-endian binary file.
    """

    def __init__(self, r: int, n: int, S: Iterable[int] = ()) -> None:
        self.r = r
        self.n = n
        self.S = tuple(sorted(set(S)))
        self.smask = 0
        for i in self.S:
            if not 1 <= i <= r:
                raise DimensionError(f"row index {i} outside 1..{r}")
            self.smask |= 1 << (i - 1)
        self._values: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self._lock = threading.Lock()
        self._index_list: list[MultiIndex] | None = None
        self._index_rank: dict[tuple[int, ...], int] | None = None

    @property
    def full(self) -> bool:
        return self.smask == (1 << self.r) - 1

    def value(self, alpha: MultiIndex, beta: MultiIndex) -> int:
        if (alpha.r, alpha.n) != (self.r, self.n) or (beta.r, beta.n) != (self.r, self.n):
            raise DimensionError("index does not belong to this table")
        key = (alpha.counts, beta.counts)
        hit = self._values.get(key)
        if hit is not None:
            return hit
        if self.full:
            val = krawtchouk_generating(alpha, beta)
        else:
            val = partial_krawtchouk(alpha, beta, self.S)
        with self._lock:
            self._values.setdefault(key, val)
        return val

    def fill_row(self, beta: MultiIndex) -> dict[tuple[int, ...], int]:
        """All K_alpha(beta) for the full transform, bulk-computed and cached."""
        if not self.full:
            raise ValueError("bulk rows are only available for the full transform")
        row = krawtchouk_row(self.r, self.n, beta.counts)
        with self._lock:
            for a_counts, val in row.items():
                self._values.setdefault((a_counts, beta.counts), val)
        return row

    def _indexing(self) -> tuple[list[MultiIndex], dict[tuple[int, ...], int]]:
        if self._index_list is None:
            self._index_list = enumerate_index_set(self.r, self.n)
            self._index_rank = {a.counts: i for i, a in enumerate(self._index_list)}
        return self._index_list, self._index_rank  # type: ignore[return-value]

    def save(self, path: str | Path) -> None:
        _, rank = self._indexing()
        records = sorted(
            (rank[a], rank[b], v) for (a, b), v in self._values.items()
        )
        with open(path, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<HBHHI", CACHE_VERSION, self.r, self.n, self.smask,
                                 len(records)))
            for ia, ib, v in records:
                mag = abs(v)
                blob = mag.to_bytes((mag.bit_length() + 7) // 8 or 1, "little")
                fh.write(struct.pack("<IIbH", ia, ib, -1 if v < 0 else 1, len(blob)))
                fh.write(blob)

    def load(self, path: str | Path) -> int:
        """Merge records from a cache file; stale headers are rejected."""
        idx, _ = self._indexing()
        with open(path, "rb") as fh:
            if fh.read(4) != CACHE_MAGIC:
                raise ValueError(f"{path}: not a Krawtchouk cache file")
            version, r, n, smask, count = struct.unpack("<HBHHI", fh.read(11))
            if version != CACHE_VERSION:
                raise ValueError(f"{path}: cache version {version} is stale")
            if (r, n, smask) != (self.r, self.n, self.smask):
                raise ValueError(f"{path}: cache is for (r={r}, n={n}, S-mask={smask})")
            loaded = 0
            with self._lock:
                for _ in range(count):
                    ia, ib, sign, maglen = struct.unpack("<IIbH", fh.read(11))
                    mag = int.from_bytes(fh.read(maglen), "little")
                    self._values[(idx[ia].counts, idx[ib].counts)] = sign * mag
                    loaded += 1
        return loaded


def check_orthogonality(r: int, n: int) -> Report:
    """Verify sum_gamma m(gamma) K_a(gamma) K_b(gamma) = C(n, a) * [a == b] exactly."""
    if r > 2 or n > 8:
        raise CapabilityError(f"orthogonality check is guarded to r <= 2, n <= 8")
    report = Report(f"krawtchouk orthogonality (r={r}, n={n})")
    indices = enumerate_index_set(r, n)
    rows = {g.counts: krawtchouk_row(r, n, g.counts) for g in indices}
    weight = {
        g.counts: Fraction(multinomial(n, g.counts), 1 << (r * n)) for g in indices
    }
    for a in indices:
        for b in indices:
            lhs = sum(
                weight[g.counts]
                * rows[g.counts].get(a.counts, 0)
                * rows[g.counts].get(b.counts, 0)
                for g in indices
            )
            rhs = Fraction(multinomial(n, a.counts)) if a == b else Fraction(0)
            report.record(
                "orthogonality",
                {"r": r, "n": n, "alpha": a.counts, "beta": b.counts},
                lhs == rhs,
                lhs,
                rhs,
            )
    return report


def _transvection_sign(beta: MultiIndex, i: int, j: int) -> int:
    """(-1)^(sum_u beta_u u_i u_j), rows 1-based."""
    s = sum(
        c
        for u, c in enumerate(beta.counts)
        if (u >> (i - 1)) & 1 and (u >> (j - 1)) & 1
    )
    return -1 if s & 1 else 1


def check_symmetries(
    r: int,
    n: int,
    sample: int | None = None,
    seed: int = 0,
) -> Report:
    """Verify how K^S transforms under row permutations and transvections.

    Checks, for every subset S and every transvection T: e_i -> e_i + e_j,

        i,j in S:      K^S_{T.alpha}(beta) = K^S_alpha(T^t . beta)
        i,j not in S:  K^S_{T.alpha}(beta) = K^S_alpha(T . beta)
        i in S, j not: K^S_{T.alpha}(beta) = (-1)^(sum_u beta_u u_i u_j) K^S_alpha(beta)

    and for every row permutation pi (T: e_i -> e_pi(i)):

        K^S_{T.alpha}(beta) = K^(pi^-1(S))_alpha(T^-1 . beta)

    With sample=None all (alpha, beta) pairs are checked; otherwise a seeded
    random sample of pairs is used.
    """
    if r not in (2, 3) or n > 5:
        raise CapabilityError("symmetry check is guarded to r in {2,3}, n <= 5")
    import itertools
    import random

    report = Report(f"krawtchouk symmetries (r={r}, n={n})")
    indices = enumerate_index_set(r, n)
    if sample is None:
        pairs = [(a, b) for a in indices for b in indices]
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(indices), rng.choice(indices)) for _ in range(sample)]
    subsets = [
        tuple(i for i in range(1, r + 1) if (m >> (i - 1)) & 1) for m in range(1 << r)
    ]
    tables = {S: KrawtchoukTable(r, n, S) for S in subsets}

    for S in subsets:
        tab = tables[S]
        in_s = set(S)
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                if i == j:
                    continue
                T = gl_transvection(r, i, j)
                if i in in_s and j in in_s:
                    case = "transvection both in S"
                    rhs_fn = lambda a, b, T=T, tab=tab: tab.value(a, act(T.transpose(), b))
                elif i not in in_s and j not in in_s:
                    case = "transvection both out of S"
                    rhs_fn = lambda a, b, T=T, tab=tab: tab.value(a, act(T, b))
                elif i in in_s:
                    case = "transvection across S"
                    rhs_fn = lambda a, b, i=i, j=j, tab=tab: _transvection_sign(
                        b, i, j
                    ) * tab.value(a, b)
                else:
                    continue  # the remaining mixed case has no product form
                for a, b in pairs:
                    lhs = tab.value(act(T, a), b)
                    rhs = rhs_fn(a, b)
                    report.record(
                        case,
                        {"r": r, "n": n, "S": S, "i": i, "j": j,
                         "alpha": a.counts, "beta": b.counts},
                        lhs == rhs,
                        lhs,
                        rhs,
                    )

    for perm in itertools.permutations(range(1, r + 1)):
        T = gl_permutation(r, perm)
        Tinv = T.inverse()
        pi = {i: perm[i - 1] for i in range(1, r + 1)}
        pi_inv = {v: k for k, v in pi.items()}
        for S in subsets:
            S_image = tuple(sorted(pi_inv[i] for i in S))
            tab_s = tables[S]
            tab_img = tables[S_image]
            for a, b in pairs:
                lhs = tab_s.value(act(T, a), b)
                rhs = tab_img.value(a, act(Tinv, b))
                report.record(
                    "row permutation",
                    {"r": r, "n": n, "S": S, "perm": perm,
                     "alpha": a.counts, "beta": b.counts},
                    lhs == rhs,
                    lhs,
                    rhs,
                )
    return report
