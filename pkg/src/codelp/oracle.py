"""Brute-force verification suite for the propositions behind the LP family.

Every check here recomputes both sides of an identity from first principles
at small parameters and demands exact equality.  The Fourier side always goes
through the dense cube transforms, and the univariate Krawtchouk oracle below
is a separate closed form, so no check trusts the code path it is checking.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import cube
from .cube import (
    BitMatrix,
    BitVector,
    CubeFunction,
    column_enumerator,
    compose_column_permutation,
    compose_gl,
    compose_row_permutation,
    fourier,
    level_set_indicator,
    partial_fourier,
)
from .errors import CapabilityError, DimensionError
from .indexset import MultiIndex, enumerate_index_set, gl_group, gl_transvection
from .krawtchouk import krawtchouk, krawtchouk_contingency, partial_krawtchouk
from .lpbuild import (
    LpModel,
    VariantSpec,
    build_cube_dual,
    build_cube_primal,
    build_delsarte,
    build_delsarte_lin,
    fuse_gl,
    lift_dual_solution,
)
from .report import Report
from .solver import SolveResult, solve_exact


def univariate_krawtchouk(n: int, k: int, i: int) -> int:
    """Closed form K_k(i) = sum_j (-1)^j C(i,j) C(n-i,k-j), kept independent on purpose."""
    return sum((-1) ** j * comb(i, j) * comb(n - i, k - j) for j in range(k + 1))


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code given by generator rows (masks of length n)."""

    n: int
    generators: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LinearCode":
        n = len(rows[0])
        return cls(n, tuple(sum(b << i for i, b in enumerate(row)) for row in rows))

    def codewords(self) -> set[int]:
        words = {0}
        for g in self.generators:
            words |= {w ^ g for w in words}
        return words

    def distance(self) -> int:
        nz = [bin(w).count("1") for w in self.codewords() if w]
        return min(nz) if nz else self.n + 1

    def dual(self) -> "LinearCode":
        duals = [
            x
            for x in range(1 << self.n)
            if all(bin(x & g).count("1") % 2 == 0 for g in self.generators)
        ]
        # greedily extract an independent generating set
        basis: list[int] = []
        span = {0}
        for x in duals:
            if x not in span:
                basis.append(x)
                span |= {s ^ x for s in span}
        return LinearCode(self.n, tuple(basis))

    def indicator(self) -> set[int]:
        return self.codewords()


def tensor_code_function(code: LinearCode, r: int, limit: int | None = None) -> CubeFunction:
    """f_{C^r}(X) = prod_i 1_C(x_i); for a linear code this is 1_C * ... * 1_C."""
    words = code.codewords()
    n = code.n
    row_bits = (1 << n) - 1

    def fn_code(mcode: int) -> int:
        return 1 if all(((mcode >> (i * n)) & row_bits) in words for i in range(r)) else 0

    return CubeFunction(
        r, n, [fn_code(c) for c in range(1 << (r * n))], limit=limit
    )


def _random_function(r: int, n: int, rng: random.Random) -> CubeFunction:
    return CubeFunction(
        r, n, [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(1 << (r * n))]
    )


def _subsets(r: int) -> list[tuple[int, ...]]:
    return [
        tuple(i for i in range(1, r + 1) if (m >> (i - 1)) & 1) for m in range(1 << r)
    ]


# ---------------------------------------------------------------------------
# proposition checks
# ---------------------------------------------------------------------------


def verify_level_set_identity(r: int, n: int) -> Report:
    """K_alpha(cf_X) = 2^(rn) * fourier(L_alpha)(X) for every alpha and X."""
    if r > 2 or n > 4:
        raise CapabilityError("level-set identity check is guarded to r <= 2, n <= 4")
    report = Report(f"level-set identity (r={r}, n={n})")
    scale = 1 << (r * n)
    for alpha in enumerate_index_set(r, n):
        lhat = fourier(level_set_indicator(alpha))
        ok = True
        witness = None
        for code in range(scale):
            X = BitMatrix.from_code(r, n, code)
            lhs = krawtchouk(alpha, column_enumerator(X))
            rhs = scale * lhat.at_code(code)
            if lhs != rhs:
                ok = False
                witness = (code, lhs, rhs)
                break
        report.record(
            "level_set_identity",
            {"r": r, "n": n, "alpha": alpha.counts},
            ok,
            witness[1] if witness else "all equal",
            witness[2] if witness else "all equal",
        )
    return report


def verify_partial_fourier_symmetries(
    r: int, n: int, samples: int = 2, seed: int = 0
) -> Report:
    """Behaviour of F_S under column permutations, row permutations and transvections."""
    if r * n > 12:
        raise CapabilityError("symmetry check is guarded to r*n <= 12")
    rng = random.Random(seed)
    report = Report(f"partial Fourier symmetries (r={r}, n={n})")
    fns = [_random_function(r, n, rng) for _ in range(samples)]
    subsets = _subsets(r)

    for fi, f in enumerate(fns):
        transforms = {S: partial_fourier(f, S) for S in subsets}
        # column permutations: F_S(f o sigma) = F_S(f) o sigma
        for sigma in itertools.permutations(range(n)):
            fsig = compose_column_permutation(f, sigma)
            for S in subsets:
                lhs = partial_fourier(fsig, S)
                rhs = compose_column_permutation(transforms[S], sigma)
                report.record(
                    "partial_fourier_under_column_permutation",
                    {"r": r, "n": n, "S": S, "sigma": sigma, "sample": fi},
                    lhs == rhs,
                )
        # row permutations: F_S(f o pi) = F_{pi^-1(S)}(f) o pi
        for pi in itertools.permutations(range(r)):
            fpi = compose_row_permutation(f, pi)
            for S in subsets:
                s_preimage = tuple(
                    sorted(i + 1 for i in range(r) if (pi[i] + 1) in S)
                )
                lhs = partial_fourier(fpi, S)
                rhs = compose_row_permutation(transforms[s_preimage], pi)
                report.record(
                    "partial_fourier_under_row_permutation",
                    {"r": r, "n": n, "S": S, "pi": pi, "sample": fi},
                    lhs == rhs,
                )
        # transvections, all three product cases
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                if i == j:
                    continue
                T = gl_transvection(r, i, j)
                fT = compose_gl(f, T)
                for S in subsets:
                    lhs = partial_fourier(fT, S)
                    if i in S and j in S:
                        rhs = compose_gl(transforms[S], T.transpose())
                        case = "transvection both in S"
                    elif i not in S and j not in S:
                        rhs = compose_gl(transforms[S], T)
                        case = "transvection both out of S"
                    elif i in S and j not in S:
                        case = "transvection across S"
                        base = transforms[S]
                        vals = []
                        for code in range(1 << (r * n)):
                            X = BitMatrix.from_code(r, n, code)
                            sign = cube.character(X.row(i), X.row(j))
                            vals.append(sign * base.at_code(code))
                        rhs = CubeFunction(r, n, vals)
                    else:
                        continue
                    report.record(
                        case,
                        {"r": r, "n": n, "S": S, "i": i, "j": j, "sample": fi},
                        lhs == rhs,
                    )
    return report


def verify_gl_invariant_vanishing(r: int, n: int, samples: int = 2, seed: int = 1) -> Report:
    """For GL-invariant f: F_S(f) vanishes on odd inner products across S, and is
    invariant under products T1 T2 fixing S resp. its complement pointwise."""
    if r * n > 12:
        raise CapabilityError("check is guarded to r*n <= 12")
    rng = random.Random(seed)
    report = Report(f"GL-invariant transform properties (r={r}, n={n})")
    group = gl_group(r)
    scale = Fraction(1, len(group))
    subsets = _subsets(r)
    for fi in range(samples):
        raw = _random_function(r, n, rng)
        values = [Fraction(0)] * (1 << (r * n))
        for T in group:
            comp = compose_gl(raw, T)
            values = [a + b for a, b in zip(values, comp.values)]
        f = CubeFunction(r, n, [scale * v for v in values])
        for S in subsets:
            if not S or len(S) == r:
                continue
            FS = partial_fourier(f, S)
            # property (2): vanishing on odd inner products across the split
            ok = True
            for code in range(1 << (r * n)):
                X = BitMatrix.from_code(r, n, code)
                crosses = any(
                    cube.character(X.row(i), X.row(j)) == -1
                    for i in S
                    for j in range(1, r + 1)
                    if j not in S
                )
                if crosses and FS.at_code(code) != 0:
                    ok = False
                    break
            report.record(
                "gl_invariant_vanishing",
                {"r": r, "n": n, "S": S, "sample": fi},
                ok,
            )
            # property (3): invariance under products of block maps that act
            # within one side of the split and fix the other pointwise (the
            # subgroup generated by same-side row additions; row additions
            # crossing the split do not preserve the transform)
            smask_bits = sum(1 << (i - 1) for i in S)
            cmask_bits = ((1 << r) - 1) ^ smask_bits

            def block_elements(inside: int, outside: int) -> list:
                out = []
                for T in group:
                    if all(
                        T.apply(1 << b) == 1 << b for b in range(r) if (outside >> b) & 1
                    ) and all(
                        T.apply(1 << b) & ~inside == 0
                        for b in range(r)
                        if (inside >> b) & 1
                    ):
                        out.append(T)
                return out

            ok3 = True
            for T1 in block_elements(cmask_bits, smask_bits):
                for T2 in block_elements(smask_bits, cmask_bits):
                    if compose_gl(FS, T1 * T2) != FS:
                        ok3 = False
                        break
                if not ok3:
                    break
            report.record(
                "gl_invariant_product_invariance",
                {"r": r, "n": n, "S": S, "sample": fi},
                ok3,
            )
    return report


def verify_krawtchouk_agreement(r: int, n: int) -> Report:
    """Contingency-table and generating-function evaluations agree everywhere."""
    if r > 2 or n > 6:
        raise CapabilityError("agreement check is guarded to r <= 2, n <= 6")
    report = Report(f"krawtchouk algorithm agreement (r={r}, n={n})")
    indices = enumerate_index_set(r, n)
    ok = True
    witness = None
    for a in indices:
        for b in indices:
            lhs = krawtchouk(a, b)
            rhs = krawtchouk_contingency(a, b)
            if lhs != rhs:
                ok = False
                witness = (a.counts, b.counts, lhs, rhs)
                break
        if not ok:
            break
    report.record(
        "generating_vs_contingency",
        {"r": r, "n": n},
        ok,
        witness[2] if witness else "all equal",
        witness[3] if witness else "all equal",
    )
    return report


def verify_univariate_agreement(n_max: int = 8) -> Report:
    """The r=1 table matches the independent closed-form univariate oracle."""
    report = Report(f"univariate closed form (n <= {n_max})")
    for n in range(1, n_max + 1):
        ok = True
        witness = None
        for k in range(n + 1):
            for i in range(n + 1):
                lhs = krawtchouk(MultiIndex(1, (n - k, k)), MultiIndex(1, (n - i, i)))
                rhs = univariate_krawtchouk(n, k, i)
                if lhs != rhs:
                    ok = False
                    witness = (k, i, lhs, rhs)
                    break
            if not ok:
                break
        report.record("univariate_closed_form", {"n": n}, ok,
                      witness[2] if witness else "all equal",
                      witness[3] if witness else "all equal")
    return report


def verify_tensor_feasibility(code: LinearCode, r: int, d: int | None = None) -> Report:
    """The tensor power of a linear-code indicator is feasible with value |C|.

    Checks all constraints of the cube primal at (r, n, dist) plus the duality
    vanishing of F_S on odd inner products between a row in S and one outside
    (the C^perp structure of the transform).
    """
    n = code.n
    if r * n > cube.DEFAULT_ORACLE_LIMIT_BITS:
        raise CapabilityError(f"r*n = {r * n} beyond oracle scale")
    dist = code.distance() if d is None else d
    report = Report(f"tensor feasibility (n={n}, r={r}, d={dist})")
    words = code.codewords()
    f = tensor_code_function(code, r)
    model = build_cube_primal(r, n, dist)
    point = {c: Fraction(v) for c, v in enumerate(f.values)}
    bad = model.check_point(point)
    report.record(
        "tensor_point_feasible",
        {"n": n, "r": r, "d": dist},
        not bad,
        f"{len(bad)} violated rows" if bad else "feasible",
        "feasible",
    )
    value = model.objective_value(point)
    report.record(
        "tensor_point_value",
        {"n": n, "r": r, "d": dist},
        value == len(words),
        value,
        len(words),
    )
    # C5: F_S(f) vanishes when <x_i, x_j> is odd for i in S, j outside
    for S in _subsets(r):
        if not S or len(S) == r:
            continue
        FS = partial_fourier(f, S)
        ok = True
        for mcode in range(1 << (r * n)):
            X = BitMatrix.from_code(r, n, mcode)
            crosses = any(
                cube.character(X.row(i), X.row(j)) == -1
                for i in S
                for j in range(1, r + 1)
                if j not in S
            )
            if crosses and FS.at_code(mcode) != 0:
                ok = False
                break
        report.record("tensor_duality_vanishing", {"n": n, "r": r, "S": S}, ok)
    return report


def verify_symmetrization_equivalence(r: int, n: int, d: int) -> Report:
    """val(cube primal) = val(symmetrized) = val(fused) = val(cube dual), exactly."""
    report = Report(f"symmetrization equivalence (r={r}, n={n}, d={d})")
    primal = solve_exact(build_cube_primal(r, n, d))
    sym = solve_exact(build_delsarte_lin(r, n, d, VariantSpec("C2", "Obj", gl_fuse=False)))
    fused = solve_exact(build_delsarte_lin(r, n, d, VariantSpec("C2", "Obj", gl_fuse=True)))
    dual = solve_exact(build_cube_dual(r, n, d))
    vals = {
        "cube_primal": primal.value_or_raise(),
        "symmetrized": sym.value_or_raise(),
        "gl_fused": fused.value_or_raise(),
        "cube_dual": dual.value_or_raise(),
    }
    base = vals["cube_primal"]
    for name, v in vals.items():
        report.record(
            "equivalence_chain", {"r": r, "n": n, "d": d, "model": name}, v == base, v, base
        )
    return report


def verify_dual_lift(n: int, d: int) -> Report:
    """Lift the optimal r=1 dual point to r=2; verify feasibility and equal value."""
    report = Report(f"dual lifting 1->2 (n={n}, d={d})")
    md1 = build_cube_dual(1, n, d)
    res1 = solve_exact(md1)
    g = {}
    for i, var in enumerate(md1.variables):
        _, umask, code = var.tag
        v = (res1.solution or {}).get(i, Fraction(0))
        if v:
            g[(umask, code)] = v
    bad_in = md1.check_point(
        {i: g.get(var.tag[1:], Fraction(0)) for i, var in enumerate(md1.variables)}
    )
    if bad_in:
        raise ValueError("input dual point is infeasible; refusing to lift")
    lifted = lift_dual_solution(g, 1, n)
    md2 = build_cube_dual(2, n, d)
    var_of = {var.tag[1:]: i for i, var in enumerate(md2.variables)}
    point = {var_of[k]: v for k, v in lifted.items()}
    bad = md2.check_point(point)
    report.record(
        "lifted_point_feasible", {"n": n, "d": d}, not bad,
        f"{len(bad)} violated rows" if bad else "feasible", "feasible",
    )
    value = md2.objective_value(point)
    report.record(
        "lifted_value_unchanged", {"n": n, "d": d},
        value == res1.value_or_raise(), value, res1.objective,
    )
    return report


def _root_compare(a: Fraction, pa: int, b: Fraction, pb: int) -> bool:
    """a^(1/pa) <= b^(1/pb) in exact arithmetic."""
    return a**pb <= b**pa


def verify_strength_theorems(
    n: int,
    d: int,
    cube_n_max: int = 4,
    include_conjecture: bool = True,
) -> Report:
    """The provable orderings between the family members, on solved instances.

    Monotonicity in r is asserted through the cube models at small n and at
    the symmetrized level for the given (n, d); the weak variant and classic
    Delsarte sandwich the strong LP from above; the alternative objective
    obeys its max-inequality.  The open conjectured monotonicity of the
    alternative objective is logged as an observation, never asserted.
    """
    report = Report(f"strength theorems (n={n}, d={d})")

    # r-monotonicity at cube scale
    for nn in range(max(2, d), cube_n_max + 1):
        v1 = solve_exact(build_cube_primal(1, nn, d)).value_or_raise()
        v2 = solve_exact(build_cube_primal(2, nn, d)).value_or_raise()
        report.record("cube_r_monotonicity", {"n": nn, "d": d}, v2 <= v1, v2, v1)

    # symmetrized level
    delsarte = solve_exact(build_delsarte(n, d)).value_or_raise()
    strong = solve_exact(
        build_delsarte_lin(2, n, d, VariantSpec("C2", "Obj"))
    ).value_or_raise()
    weak = solve_exact(
        build_delsarte_lin(2, n, d, VariantSpec("C2'", "Obj"))
    ).value_or_raise()
    report.record("sym_r_monotonicity", {"n": n, "d": d}, strong <= delsarte, strong, delsarte)
    report.record("variant_order_strong_weak", {"n": n, "d": d}, strong <= weak, strong, weak)
    report.record("variant_order_weak_delsarte", {"n": n, "d": d}, weak <= delsarte, weak, delsarte)

    # alternative objective: (val' at r+1)^(1/(r+1)) <= max((val' at r)^(1/r), val at r+1)
    for nn in range(max(2, d), cube_n_max + 1):
        va1 = solve_exact(
            build_delsarte_lin(1, nn, d, VariantSpec("C2", "Obj'"))
        ).value_or_raise()
        va2 = solve_exact(
            build_delsarte_lin(2, nn, d, VariantSpec("C2", "Obj'"))
        ).value_or_raise()
        v2 = solve_exact(build_delsarte_lin(2, nn, d, VariantSpec("C2", "Obj"))).value_or_raise()
        holds = _root_compare(va2, 2, va1, 1) or va2 <= v2**2
        report.record("alt_obj_max_inequality", {"n": nn, "d": d}, holds, va2, (va1, v2))
        if include_conjecture:
            report.record(
                "alt_obj_conjectured_monotonicity",
                {"n": nn, "d": d},
                _root_compare(va2, 2, va1, 1),
                va2,
                va1,
                fatal=False,
            )
    return report


def verify_even_reduction(r: int, n_max: int = 10, d_values: Iterable[int] = (2, 4)) -> Report:
    """Optima with and without the even-code variable reduction agree for even d."""
    report = Report(f"even reduction (r={r}, n <= {n_max})")
    for d in d_values:
        if d % 2:
            raise ValueError("even reduction applies to even d only")
        for n in range(2 * d, n_max + 1):
            a = solve_exact(
                build_delsarte_lin(r, n, d, VariantSpec("C2", "Obj", even_reduction=False))
            ).value_or_raise()
            b = solve_exact(
                build_delsarte_lin(r, n, d, VariantSpec("C2", "Obj", even_reduction=True))
            ).value_or_raise()
            report.record("even_reduction_optimum", {"r": r, "n": n, "d": d}, a == b, a, b)
    return report
