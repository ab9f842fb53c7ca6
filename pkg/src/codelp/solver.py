"""Exact rational LP solving at desk scale, plus standard-format export.

The exact path is a two-phase dense-tableau simplex over Fractions with
Bland's rule, preceded by an exactness-preserving presolve (row dedup,
singleton fixings, pairwise variable merges, sign-bound detection).  The
float path runs the same pipeline in double precision to supply a warm-start
basis and a quick estimate; it is never a certified bound.  Instances beyond
the dense-tableau guard are meant to be exported and solved externally.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import CapabilityError, ModelError
from .lpbuild import LpConstraint, LpModel

MAX_DENSE_VARIABLES = 3000
MAX_ROWS = 20000

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
LIMIT = "limit-exceeded"
NUMERICAL = "numerical-failure"


@dataclass
class SolveResult:
    status: str
    objective: Fraction | float | None = None
    solution: dict[int, Fraction] | None = None
    pivots: int = 0
    wall_time: float = 0.0
    basis: tuple[int, ...] | None = None
    exact: bool = True

    def value_or_raise(self) -> Fraction:
        if self.status != OPTIMAL or self.objective is None:
            raise ModelError(f"no optimum available (status: {self.status})")
        return self.objective


# ---------------------------------------------------------------------------
# presolve
# ---------------------------------------------------------------------------


@dataclass
class _Presolved:
    survivors: list[int]  # original variable ids, in order
    nonneg: list[bool]
    rows: list[tuple[dict[int, Fraction], str, Fraction]]  # over survivor positions
    objective: dict[int, Fraction]  # over survivor positions, minimization sense
    offset: Fraction  # objective offset in the *original* sense
    negate: bool  # original sense was max
    fixed: dict[int, Fraction] = field(default_factory=dict)
    merged: dict[int, tuple[int, Fraction]] = field(default_factory=dict)  # var -> (root, scale)
    infeasible: bool = False

    def rebuild_point(self, survivor_values: Sequence[Fraction]) -> dict[int, Fraction]:
        pos = {v: i for i, v in enumerate(self.survivors)}
        point: dict[int, Fraction] = dict(self.fixed)

        def value_of(v: int) -> Fraction:
            if v in point:
                return point[v]
            if v in pos:
                return survivor_values[pos[v]]
            if v in self.merged:
                root, scale = self.merged[v]
                val = scale * value_of(root)
                point[v] = val
                return val
            return Fraction(0)  # unconstrained and unreferenced

        for v in list(self.merged):
            value_of(v)
        for v in self.survivors:
            point[v] = survivor_values[pos[v]]
        return point


def _presolve(model: LpModel) -> _Presolved:
    nvars = len(model.variables)
    rows: list[tuple[dict[int, Fraction], str, Fraction]] = [
        (dict(c.coeffs), c.sense, c.rhs) for c in model.constraints
    ]
    objective = dict(model.objective)
    negate = model.sense == "max"
    fixed: dict[int, Fraction] = {}
    parent: dict[int, tuple[int, Fraction]] = {}  # var -> (parent, scale): var = scale*parent
    offset = Fraction(0)
    infeasible = False

    def find(v: int) -> tuple[int, Fraction]:
        if v not in parent:
            return v, Fraction(1)
        root, scale = parent[v]
        r2, s2 = find(root)
        parent[v] = (r2, scale * s2)
        return parent[v]

    def normalize_row(row: dict[int, Fraction], rhs: Fraction) -> tuple[dict[int, Fraction], Fraction]:
        out: dict[int, Fraction] = {}
        for v, c in row.items():
            if v in fixed:
                rhs -= c * fixed[v]
                continue
            root, scale = find(v)
            if root in fixed:
                rhs -= c * scale * fixed[root]
                continue
            nc = out.get(root, Fraction(0)) + c * scale
            if nc:
                out[root] = nc
            else:
                out.pop(root, None)
        return out, rhs

    changed = True
    while changed and not infeasible:
        changed = False
        next_rows: list[tuple[dict[int, Fraction], str, Fraction]] = []
        for row, sense, rhs in rows:
            row, rhs = normalize_row(row, rhs)
            if not row:
                ok = rhs == 0 if sense == "=" else (rhs <= 0 if sense == ">=" else rhs >= 0)
                if not ok:
                    infeasible = True
                    break
                continue
            if sense == "=" and len(row) == 1:
                (v, c), = row.items()
                fixed[v] = rhs / c
                changed = True
                continue
            if sense == "=" and len(row) == 2 and rhs == 0:
                (v1, c1), (v2, c2) = sorted(row.items())
                # v2 = -(c1/c2) v1; later references are rescaled onto v1
                parent[v2] = (v1, -c1 / c2)
                changed = True
                continue
            next_rows.append((row, sense, rhs))
        rows = next_rows

    nonneg = [False] * nvars
    kept_rows: list[tuple[dict[int, Fraction], str, Fraction]] = []
    if not infeasible:
        for row, sense, rhs in rows:
            row, rhs = normalize_row(row, rhs)
            if not row:
                ok = rhs == 0 if sense == "=" else (rhs <= 0 if sense == ">=" else rhs >= 0)
                if not ok:
                    infeasible = True
                continue
            if len(row) == 1 and rhs == 0 and sense in (">=", "<="):
                (v, c), = row.items()
                wants_nonneg = (c > 0) == (sense == ">=")
                if wants_nonneg:
                    nonneg[v] = True
                    continue
            kept_rows.append((row, sense, rhs))

    # fold fixings and merges into the objective
    new_obj: dict[int, Fraction] = {}
    for v, c in objective.items():
        if v in fixed:
            offset += c * fixed[v]
            continue
        root, scale = find(v)
        if root in fixed:
            offset += c * scale * fixed[root]
            continue
        new_obj[root] = new_obj.get(root, Fraction(0)) + c * scale

    merged: dict[int, tuple[int, Fraction]] = {}
    for v in parent:
        root, scale = find(v)
        if root in fixed:
            fixed[v] = scale * fixed[root]
        else:
            merged[v] = (root, scale)

    alive = sorted(
        {v for row, _, _ in kept_rows for v in row}
        | set(new_obj)
    )
    pos = {v: i for i, v in enumerate(alive)}
    # a merged-root sign bound transfers only through positive scales; play it
    # safe and keep bounds discovered on the root itself
    p_rows = [
        ({pos[v]: c for v, c in row.items()}, sense, rhs) for row, sense, rhs in kept_rows
    ]
    p_obj = {pos[v]: (-c if negate else c) for v, c in new_obj.items()}
    p_nonneg = [nonneg[v] for v in alive]

    # exact duplicate rows can reappear after merging
    seen: set[tuple] = set()
    dedup_rows = []
    for row, sense, rhs in p_rows:
        key = (tuple(sorted(row.items())), sense, rhs)
        if key in seen:
            continue
        seen.add(key)
        dedup_rows.append((row, sense, rhs))

    return _Presolved(
        survivors=alive,
        nonneg=p_nonneg,
        rows=dedup_rows,
        objective=p_obj,
        offset=offset + model.objective_offset,
        negate=negate,
        fixed=fixed,
        merged=merged,
        infeasible=infeasible,
    )


# ---------------------------------------------------------------------------
# dense two-phase simplex
# ---------------------------------------------------------------------------


class _Limits:
    def __init__(self, max_pivots: int | None, max_seconds: float | None) -> None:
        self.max_pivots = max_pivots
        self.deadline = None if max_seconds is None else time.monotonic() + max_seconds

    def exceeded(self, pivots: int) -> bool:
        if self.max_pivots is not None and pivots >= self.max_pivots:
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            return True
        return False


class _Tableau:
    """Full-tableau simplex over an exact field (Fraction) or floats."""

    def __init__(self, exact: bool) -> None:
        self.exact = exact
        self.tol = Fraction(0) if exact else 1e-9
        self.rows: list[list] = []
        self.basis: list[int] = []
        self.ncols = 0

    def _pos(self, v) -> bool:
        return v > self.tol

    def _neg(self, v) -> bool:
        return v < -self.tol

    def pivot(self, pr: int, pc: int) -> None:
        row = self.rows[pr]
        inv = row[pc]
        self.rows[pr] = row = [x / inv for x in row]
        for i, other in enumerate(self.rows):
            if i == pr:
                continue
            f = other[pc]
            if f == 0:
                continue
            self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[pr] = pc

    def run(
        self,
        cost: list,
        limits: _Limits,
        pivots_so_far: int,
        rule: str,
        allowed: set[int] | None = None,
    ) -> tuple[str, list, int]:
        """Minimize cost over the current basis; returns (status, cost_row, pivots)."""
        # reduce the cost row against the basic columns
        cost = list(cost)
        for i, b in enumerate(self.basis):
            f = cost[b]
            if f != 0:
                cost = [a - f * c for a, c in zip(cost, self.rows[i])]
        pivots = pivots_so_far
        stalled = 0
        last = cost[-1]
        use_bland = rule == "bland"
        m = len(self.rows)
        while True:
            if limits.exceeded(pivots):
                return LIMIT, cost, pivots
            enter = -1
            if use_bland:
                for j in range(self.ncols):
                    if allowed is not None and j not in allowed:
                        continue
                    if self._neg(cost[j]):
                        enter = j
                        break
            else:
                best = -self.tol if not self.exact else Fraction(0)
                for j in range(self.ncols):
                    if allowed is not None and j not in allowed:
                        continue
                    if cost[j] < best:
                        best = cost[j]
                        enter = j
            if enter < 0:
                return OPTIMAL, cost, pivots
            leave = -1
            best_ratio = None
            for i in range(m):
                a = self.rows[i][enter]
                if not self._pos(a):
                    continue
                ratio = self.rows[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
            if leave < 0:
                return UNBOUNDED, cost, pivots
            self.pivot(leave, enter)
            f = cost[enter]
            if f != 0:
                cost = [a - f * b for a, b in zip(cost, self.rows[leave])]
            pivots += 1
            # largest-coefficient rule can cycle; fall back to Bland when the
            # objective stops moving
            if not use_bland:
                if cost[-1] == last:
                    stalled += 1
                    if stalled > 2 * (m + self.ncols):
                        use_bland = True
                else:
                    stalled = 0
                    last = cost[-1]


def _standardize(pre: _Presolved, exact: bool):
    """Expand free variables into differences and rows into equalities."""
    cast = (lambda x: x) if exact else float
    cols: list[tuple[int, int]] = []  # (survivor position, sign)
    col_of: dict[tuple[int, int], int] = {}
    for i in range(len(pre.survivors)):
        col_of[(i, 1)] = len(cols)
        cols.append((i, 1))
        if not pre.nonneg[i]:
            col_of[(i, -1)] = len(cols)
            cols.append((i, -1))
    nstruct = len(cols)
    nslack = sum(1 for _, sense, _ in pre.rows if sense != "=")
    ncols = nstruct + nslack
    rows: list[list] = []
    basic_slack: list[int | None] = []  # usable starting basic column per row
    slack_at = 0
    zero = Fraction(0) if exact else 0.0
    for row, sense, rhs in pre.rows:
        dense = [zero] * (ncols + 1)
        for v, c in row.items():
            dense[col_of[(v, 1)]] = cast(c)
            if (v, -1) in col_of:
                dense[col_of[(v, -1)]] = cast(-c)
        slack_col = None
        if sense != "=":
            slack_col = nstruct + slack_at
            dense[slack_col] = cast(Fraction(1) if sense == "<=" else Fraction(-1))
            slack_at += 1
        dense[-1] = cast(rhs)
        flipped = (rhs < 0) or (rhs == 0 and sense == ">=")
        if flipped:
            # normalize so the right-hand side is nonnegative; degenerate
            # surplus rows gain a +1 column usable as a starting basic
            dense = [-x for x in dense]
        slack_positive = slack_col is not None and dense[slack_col] > 0
        basic_slack.append(slack_col if slack_positive else None)
        rows.append(dense)
    cost = [zero] * (ncols + 1)
    for v, c in pre.objective.items():
        cost[col_of[(v, 1)]] = cast(c)
        if (v, -1) in col_of:
            cost[col_of[(v, -1)]] = cast(-c)
    return cols, rows, cost, basic_slack, ncols


def _solve_core(
    model: LpModel,
    exact: bool,
    max_pivots: int | None,
    max_seconds: float | None,
    pivot_rule: str,
    warm_basis: tuple[int, ...] | None,
) -> SolveResult:
    t0 = time.monotonic()
    if len(model.variables) > MAX_DENSE_VARIABLES:
        raise CapabilityError(
            f"{len(model.variables)} variables exceed the dense-tableau guard of "
            f"{MAX_DENSE_VARIABLES}; export the model instead"
        )
    if len(model.constraints) > MAX_ROWS:
        raise CapabilityError(
            f"{len(model.constraints)} rows exceed the guard of {MAX_ROWS}"
        )
    pre = _presolve(model)
    if pre.infeasible:
        return SolveResult(INFEASIBLE, wall_time=time.monotonic() - t0, exact=exact)
    cols, rows, cost, basic_slack, ncols = _standardize(pre, exact)
    limits = _Limits(max_pivots, max_seconds)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0

    tab = _Tableau(exact)
    m = len(rows)
    pivots = 0

    warm_ok = False
    if warm_basis is not None and len(warm_basis) == m and all(
        0 <= b < ncols for b in warm_basis
    ):
        # try to realize the suggested basis by direct pivoting
        tab.rows = [list(row) for row in rows]
        tab.basis = [-1] * m
        tab.ncols = ncols
        ok = True
        used: set[int] = set()
        for b in sorted(warm_basis):
            pr = -1
            for i in range(m):
                if i in used:
                    continue
                if tab._pos(tab.rows[i][b]) or tab._neg(tab.rows[i][b]):
                    pr = i
                    break
            if pr < 0:
                ok = False
                break
            tab.pivot(pr, b)
            used.add(pr)
        if ok and len(used) == m and all(not tab._neg(row[-1]) for row in tab.rows):
            warm_ok = True
    if not warm_ok:
        # phase 1 with artificials where no slack can start basic
        tab.rows = [list(row) for row in rows]
        tab.basis = [bs if bs is not None else -1 for bs in basic_slack]
        art_cols: list[int] = []
        next_col = ncols
        for i in range(m):
            if tab.basis[i] < 0:
                art_cols.append(next_col)
                for k, other in enumerate(tab.rows):
                    other.insert(-1, one if k == i else zero)
                tab.basis[i] = next_col
                next_col += 1
        tab.ncols = next_col
        if art_cols:
            art_set = set(art_cols)
            p1_cost = [zero] * (tab.ncols + 1)
            for c in art_cols:
                p1_cost[c] = one
            status, p1_cost, pivots = tab.run(p1_cost, limits, pivots, "bland")
            if status == LIMIT:
                return SolveResult(LIMIT, pivots=pivots, wall_time=time.monotonic() - t0,
                                   exact=exact)
            feas = -p1_cost[-1]
            if feas > (0 if exact else 1e-7):
                return SolveResult(
                    INFEASIBLE, pivots=pivots, wall_time=time.monotonic() - t0, exact=exact
                )
            # drive leftover zero-level artificials out of the basis
            for i in range(m):
                if tab.basis[i] in art_set:
                    target = next(
                        (
                            j
                            for j in range(ncols)
                            if tab._pos(tab.rows[i][j]) or tab._neg(tab.rows[i][j])
                        ),
                        None,
                    )
                    if target is not None:
                        tab.pivot(i, target)
            keep = [i for i in range(m) if tab.basis[i] not in art_set]
            tab.rows = [
                [v for j, v in enumerate(tab.rows[i]) if j < ncols or j == next_col]
                for i in keep
            ]
            tab.basis = [tab.basis[i] for i in keep]
            m = len(tab.rows)
        tab.ncols = ncols

    status, cost_row, pivots = tab.run(cost, limits, pivots, pivot_rule)
    wall = time.monotonic() - t0
    if status == LIMIT:
        return SolveResult(LIMIT, pivots=pivots, wall_time=wall, exact=exact)
    if status == UNBOUNDED:
        return SolveResult(UNBOUNDED, pivots=pivots, wall_time=wall, exact=exact)

    # read off the solution
    values = [zero] * len(cols)
    for i, b in enumerate(tab.basis):
        if b < len(cols):
            values[b] = tab.rows[i][-1]
    surv_vals = [zero] * len(pre.survivors)
    for cidx, (sv, sign) in enumerate(cols):
        surv_vals[sv] += values[cidx] if sign > 0 else -values[cidx]
    if not exact:
        point = {v: surv_vals[i] for i, v in enumerate(pre.survivors)}
        obj = -cost_row[-1]
        if pre.negate:
            obj = -obj
        obj += float(pre.offset)
        full = pre.rebuild_point([Fraction(v).limit_denominator(10**12) for v in surv_vals])
        bad = _max_violation(model, full)
        if bad > 1e-6:
            return SolveResult(NUMERICAL, pivots=pivots, wall_time=wall, exact=False)
        return SolveResult(
            OPTIMAL,
            objective=obj,
            solution={k: v for k, v in full.items() if v},
            pivots=pivots,
            wall_time=wall,
            basis=tuple(sorted(tab.basis)),
            exact=False,
        )

    point = pre.rebuild_point(surv_vals)
    obj = -cost_row[-1]
    if pre.negate:
        obj = -obj
    obj += pre.offset
    # certify: the point must satisfy every original row and attain the objective
    violations = model.check_point(point)
    if violations:
        raise ModelError(
            f"internal error: solver output violates {len(violations)} rows"
        )
    if model.objective_value(point) != obj:
        raise ModelError("internal error: certified objective mismatch")
    return SolveResult(
        OPTIMAL,
        objective=obj,
        solution={k: v for k, v in point.items() if v},
        pivots=pivots,
        wall_time=wall,
        basis=tuple(sorted(tab.basis)),
        exact=True,
    )


def _max_violation(model: LpModel, point: Mapping[int, Fraction]) -> float:
    worst = 0.0
    for con in model.constraints:
        lhs = float(sum(c * point.get(v, Fraction(0)) for v, c in con.coeffs.items()))
        rhs = float(con.rhs)
        scale = max(1.0, abs(rhs))
        if con.sense == "<=":
            worst = max(worst, (lhs - rhs) / scale)
        elif con.sense == ">=":
            worst = max(worst, (rhs - lhs) / scale)
        else:
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def solve_exact(
    model: LpModel,
    max_pivots: int | None = None,
    max_seconds: float | None = None,
    pivot_rule: str = "bland",
    warm_basis: tuple[int, ...] | None = None,
) -> SolveResult:
    """Certified exact optimum; the result re-verifies against every row."""
    if pivot_rule not in ("bland", "dantzig"):
        raise ModelError(f"unknown pivot rule {pivot_rule!r}")
    return _solve_core(model, True, max_pivots, max_seconds, pivot_rule, warm_basis)


def solve_float(
    model: LpModel,
    max_pivots: int | None = None,
    max_seconds: float | None = None,
) -> SolveResult:
    """Double-precision run of the same pipeline; approximate, never certified."""
    return _solve_core(model, False, max_pivots, max_seconds, "dantzig", None)


# ---------------------------------------------------------------------------
# export writers
# ---------------------------------------------------------------------------


def _is_terminating(x: Fraction) -> bool:
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def _decimal_exact(x: Fraction) -> str:
    """Exact decimal string for fractions with 2^a 5^b denominators."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    shift = max(twos, fives)
    scaled = x.numerator * 10**shift // x.denominator
    digits = str(scaled).rjust(shift + 1, "0")
    if shift == 0:
        return sign + digits
    out = f"{digits[:-shift]}.{digits[-shift:]}".rstrip("0").rstrip(".")
    return sign + (out or "0")


def _decimal_approx(x: Fraction, digits: int) -> str:
    from decimal import Decimal, getcontext

    getcontext().prec = digits + 10
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(+Decimal(d).normalize())[: digits + 3]


def _coef_str(x: Fraction, digits: int) -> tuple[str, bool]:
    if _is_terminating(x):
        return _decimal_exact(x), True
    return _decimal_approx(x, digits), False


def export_lp(
    model: LpModel,
    fmt: str,
    path: str | Path,
    decimal_digits: int = 40,
) -> Path:
    """Write the model as CPLEX-LP or fixed-layout MPS text, deterministically.

    Non-terminating rational coefficients are written as a decimal expansion
    (default 40 digits) with the exact fraction preserved in a comment; the
    header records whether the file is exact or approximate.
    """
    path = Path(path)
    if fmt == "lp":
        text = _write_lp_text(model, decimal_digits)
    elif fmt == "mps":
        text = _write_mps_text(model, decimal_digits)
    else:
        raise ModelError(f"unknown export format {fmt!r}")
    path.write_text(text, encoding="ascii", newline="\n")
    return path


def _row_name(i: int, tag: str) -> str:
    clean = "".join(ch if ch.isalnum() else "_" for ch in tag)
    return f"c{i}_{clean}"[:64]


def _write_lp_text(model: LpModel, digits: int) -> str:
    names = [v.name for v in model.variables]
    exact = True
    inexact_notes: list[str] = []

    def terms(coeffs: Mapping[int, Fraction], where: str) -> str:
        nonlocal exact
        parts = []
        for v in sorted(coeffs):
            c = coeffs[v]
            s, ok = _coef_str(abs(c), digits)
            if not ok:
                exact = False
                inexact_notes.append(f"\\ {where} {names[v]}: exact {abs(c)}")
            parts.append(("- " if c < 0 else "+ ") + f"{s} {names[v]}")
        out = " ".join(parts)
        return out.lstrip("+ ") if out.startswith("+ ") else out

    lines = []
    body = terms(model.objective, "obj")
    if model.objective_offset:
        s, ok = _coef_str(abs(model.objective_offset), digits)
        body += (" - " if model.objective_offset < 0 else " + ") + s
    lines.append("Maximize" if model.sense == "max" else "Minimize")
    lines.append(f" obj: {body if body else '0 ' + names[0]}")
    lines.append("Subject To")
    for i, con in enumerate(model.constraints):
        op = {"<=": "<=", ">=": ">=", "=": "="}[con.sense]
        rhs, ok = _coef_str(con.rhs, digits)
        if not ok:
            exact = False
            inexact_notes.append(f"\\ rhs {_row_name(i, con.tag)}: exact {con.rhs}")
        lines.append(f" {_row_name(i, con.tag)}: {terms(con.coeffs, 'row')} {op} {rhs}")
    lines.append("Bounds")
    for name in names:
        lines.append(f" {name} free")
    lines.append("End")
    header = [
        "\\ codelp model export",
        f"\\ family: {model.metadata.get('family', '?')} "
        f"r={model.metadata.get('r', '?')} n={model.metadata.get('n', '?')} "
        f"d={model.metadata.get('d', '?')} variant={model.metadata.get('variant', '-')}",
        f"\\ coefficients: {'exact-decimal' if exact else f'decimal-approx-{digits}'}",
    ]
    return "\n".join(header + inexact_notes + lines) + "\n"


def _write_mps_text(model: LpModel, digits: int) -> str:
    names = [v.name for v in model.variables]
    exact = True

    def num(x: Fraction) -> str:
        nonlocal exact
        s, ok = _coef_str(x, digits)
        if not ok:
            exact = False
        return s

    lines = [
        f"* codelp model export",
        f"* coefficients: exact-decimal-or-approx-{digits}",
        "NAME          CODELP",
        "OBJSENSE",
        "    " + ("MAX" if model.sense == "max" else "MIN"),
        "ROWS",
        " N  OBJ",
    ]
    rownames = [_row_name(i, c.tag) for i, c in enumerate(model.constraints)]
    for rn, con in zip(rownames, model.constraints):
        kind = {"<=": "L", ">=": "G", "=": "E"}[con.sense]
        lines.append(f" {kind}  {rn}")
    lines.append("COLUMNS")
    by_var: list[list[tuple[str, Fraction]]] = [[] for _ in names]
    for v, c in model.objective.items():
        by_var[v].append(("OBJ", c))
    for rn, con in zip(rownames, model.constraints):
        for v, c in con.coeffs.items():
            by_var[v].append((rn, c))
    for v, entries in enumerate(by_var):
        for rn, c in sorted(entries):
            lines.append(f"    {names[v]:<24}  {rn:<24}  {num(c)}")
    lines.append("RHS")
    if model.objective_offset:
        lines.append(f"    RHS1{'':<20}  {'OBJ':<24}  {num(-model.objective_offset)}")
    for rn, con in zip(rownames, model.constraints):
        if con.rhs:
            lines.append(f"    RHS1{'':<20}  {rn:<24}  {num(con.rhs)}")
    lines.append("BOUNDS")
    for name in names:
        lines.append(f" FR BND1      {name}")
    lines.append("ENDATA")
    lines[1] = f"* coefficients: {'exact-decimal' if exact else f'decimal-approx-{digits}'}"
    return "\n".join(lines) + "\n"
