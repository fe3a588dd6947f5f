"""Exact integer/rational linear algebra kernels.

Everything here is exact: determinants and nullspaces use fraction-free
(Bareiss) elimination over the integers, linear programs run a two-phase
simplex over Fractions with Bland's rule, so termination is guaranteed and
no rounding ever occurs.  Rationals are plain fractions.Fraction values
(normalized, positive denominator), integers are plain Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence


def _int_rows(rows) -> tuple[list[list[int]], int]:
    """Scale each row by the positive lcm of its denominators; returns the
    integer matrix and the sign correction (always +1, scaling is positive)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) if den != 1 else int(x) for x in row])
    return out, 1


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            row = a[i]
            aik = row[k]
            for j in range(k + 1, n):
                row[j] = (piv * row[j] - aik * rowk[j]) // prev
            row[k] = 0
        prev = piv
    return sign * a[-1][-1]


def det_sign(rows: Sequence[Sequence]) -> int:
    """Sign of the determinant of a square integer or rational matrix."""
    ints, _ = _int_rows(rows)
    d = bareiss_det(ints)
    return (d > 0) - (d < 0)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    ints, _ = _int_rows(rows)
    a = [list(r) for r in ints]
    n = len(a)
    w = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(w):
        pr = next((i for i in range(r, n) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        rowr = a[r]
        for i in range(r + 1, n):
            row = a[i]
            f = row[c]
            for j in range(c, w):
                row[j] = (piv * row[j] - f * rowr[j]) // prev
        prev = piv
        r += 1
        if r == n:
            break
    return r


@dataclass(frozen=True)
class Dependence:
    """A primitive integer linear dependence among a list of vectors.

    ``coeffs[j]`` multiplies the j-th input vector; gcd of all coefficients
    is 1.  The coefficient at ``pivot`` is positive unless it vanishes, in
    which case ``pivot_zero`` is set and the first nonzero coefficient is
    positive instead.
    """

    coeffs: tuple[int, ...]
    pivot: int
    pivot_zero: bool


def nullspace_dependence(vectors: Sequence[Sequence], pivot: int) -> Optional[Dependence]:
    """The unique (up to scale) dependence among the given vectors.

    Expects one more vector than the dimension they span; returns None when
    the kernel is not one-dimensional (a rank-deficient configuration).
    """
    w = len(vectors)
    n = len(vectors[0]) if w else 0
    # scale rational columns by positive integers; unscale coefficients after
    if type(vectors[0][0]) is int:
        scales = None
        a = [[vectors[j][i] for j in range(w)] for i in range(n)]
    else:
        scales = []
        cols = []
        for vec in vectors:
            den = 1
            for x in vec:
                if isinstance(x, Fraction):
                    den = lcm(den, x.denominator)
            scales.append(den)
            cols.append([int(x * den) if den != 1 else int(x) for x in vec])
        a = [[cols[j][i] for j in range(w)] for i in range(n)]
    piv_cols: list[int] = []
    piv_rows: list[list[int]] = []
    r = 0
    prev = 1
    for c in range(w):
        pr = next((i for i in range(r, n) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        rowr = a[r]
        for i in range(r + 1, n):
            row = a[i]
            f = row[c]
            for j in range(c, w):
                row[j] = (piv * row[j] - f * rowr[j]) // prev
        prev = piv
        piv_cols.append(c)
        piv_rows.append(rowr)
        r += 1
        if r == n:
            break
    if w - r != 1:
        return None
    f0 = next(c for c in range(w) if c not in piv_cols)
    # division-free back-substitution: rescale the partial kernel vector by
    # each pivot so everything stays integral
    num = [0] * w
    num[f0] = 1
    for i in reversed(range(r)):
        c = piv_cols[i]
        row = piv_rows[i]
        s = 0
        for j in range(c + 1, w):
            nj = num[j]
            if nj:
                s += row[j] * nj
        piv = row[c]
        for j in range(w):
            if num[j]:
                num[j] *= piv
        num[c] = -s
    if scales is not None:
        num = [v * s for v, s in zip(num, scales)]
    g = 0
    for v in num:
        g = gcd(g, v)
    ints = [v // g for v in num]
    pivot_zero = ints[pivot] == 0
    lead = ints[pivot] if not pivot_zero else next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return Dependence(tuple(ints), pivot, pivot_zero)


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """Exact solution of a square system, or None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return None
        a[c], a[pr] = a[pr], a[c]
        piv = a[c][c]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                row = a[i]
                rowc = a[c]
                mult = f / piv
                for j in range(c, n + 1):
                    row[j] -= mult * rowc[j]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = a[i][n]
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


# ---------------------------------------------------------------------------
# exact LP feasibility (two-phase simplex, Bland's rule)


def lp_feasible(
    rows: Sequence[tuple[Sequence, object]],
    n_vars: int,
    lower: Optional[Sequence[Optional[Fraction]]] = None,
) -> Optional[list[Fraction]]:
    """Find x with coeffs.x >= rhs for every (coeffs, rhs) row, exactly.

    ``lower[i]`` is an optional lower bound for x_i (substituted out before
    the simplex); unbounded-below variables are split into differences of
    non-negative parts.  Returns a feasible point or None when the system is
    infeasible (phase-one optimum stays positive).
    """
    if lower is None:
        lower = [None] * n_vars
    colmap: list[tuple] = []
    ny = 0
    for i in range(n_vars):
        if lower[i] is None:
            colmap.append(("f", ny, ny + 1))
            ny += 2
        else:
            colmap.append(("b", ny))
            ny += 1

    m = len(rows)
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for coeffs, rhs in rows:
        arow = [Fraction(0)] * ny
        r = Fraction(rhs)
        for i in range(n_vars):
            c = Fraction(coeffs[i])
            if not c:
                continue
            spec = colmap[i]
            if spec[0] == "b":
                arow[spec[1]] += c
                r -= c * lower[i]
            else:
                arow[spec[1]] += c
                arow[spec[2]] -= c
        A.append(arow)
        b.append(r)

    # tableau columns: y (ny) | slacks (m) | artificials (appended as needed)
    ncols = ny + m
    T: list[list[Fraction]] = []
    basis: list[int] = []
    art_of_row: list[Optional[int]] = []
    for k in range(m):
        row = A[k] + [Fraction(0)] * m + [b[k]]
        row[ny + k] = Fraction(-1)
        if b[k] <= 0:  # negating makes the slack a feasible basic variable
            row = [-x for x in row]
        T.append(row)
        if row[ny + k] > 0:
            basis.append(ny + k)  # slack is basic and feasible
            art_of_row.append(None)
        else:
            basis.append(-1)  # placeholder, artificial appended below
            art_of_row.append(k)

    n_art = 0
    for k in range(m):
        if art_of_row[k] is not None:
            for i in range(m):
                T[i].insert(ncols + n_art, Fraction(1) if i == k else Fraction(0))
            basis[k] = ncols + n_art
            n_art += 1
    total = ncols + n_art

    # phase-one objective: minimize the sum of artificials
    obj = [Fraction(0)] * (total + 1)
    for j in range(ncols, total):
        obj[j] = Fraction(1)
    for k in range(m):
        if basis[k] >= ncols:
            for j in range(total + 1):
                obj[j] -= T[k][j]

    def pivot(k: int, j: int) -> None:
        piv = T[k][j]
        row = T[k]
        if piv != 1:
            for c in range(total + 1):
                row[c] /= piv
        for i in range(m):
            if i != k and T[i][j]:
                f = T[i][j]
                tri = T[i]
                for c in range(total + 1):
                    tri[c] -= f * row[c]
        if obj[j]:
            f = obj[j]
            for c in range(total + 1):
                obj[c] -= f * row[c]
        basis[k] = j

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for k in range(m):
            a = T[k][enter]
            if a > 0:
                ratio = T[k][total] / a
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[k] < basis[best[1]]
                ):
                    best = (ratio, k)
        if best is None:  # pragma: no cover - phase one is bounded below
            raise ArithmeticError("phase-one objective unbounded")
        pivot(best[1], enter)

    if -obj[total] > 0:
        return None

    # drive any degenerate artificial out of the basis
    for k in range(m):
        if basis[k] >= ncols:
            j = next((c for c in range(ncols) if T[k][c]), None)
            if j is not None:
                pivot(k, j)

    y = [Fraction(0)] * ny
    for k in range(m):
        if basis[k] < ny:
            y[basis[k]] = T[k][total]

    x: list[Fraction] = []
    for i in range(n_vars):
        spec = colmap[i]
        if spec[0] == "b":
            x.append(lower[i] + y[spec[1]])
        else:
            x.append(y[spec[1]] - y[spec[2]])

    for coeffs, rhs in rows:  # exact arithmetic: the certificate must check out
        total_lhs = sum(Fraction(c) * xi for c, xi in zip(coeffs, x))
        if total_lhs < Fraction(rhs):
            raise ArithmeticError("simplex produced an infeasible point")
    return x
