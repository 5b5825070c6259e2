"""Small dense exact linear programming over the rationals.

Two-phase simplex with Bland's rule, so termination is guaranteed and
every answer is exact.  Problem sizes here are tiny (tens of variables),
which is why a plain tableau is the right tool.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(T, basis, row, col):
    piv = T[row][col]
    inv = _ONE / piv
    T[row] = [x * inv for x in T[row]]
    prow = T[row]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [x - f * y for x, y in zip(r, prow)]
    basis[row] = col


def _bland_iterate(T, basis, value_col):
    """Maximize; the reduced-cost row is the last row of T."""
    m = len(T) - 1
    while True:
        crow = T[-1]
        col = next((j for j in range(value_col) if crow[j] > 0), None)
        if col is None:
            return OPTIMAL
        best = None
        best_ratio = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][value_col] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[best]
                ):
                    best = i
                    best_ratio = ratio
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best, col)


def simplex_standard(c, A, b):
    """max c.x subject to A x = b, x >= 0.

    Returns (status, value, x).  `A` is a list of rows, everything is
    coerced to Fraction.
    """
    m = len(A)
    n = len(c)
    rows = [[Fraction(x) for x in row] for row in A]
    rhs = [Fraction(x) for x in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1 tableau: columns = original n, artificials m, rhs
    T = []
    for i in range(m):
        T.append(rows[i] + [_ONE if k == i else _ZERO for k in range(m)] + [rhs[i]])
    basis = [n + i for i in range(m)]
    costrow = [_ZERO] * (n + m + 1)
    for i in range(m):
        costrow = [x + y for x, y in zip(costrow, T[i])]
    for k in range(m):
        costrow[n + k] = _ZERO
    T.append(costrow)
    status = _bland_iterate(T, basis, n + m)
    assert status == OPTIMAL
    if T[-1][n + m] != 0:
        return INFEASIBLE, None, None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    # drop artificial columns, rebuild objective
    keep_rows = [i for i in range(m) if basis[i] < n]
    T2 = [[T[i][j] for j in range(n)] + [T[i][n + m]] for i in keep_rows]
    basis2 = [basis[i] for i in keep_rows]
    cf = [Fraction(x) for x in c]
    zrow = [_ZERO] * (n + 1)
    for i, r in enumerate(T2):
        cb = cf[basis2[i]]
        if cb:
            zrow = [z + cb * x for z, x in zip(zrow, r)]
    costrow = [cf[j] - zrow[j] for j in range(n)] + [-zrow[n]]
    T2.append(costrow)
    status = _bland_iterate(T2, basis2, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [_ZERO] * n
    for i, bi in enumerate(basis2):
        x[bi] = T2[i][n]
    value = -T2[-1][n]
    return OPTIMAL, value, x


class LinearProgram:
    """Convenience builder: free variables, <=,>=,== constraints."""

    def __init__(self, nvars):
        self.nvars = nvars
        self.cons = []

    def add(self, coeffs, rel, rhs):
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient length mismatch")
        if rel not in ("<=", ">=", "=="):
            raise ValueError(f"bad relation {rel}")
        self.cons.append(([Fraction(x) for x in coeffs], rel, Fraction(rhs)))

    def maximize(self, objective, nonneg=()):
        """Maximize objective.x.  Variables listed in `nonneg` are x>=0;
        all others are free (split internally)."""
        nonneg = set(nonneg)
        free = [j for j in range(self.nvars) if j not in nonneg]
        # standard-form column layout: nonneg vars, then (p,q) pairs per free var, then slacks
        col_of = {}
        ncols = 0
        for j in range(self.nvars):
            if j in nonneg:
                col_of[j] = (ncols,)
                ncols += 1
            else:
                col_of[j] = (ncols, ncols + 1)
                ncols += 2
        nslack = sum(1 for _, rel, _ in self.cons if rel != "==")
        total = ncols + nslack
        A = []
        b = []
        si = ncols
        for coeffs, rel, rhs in self.cons:
            row = [_ZERO] * total
            for j, cj in enumerate(coeffs):
                if cj == 0:
                    continue
                cols = col_of[j]
                row[cols[0]] += cj
                if len(cols) == 2:
                    row[cols[1]] -= cj
            if rel == "<=":
                row[si] = _ONE
                si += 1
            elif rel == ">=":
                row[si] = -_ONE
                si += 1
            A.append(row)
            b.append(rhs)
        c = [_ZERO] * total
        for j, cj in enumerate(objective):
            if cj == 0:
                continue
            cols = col_of[j]
            c[cols[0]] += Fraction(cj)
            if len(cols) == 2:
                c[cols[1]] -= Fraction(cj)
        status, value, x = simplex_standard(c, A, b)
        if status != OPTIMAL:
            return status, None, None
        point = []
        for j in range(self.nvars):
            cols = col_of[j]
            v = x[cols[0]]
            if len(cols) == 2:
                v = v - x[cols[1]]
            point.append(v)
        return OPTIMAL, value, point


def strict_witness(normals, rhs, signs, dim):
    """Point x with signs[i]*(normals[i].x - rhs[i]) > 0 for all i.

    Maximizes t <= 1 with all strict slacks >= t.  Returns the point or
    None when no strictly feasible point exists.
    """
    lp = LinearProgram(dim + 1)
    t = dim
    for nv, c, s in zip(normals, rhs, signs):
        coeffs = [s * Fraction(x) for x in nv] + [Fraction(-1)]
        lp.add(coeffs, ">=", s * Fraction(c))
    tcol = [_ZERO] * dim + [_ONE]
    lp.add(tcol, "<=", 1)
    status, value, point = lp.maximize(tcol, nonneg=(t,))
    if status != OPTIMAL or value <= 0:
        return None
    return tuple(point[:dim])


def feasible_nonneg(A, b):
    """Is {x >= 0 : A x = b} nonempty?"""
    n = len(A[0]) if A else 0
    status, _, x = simplex_standard([_ZERO] * n, A, b)
    return status == OPTIMAL, x


def recession_is_trivial(eq_rows, sign_rows, signs, dim):
    """Whether {v : eq.v = 0, signs[i]*(sign_rows[i].v) >= 0} is {0}.

    Requires that eq_rows together with sign_rows span R^dim (else the
    common nullspace already gives a nonzero recession vector, and we
    return False immediately).
    """
    from .exact import rat_rank

    if dim == 0:
        return True
    span = [list(r) for r in eq_rows] + [list(r) for r in sign_rows]
    if not span or rat_rank([[Fraction(x) for x in r] for r in span]) < dim:
        return False
    lp = LinearProgram(dim)
    for r in eq_rows:
        lp.add([Fraction(x) for x in r], "==", 0)
    obj = [_ZERO] * dim
    for r, s in zip(sign_rows, signs):
        coeffs = [s * Fraction(x) for x in r]
        lp.add(coeffs, ">=", 0)
        lp.add(coeffs, "<=", 1)
        obj = [o + cc for o, cc in zip(obj, coeffs)]
    status, value, _ = lp.maximize(obj)
    assert status == OPTIMAL
    return value == 0
