"""Exact integer/rational linear algebra and multivariate polynomials.

Everything downstream (matroids, polyhedra, fans, cohomology) reduces to
the primitives in this module.  All arithmetic is arbitrary precision:
`int` for lattice data, `fractions.Fraction` for rational data.  No
floating point is used anywhere in the library.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    Inconsistent,
    InputFormatError,
    NonPrimitive,
    NotFullRank,
    RankDeficient,
    VariableCountMismatch,
)

Rat = Fraction


# ---------------------------------------------------------------------------
# integer matrices


class IntMatrix:
    """Immutable integer matrix, row major.

    Rows and columns are exposed as tuples; all derived matrices are new
    objects, so instances are safe to share and hash.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "_e", rows)

    def __setattr__(self, *a):
        raise AttributeError("IntMatrix is immutable")

    # -- construction helpers

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, r, c):
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def from_columns(cls, columns, nrows=None):
        columns = [tuple(c) for c in columns]
        if nrows is None:
            if not columns:
                raise ValueError("cannot infer row count of empty column list")
            nrows = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(nrows)])

    # -- access

    def row(self, i):
        return self._e[i]

    def column(self, j):
        return tuple(r[j] for r in self._e)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def entry(self, i, j):
        return self._e[i][j]

    def __getitem__(self, i):
        return self._e[i]

    def __iter__(self):
        return iter(self._e)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        return f"IntMatrix({list(map(list, self._e))})"

    # -- algebra

    def transpose(self):
        return IntMatrix([self.column(j) for j in range(self.cols)])

    def neg(self):
        return IntMatrix([[-x for x in r] for r in self._e])

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix([self._e[i] + other._e[i] for i in range(self.rows)])

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = other.cols
        return IntMatrix(
            [
                [sum(self._e[i][k] * other._e[k][j] for k in range(self.cols)) for j in range(ocols)]
                for i in range(self.rows)
            ]
        )

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(r[k] * v[k] for k in range(self.cols)) for r in self._e)

    def submatrix_columns(self, cols):
        return IntMatrix([[r[j] for j in cols] for r in self._e])

    def submatrix(self, rows, cols):
        return IntMatrix([[self._e[i][j] for j in cols] for i in rows])

    def is_zero(self):
        return all(x == 0 for r in self._e for x in r)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return det_bareiss([list(r) for r in self._e])

    def rank(self):
        return rank_int([list(r) for r in self._e])


def det_bareiss(m):
    """Fraction-free determinant of a square list-of-lists of ints."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def rank_int(m):
    """Rank over Q of a list-of-lists of ints (destructive on the copy passed)."""
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                a, b = pr[c], m[i][c]
                g = math.gcd(a, b)
                fa, fb = b // g, a // g
                m[i] = [fb * x - fa * y for x, y in zip(m[i], pr)]
        r += 1
        if r == nrows:
            break
    return r


def rat_rank(rows):
    """Rank of a list of tuples/lists of Fractions."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = Fraction(m[i][c], 1) / pr[c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        r += 1
        if r == nrows:
            break
    return r


def solve_square(M, b):
    """Unique rational solution of M x = b for a nonsingular square IntMatrix
    (or list-of-rows).  Returns a tuple of Fractions, or None if singular."""
    rows = [list(map(Fraction, r)) + [Fraction(x)] for r, x in zip(M, b)]
    n = len(rows)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        pr = rows[c]
        inv = Fraction(1, 1) / pr[c]
        rows[c] = [x * inv for x in pr]
        pr = rows[c]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
    return tuple(rows[i][n] for i in range(n))


def solve_general(rows, rhs):
    """General rational solve.

    rows: list of coefficient sequences, rhs: list of values.  Returns
    (particular solution tuple or None, list of nullspace basis tuples).
    """
    if not rows:
        raise ValueError("no equations; use nullspace of the empty system directly")
    ncols = len(rows[0])
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1, 1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        pr = aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], pr)]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][ncols] != 0:
            return None, _nullspace_from_rref(aug[:r], pivots, ncols)
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return tuple(sol), _nullspace_from_rref(aug[:r], pivots, ncols)


def _nullspace_from_rref(rref_rows, pivots, ncols):
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rref_rows[i][f]
        basis.append(tuple(v))
    return basis


def nullspace_rational(M):
    """Basis of the rational kernel of an IntMatrix (columns as unknowns)."""
    if M.rows == 0:
        return [tuple(Fraction(1) if j == i else Fraction(0) for j in range(M.cols)) for i in range(M.cols)]
    _, ns = solve_general([list(r) for r in M], [0] * M.rows)
    return ns


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector (gcd 1), keeping sign."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# Hermite forms and lattice kernels


def column_hermite_form(M):
    """Canonical column Hermite form of an IntMatrix.

    Returns H with the same column span over Z: column echelon, pivot
    entries positive, entries to the right of a pivot reduced into
    [0, pivot).  Zero columns are dropped.
    """
    cols = [list(c) for c in M.columns()]
    nrows = M.rows
    # Work column-style: for each row, sweep gcds into one pivot column.
    pivot_cols = []
    rest = cols
    for i in range(nrows):
        work = [c for c in rest if any(c[k] != 0 for k in range(i, nrows))]
        cand = [c for c in work if c[i] != 0]
        if not cand:
            rest = work
            continue
        # gcd elimination in row i
        while True:
            cand = sorted((c for c in work if c[i] != 0), key=lambda c: abs(c[i]))
            if len(cand) <= 1:
                break
            p = cand[0]
            for c in cand[1:]:
                q = c[i] // p[i]
                for k in range(nrows):
                    c[k] -= q * p[k]
            work = [c for c in work if any(x != 0 for x in c)]
        piv = next(c for c in work if c[i] != 0)
        if piv[i] < 0:
            for k in range(nrows):
                piv[k] = -piv[k]
        pivot_cols.append(piv)
        rest = [c for c in work if c is not piv and any(c[k] != 0 for k in range(i + 1, nrows))]
    # reduce entries left of later pivots
    for a in range(len(pivot_cols)):
        for b in range(a):
            i = next(k for k in range(nrows) if pivot_cols[a][k] != 0)
            # reduce column b against pivot column a at row i
            q = pivot_cols[b][i] // pivot_cols[a][i]
            if q:
                for k in range(nrows):
                    pivot_cols[b][k] -= q * pivot_cols[a][k]
    if not pivot_cols:
        return IntMatrix.zero(nrows, 0)
    return IntMatrix.from_columns(pivot_cols, nrows)


def kernel_lattice_basis(A):
    """Saturated integer kernel basis of a full-row-rank primitive matrix.

    Returns the n x (n-d) matrix B with A B = 0 whose columns generate
    all of ker_Z(A).  Computed by unimodular column reduction of A (so
    saturation is automatic), then canonicalized by the column Hermite
    form for determinism.

    Raises NotFullRank, NonPrimitive.
    """
    d, n = A.rows, A.cols
    if A.rank() < d:
        raise NotFullRank(f"matrix has rank < {d}")
    g = gcd_maximal_minors(A)
    if g != 1:
        raise NonPrimitive(f"gcd of maximal {d}x{d} minors is {g}, not 1")
    # column reduction A*U = [L | 0] with U unimodular
    work = [list(r) for r in A]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_combine(j, k, q):
        # col_j -= q * col_k
        for i in range(d):
            work[i][j] -= q * work[i][k]
        for i in range(n):
            U[i][j] -= q * U[i][k]

    def col_swap(j, k):
        for i in range(d):
            work[i][j], work[i][k] = work[i][k], work[i][j]
        for i in range(n):
            U[i][j], U[i][k] = U[i][k], U[i][j]

    r = 0
    for i in range(d):
        while True:
            nz = [j for j in range(r, n) if work[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(work[i][j]))
            col_swap(r, jmin)
            done = True
            for j in range(r + 1, n):
                if work[i][j] != 0:
                    q = work[i][j] // work[i][r]
                    col_combine(j, r, q)
                    if work[i][j] != 0:
                        done = False
            if done:
                break
        if work[i][r] != 0 if r < n else False:
            r += 1
    # kernel = columns r..n-1 of U
    kernel_cols = [tuple(U[i][j] for i in range(n)) for j in range(r, n)]
    if not kernel_cols:
        return IntMatrix.zero(n, 0)
    B = IntMatrix.from_columns(kernel_cols, n)
    return column_hermite_form(B)


def gcd_maximal_minors(M):
    """gcd of all maximal minors (0 if all vanish)."""
    r, c = M.rows, M.cols
    k = min(r, c)
    g = 0
    if r <= c:
        for cols in itertools.combinations(range(c), k):
            g = math.gcd(g, M.submatrix(range(r), cols).det())
            if g == 1:
                return 1
    else:
        for rows in itertools.combinations(range(r), k):
            g = math.gcd(g, M.submatrix(rows, range(c)).det())
            if g == 1:
                return 1
    return g


def maximal_minor_values(M):
    """Sorted set of absolute values of the nonzero maximal minors."""
    r, c = M.rows, M.cols
    k = min(r, c)
    vals = set()
    if c >= r:
        for cols in itertools.combinations(range(c), k):
            dd = M.submatrix(range(r), cols).det()
            if dd:
                vals.add(abs(dd))
    else:
        for rows in itertools.combinations(range(r), k):
            dd = M.submatrix(rows, range(c)).det()
            if dd:
                vals.add(abs(dd))
    return sorted(vals)


def is_unimodular(A):
    """Whether all nonzero maximal minors of A share one absolute value.

    Also evaluates the Gale-dual criterion (all maximal minors of the
    kernel basis lie in {-1,0,1}) and insists the two agree.
    """
    if A.rank() < A.rows:
        raise NotFullRank("unimodularity is defined for full-row-rank matrices")
    vals = maximal_minor_values(A)
    by_A = len(vals) <= 1
    try:
        B = kernel_lattice_basis(A)
    except NonPrimitive:
        return by_A
    bvals = maximal_minor_values(B.transpose())
    by_B = all(v == 1 for v in bvals)
    if by_A != by_B:
        raise AssertionError(
            f"unimodularity criteria disagree: minors of A {vals}, minors of B {bvals}"
        )
    return by_A


# ---------------------------------------------------------------------------
# rational vectors


def ratvec(values):
    return tuple(Fraction(v) for v in values)


def parse_rational(s):
    s = s.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad rational {s!r}") from exc


def format_rational(f):
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Multivariate polynomial with exact rational coefficients.

    Terms map exponent tuples to nonzero Fractions.  Zero coefficients
    are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        object.__setattr__(self, "nvars", int(nvars))
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def monomial(cls, nvars, exps, coeff=1):
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    @classmethod
    def variable(cls, nvars, i, coeff=1):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(nvars, e, coeff)

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(n, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other):
        if self.nvars != other.nvars:
            raise VariableCountMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) - c
        return MultiPoly(self.nvars, t)

    def scale(self, c):
        c = Fraction(c)
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise VariableCountMismatch("evaluation point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def substitute_linear(self, forms, new_nvars):
        """Substitute x_i := forms[i] (a polynomial in the new variables)."""
        if len(forms) != self.nvars:
            raise VariableCountMismatch("one substitution form per variable required")
        out = MultiPoly.zero(new_nvars)
        for e, c in self.terms.items():
            term = MultiPoly(new_nvars, {(0,) * new_nvars: c})
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * forms[i]
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(bits) + ")"


def monomial_exponents(nvars, degree):
    """All exponent tuples of the given total degree, lexicographically sorted."""
    if nvars == 0:
        return [()] if degree == 0 else []

    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining + 1):
            rec(prefix + (k,), remaining - k, slots - 1)

    rec((), degree, nvars)
    return sorted(out)


def apply_diff_op(op, p):
    """Apply a constant-coefficient differential operator to a polynomial.

    `op` is a polynomial in the symbols d/dx_i over the same variable
    count as `p`.
    """
    if op.nvars != p.nvars:
        raise VariableCountMismatch(f"{op.nvars} vs {p.nvars} variables")
    out = {}
    for beta, c_op in op.terms.items():
        for gamma, c_p in p.terms.items():
            if any(g < b for g, b in zip(gamma, beta)):
                continue
            coeff = c_op * c_p
            new = []
            for g, b in zip(gamma, beta):
                for t in range(b):
                    coeff *= g - t
                new.append(g - b)
            if coeff:
                key = tuple(new)
                out[key] = out.get(key, Fraction(0)) + coeff
    return MultiPoly(p.nvars, out)


def interpolate_homogeneous(samples, degree, nvars):
    """Unique homogeneous polynomial of the given degree through the samples.

    samples: iterable of (point, value) with rational entries.  Raises
    RankDeficient when the sample points do not determine the
    coefficients and Inconsistent when no homogeneous polynomial of this
    degree fits (the sampled function is something else).
    """
    monos = monomial_exponents(nvars, degree)
    rows = []
    rhs = []
    for point, value in samples:
        point = ratvec(point)
        if len(point) != nvars:
            raise VariableCountMismatch("sample point has wrong length")
        row = []
        for e in monos:
            v = Fraction(1)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            row.append(v)
        rows.append(row)
        rhs.append(Fraction(value))
    if len(rows) < len(monos):
        raise RankDeficient(f"{len(rows)} samples for {len(monos)} coefficients")
    sol, nullity = solve_general(rows, rhs)
    if sol is None:
        raise Inconsistent("samples do not lie on a homogeneous polynomial of this degree")
    if nullity:
        raise RankDeficient("sample points are in special position; add samples")
    return MultiPoly(nvars, dict(zip(monos, sol)))


# ---------------------------------------------------------------------------
# Gale dual pairs


@dataclass(frozen=True)
class GaleDualPair:
    """An exact pair (A, B): B's columns are a saturated basis of ker_Z(A).

    Constructing the pair re-verifies exactness of
    0 -> Z^(n-d) -> Z^n -> Z^d -> 0, so holding a pair is the
    certificate.
    """

    A: IntMatrix
    B: IntMatrix

    def __post_init__(self):
        A, B = self.A, self.B
        d, n = A.rows, A.cols
        if B.rows != n or B.cols != n - d:
            raise ValueError(f"B must be {n}x{n - d}, got {B.rows}x{B.cols}")
        if A.rank() < d:
            raise NotFullRank("A must have full row rank")
        g = gcd_maximal_minors(A)
        if g != 1:
            raise NonPrimitive(f"gcd of maximal minors of A is {g}")
        if not A.mul(B).is_zero():
            raise ValueError("A*B is not zero")
        if n - d > 0:
            if B.rank() < n - d:
                raise ValueError("B does not have full column rank")
            gB = gcd_maximal_minors(B)
            if gB != 1:
                raise NonPrimitive(
                    f"columns of B span an index-{gB} sublattice of ker_Z(A); kernel not saturated"
                )

    @property
    def d(self):
        return self.A.rows

    @property
    def n(self):
        return self.A.cols

    @property
    def corank(self):
        return self.n - self.d

    def b_rows(self):
        """The Gale-dual configuration: one vector per ground element."""
        return [self.B.row(i) for i in range(self.n)]

    def has_loop(self):
        """A loop is a zero Gale-dual vector b_i."""
        return any(all(x == 0 for x in r) for r in self.B)

    def coloop_indices(self):
        """Coloops of the Gale-dual matroid are the zero columns of A."""
        return [j for j in range(self.n) if all(x == 0 for x in self.A.column(j))]

    def lawrence(self):
        """The Lawrence pair (A^pm, Lambda(B)^T)."""
        from .fans import lawrence_pair

        return lawrence_pair(self)


def gale_pair(A):
    """Canonical Gale dual pair for A (B in column Hermite form)."""
    return GaleDualPair(A, kernel_lattice_basis(A))


# ---------------------------------------------------------------------------
# matrix text format: first line "d n", then d rows of n integers


def parse_matrix_text(text):
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx >= len(lines):
        raise InputFormatError("empty matrix file", line=1)
    header = lines[idx].split()
    if len(header) != 2:
        raise InputFormatError("header must be 'd n'", line=idx + 1)
    try:
        d, n = int(header[0]), int(header[1])
    except ValueError:
        raise InputFormatError("header entries must be integers", line=idx + 1) from None
    if d < 0 or n < 0:
        raise InputFormatError("matrix dimensions must be nonnegative", line=idx + 1)
    rows = []
    row_line = idx + 1
    for r in range(d):
        while row_line < len(lines) and (
            not lines[row_line].strip() or lines[row_line].lstrip().startswith("#")
        ):
            row_line += 1
        if row_line >= len(lines):
            raise InputFormatError(f"expected {d} rows, found {r}", line=len(lines))
        parts = lines[row_line].split()
        if len(parts) != n:
            raise InputFormatError(
                f"row {r + 1} has {len(parts)} entries, expected {n}", line=row_line + 1
            )
        row = []
        for cidx, p in enumerate(parts):
            try:
                row.append(int(p))
            except ValueError:
                raise InputFormatError(
                    f"entry {p!r} is not an integer", line=row_line + 1, column=cidx + 1
                ) from None
        rows.append(row)
        row_line += 1
    return IntMatrix(rows)


def format_matrix_text(M):
    out = [f"{M.rows} {M.cols}"]
    for r in M:
        out.append(" ".join(str(x) for x in r))
    return "\n".join(out) + "\n"
