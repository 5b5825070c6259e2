"""Exact polyhedral engine.

Covers the polyhedron P_theta = {u >= 0 : Au = theta}, the affine
arrangement H(B, psi), their bounded complexes, lattice points, region
volumes, the Betti alternating-sum formula, star-collapsibility, and
degree-zero Hilbert bases.  Everything is exact; boundedness questions
are settled by rational LPs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import (
    DegeneratePsi,
    InfeasibleSlice,
    NegativeBetti,
    NonGenericDirection,
    NonGenericTheta,
    UnboundedRegion,
    VerificationFailure,
)
from .exact import (
    IntMatrix,
    clear_denominators,
    det_bareiss,
    rat_rank,
    ratvec,
    solve_square,
)

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# f-vectors and Betti numbers


@dataclass(frozen=True)
class FVector:
    """Bounded-face counts by dimension, f_0 .. f_k."""

    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def euler(self):
        return sum((-1) ** i * c for i, c in enumerate(self.counts))


def betti_from_bounded_faces(f):
    """b_k = sum_{i>=k} (-1)^(i-k) C(i,k) f_i.  Raises NegativeBetti."""
    counts = list(f)
    out = []
    for k in range(len(counts)):
        b = sum((-1) ** (i - k) * math.comb(i, k) * counts[i] for i in range(k, len(counts)))
        if b < 0:
            raise NegativeBetti(f"b_{k} = {b} < 0; the face counts {counts} are inconsistent")
        out.append(b)
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# genericity


def is_generic(theta, A):
    """theta avoids every hyperplane spanned by d-1 independent columns."""
    theta = ratvec(theta)
    d, n = A.rows, A.cols
    if len(theta) != d:
        raise ValueError("theta has wrong length")
    if d == 0:
        return True
    # spans are insensitive to column signs and repeats
    seen = set()
    cols = []
    for j in range(n):
        c = A.column(j)
        if all(x == 0 for x in c):
            continue
        key = clear_denominators(c)
        if key[next(i for i, x in enumerate(key) if x)] < 0:
            key = tuple(-x for x in key)
        if key not in seen:
            seen.add(key)
            cols.append(c)
    for subset in itertools.combinations(cols, d - 1):
        rows = [list(map(Fraction, c)) for c in subset]
        if rat_rank(rows) < d - 1:
            continue
        if rat_rank(rows + [list(theta)]) == d - 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the slice P_theta


@dataclass(frozen=True)
class Face:
    """A face of a bounded complex: tight coordinate set, vertices, dimension."""

    tight: frozenset
    vertex_ids: tuple
    dim: int

    def key(self):
        return (self.dim, tuple(sorted(self.tight)))


@dataclass
class BoundedComplex:
    """Bounded faces of a polyhedron, with exact vertex coordinates."""

    vertex_points: list
    faces: list
    fvector: FVector

    def maximal_faces(self):
        # maximal face = tight set minimal under inclusion
        return [f for f in self.faces if not any(g.tight < f.tight for g in self.faces)]

    def is_pure(self, dim):
        return all(f.dim == dim for f in self.maximal_faces())

    def contains(self, small, big):
        return big.tight <= small.tight


class PolyhedronSlice:
    """P_theta = {u >= 0 : A u = theta} with exact vertex and face data."""

    def __init__(self, A: IntMatrix, theta, lawrence_base: IntMatrix | None = None, pair=None):
        self.A = A
        self.theta = ratvec(theta)
        if len(self.theta) != A.rows:
            raise ValueError("theta length must match row count of A")
        self.lawrence_base = lawrence_base
        self.pair = pair
        self._vertices = None
        self._complex = None

    # -- vertices

    def vertices(self):
        """All (basis, point) pairs: column bases C with A_C^{-1} theta >= 0.

        Complete and duplicate-free as a point set; for non-generic theta
        one point may arise from several bases and a representative basis
        is kept per point.
        """
        if self._vertices is None:
            if self.lawrence_base is not None:
                items = _lawrence_feasible_bases(self.lawrence_base, self.theta)
            else:
                items = _feasible_bases(self.A, self.theta)
            bypoint = {}
            for basis, point in items:
                bypoint.setdefault(point, basis)
            self._vertices = sorted((b, p) for p, b in bypoint.items())
            if not self._vertices and not _slice_feasible(self.A, self.theta):
                raise InfeasibleSlice("P_theta is empty: no feasible basis and LP infeasible")
            if not self._vertices:
                raise InfeasibleSlice("P_theta has no vertex")
        return self._vertices

    def feasible_bases(self):
        if self.lawrence_base is not None:
            return sorted({b for b, _ in _lawrence_feasible_bases(self.lawrence_base, self.theta)})
        return sorted({b for b, _ in _feasible_bases(self.A, self.theta)})

    def is_simple(self):
        d = self.A.rows
        return all(sum(1 for x in p if x != 0) == d for _, p in self.vertices())

    def is_integral_degree(self):
        return all(x.denominator == 1 for _, p in self.vertices() for x in p)

    def is_smooth_degree(self):
        for basis, _ in self.vertices():
            if abs(self._basis_det(basis)) != 1:
                return False
        # also inspect degenerate feasible bases not attached to a kept vertex
        for basis in self.feasible_bases():
            if abs(self._basis_det(basis)) != 1:
                return False
        return True

    def _basis_det(self, basis):
        if self.lawrence_base is not None:
            n0 = self.lawrence_base.cols
            cols = [j % n0 for j in basis]
            d = det_bareiss(
                [[self.lawrence_base.entry(i, j) for j in cols] for i in range(self.A.rows)]
            )
            return d
        return det_bareiss([[self.A.entry(i, j) for j in basis] for i in range(self.A.rows)])

    # -- bounded faces

    def bounded_complex(self):
        """All faces of P_theta with trivial recession cone."""
        if self._complex is None:
            verts = self.vertices()
            n = self.A.cols
            points = [p for _, p in verts]
            tights = [frozenset(i for i in range(n) if p[i] == 0) for p in points]
            family = set(tights)
            # close under pairwise intersection
            frontier = set(family)
            while frontier:
                new = set()
                for t1 in frontier:
                    for t2 in family:
                        t = t1 & t2
                        if t not in family and t not in new:
                            new.add(t)
                family |= new
                frontier = new
            faces = []
            for tight in sorted(family, key=lambda t: (len(t), tuple(sorted(t)))):
                if not self._face_is_bounded(tight):
                    continue
                ids = tuple(i for i, tv in enumerate(tights) if tv >= tight)
                dim = _affine_rank([points[i] for i in ids])
                faces.append(Face(tight, ids, dim))
            counts = {}
            for f in faces:
                counts[f.dim] = counts.get(f.dim, 0) + 1
            fc = FVector(tuple(counts.get(i, 0) for i in range(max(counts) + 1)))
            if fc.euler() != 1:
                raise VerificationFailure(
                    f"bounded complex has Euler characteristic {fc.euler()}, not 1 "
                    "(star-collapsibility theorem violated; enumeration bug)"
                )
            self._complex = BoundedComplex(points, faces, fc)
        return self._complex

    def _face_is_bounded(self, tight):
        """Trivial recession cone {x >= 0 : Ax = 0, x_tight = 0}?"""
        free = [j for j in range(self.A.cols) if j not in tight]
        if not free:
            return True
        prog = lp.LinearProgram(len(free))
        for i in range(self.A.rows):
            prog.add([self.A.entry(i, j) for j in free], "==", 0)
        for k in range(len(free)):
            row = [0] * len(free)
            row[k] = 1
            prog.add(row, "<=", 1)
        status, value, _ = prog.maximize([1] * len(free), nonneg=range(len(free)))
        assert status == lp.OPTIMAL
        return value == 0


def _feasible_bases(A, theta):
    d, n = A.rows, A.cols
    out = []
    for cand in itertools.combinations(range(n), d):
        sub = [[A.entry(i, j) for j in cand] for i in range(d)]
        if det_bareiss([row[:] for row in sub]) == 0:
            continue
        sol = solve_square(sub, theta)
        if sol is None or any(x < 0 for x in sol):
            continue
        point = [_ZERO] * n
        for j, x in zip(cand, sol):
            point[j] = x
        out.append((cand, tuple(point)))
    return out


def _lawrence_feasible_bases(A0, theta):
    """Feasible bases of [A, -A]: one signed copy per column basis of A.

    Column j of A contributes index j (positive copy) or n+j (negative
    copy); zero coefficients branch over both signs.
    """
    d, n = A0.rows, A0.cols
    out = []
    for cand in itertools.combinations(range(n), d):
        sub = [[A0.entry(i, j) for j in cand] for i in range(d)]
        if det_bareiss([row[:] for row in sub]) == 0:
            continue
        sol = solve_square(sub, theta)
        point = [_ZERO] * (2 * n)
        choices = []
        for j, x in zip(cand, sol):
            if x > 0:
                point[j] = x
                choices.append((j,))
            elif x < 0:
                point[n + j] = -x
                choices.append((n + j,))
            else:
                choices.append((j, n + j))
        for pick in itertools.product(*choices):
            out.append((tuple(sorted(pick)), tuple(point)))
    return out


def _slice_feasible(A, theta):
    ok, _ = lp.feasible_nonneg([list(r) for r in A], list(theta))
    return ok


def _affine_rank(points):
    if not points:
        return -1
    p0 = points[0]
    rows = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    if not rows:
        return 0
    return rat_rank(rows)


# ---------------------------------------------------------------------------
# psi from theta


def psi_from_theta(pair, theta):
    """Canonical integer psi with A psi = -theta.

    Tries the lexicographically first column basis with zero padding;
    when that solution is not integral (non-unimodular basis) falls back
    to a Hermite-form integer solve.
    """
    A = pair.A
    fr = [Fraction(x) for x in theta]
    if any(f.denominator != 1 for f in fr):
        raise ValueError("theta must be an integer vector")
    target = [-int(f) for f in fr]
    d, n = A.rows, A.cols
    for cand in itertools.combinations(range(n), d):
        sub = [[A.entry(i, j) for j in cand] for i in range(d)]
        if det_bareiss([row[:] for row in sub]) == 0:
            continue
        sol = solve_square(sub, target)
        if all(x.denominator == 1 for x in sol):
            psi = [0] * n
            for j, x in zip(cand, sol):
                psi[j] = int(x)
            return tuple(psi)
        break
    psi = _integer_solve(A, target)
    if psi is None:
        raise VerificationFailure("A psi = -theta has no integer solution; A is not primitive")
    return psi


def _integer_solve(A, b):
    """Any integer solution of A x = b, or None."""
    d, n = A.rows, A.cols
    work = [list(r) for r in A]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    for i in range(d):
        while True:
            nz = [j for j in range(r, n) if work[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(work[i][j]))
            if jmin != r:
                for row in work:
                    row[r], row[jmin] = row[jmin], row[r]
                for row in U:
                    row[r], row[jmin] = row[jmin], row[r]
            done = True
            for j in range(r + 1, n):
                if work[i][j] != 0:
                    q = work[i][j] // work[i][r]
                    for row in work:
                        row[j] -= q * row[r]
                    for row in U:
                        row[j] -= q * row[r]
                    if work[i][j] != 0:
                        done = False
            if done:
                break
        if r < n and work[i][r] != 0:
            r += 1
    # forward substitution on the lower-triangular-ish left block
    y = [0] * r
    rowpiv = []
    k = 0
    for i in range(d):
        piv = next((j for j in range(r) if work[i][j] != 0 and j >= k), None)
        rowpiv.append(piv)
        if piv is not None:
            k = piv + 1
    for i in range(d):
        acc = b[i] - sum(work[i][j] * y[j] for j in range(r))
        piv = rowpiv[i]
        if piv is None:
            if acc != 0:
                return None
            continue
        if acc % work[i][piv] != 0:
            return None
        y[piv] += acc // work[i][piv]
    x = [sum(U[i][j] * y[j] for j in range(r)) for i in range(n)]
    if list(IntMatrix([list(r_) for r_ in A]).mul_vector(x)) != list(b):
        return None
    return tuple(x)


# ---------------------------------------------------------------------------
# affine arrangements


@dataclass(frozen=True)
class ArrCell:
    """A bounded cell of H(B, psi): sign vector, witness, vertices, dimension."""

    sign: tuple
    witness: tuple
    vertex_ids: tuple
    dim: int

    @property
    def zero_set(self):
        return frozenset(i for i, s in enumerate(self.sign) if s == 0)


def _sign_leq(small, big):
    return all(s == 0 or s == b for s, b in zip(small, big))


class AffineArrangement:
    """The arrangement of hyperplanes b_i . w = psi_i in R^(n-d)."""

    def __init__(self, B: IntMatrix, psi):
        self.B = B
        self.psi = ratvec(psi)
        if len(self.psi) != B.rows:
            raise ValueError("psi length must equal the number of hyperplanes")
        self.n = B.rows
        self.dim = B.cols
        self._vertices = None
        self._bounded = None

    def hyperplane_value(self, i, w):
        return sum(Fraction(self.B.entry(i, k)) * w[k] for k in range(self.dim)) - self.psi[i]

    def sign_vector(self, w):
        out = []
        for i in range(self.n):
            v = self.hyperplane_value(i, w)
            out.append(0 if v == 0 else (1 if v > 0 else -1))
        return tuple(out)

    def vertices(self):
        """Zero-dimensional intersection points, deduplicated and sorted."""
        if self._vertices is None:
            pts = set()
            for cand in itertools.combinations(range(self.n), self.dim):
                rows = [[self.B.entry(i, k) for k in range(self.dim)] for i in cand]
                if det_bareiss([r[:] for r in rows]) == 0:
                    continue
                sol = solve_square(rows, [self.psi[i] for i in cand])
                pts.add(tuple(sol))
            self._vertices = sorted(pts)
        return self._vertices

    def bounded_cells(self):
        """All bounded cells, as the join closure of the vertex covectors.

        Every bounded cell is the convex hull of arrangement vertices, and
        its covector is the join of theirs (witnessed by midpoints), so the
        closure reaches exactly the bounded cells plus possibly some
        unbounded joins, which the recession test removes.
        """
        if self._bounded is None:
            verts = self.vertices()
            cells = {}
            for p in verts:
                cells[self.sign_vector(p)] = p
            frontier = list(cells.items())
            while frontier:
                new = []
                items = list(cells.items())
                for s1, w1 in frontier:
                    for s2, w2 in items:
                        if any(a * b < 0 for a, b in zip(s1, s2)):
                            continue
                        joint = tuple(a if a != 0 else b for a, b in zip(s1, s2))
                        if joint in cells:
                            continue
                        mid = tuple((x + y) / 2 for x, y in zip(w1, w2))
                        cells[joint] = mid
                        new.append((joint, mid))
                frontier = new
            out = []
            vs_signs = [self.sign_vector(p) for p in verts]
            for sign in sorted(cells):
                if not self._cell_is_bounded(sign):
                    continue
                ids = tuple(i for i, s in enumerate(vs_signs) if _sign_leq(s, sign))
                dim = _affine_rank([verts[i] for i in ids])
                zeros = sum(1 for s in sign if s == 0)
                rank_zeros = (
                    rat_rank([[Fraction(x) for x in self.B.row(i)] for i, s in enumerate(sign) if s == 0])
                    if zeros
                    else 0
                )
                if zeros != self.dim - dim or rank_zeros != self.dim - dim:
                    raise DegeneratePsi(
                        f"cell {sign} lies on {zeros} hyperplanes but has dimension {dim}; "
                        "psi is not generic"
                    )
                out.append(ArrCell(sign, cells[sign], ids, dim))
            self._bounded = out
        return self._bounded

    def _cell_is_bounded(self, sign):
        eq_rows = [list(self.B.row(i)) for i, s in enumerate(sign) if s == 0]
        sgn_rows = [list(self.B.row(i)) for i, s in enumerate(sign) if s != 0]
        signs = [s for s in sign if s != 0]
        return lp.recession_is_trivial(eq_rows, sgn_rows, signs, self.dim)

    def fvector(self):
        counts = {}
        for c in self.bounded_cells():
            counts[c.dim] = counts.get(c.dim, 0) + 1
        if not counts:
            return FVector(())
        f = FVector(tuple(counts.get(i, 0) for i in range(max(counts) + 1)))
        if f.euler() != 1:
            raise VerificationFailure(
                f"arrangement bounded complex has Euler characteristic {f.euler()}, not 1"
            )
        return f

    def maximal_bounded_cells(self):
        return [c for c in self.bounded_cells() if c.dim == self.dim]

    def cell_faces(self, cell):
        return [c for c in self.bounded_cells() if _sign_leq(c.sign, cell.sign)]

    def region_volume(self, sign):
        """Lattice-normalized volume of a bounded maximal cell."""
        sign = tuple(sign)
        cell = next((c for c in self.bounded_cells() if c.sign == sign), None)
        if cell is None or cell.dim != self.dim:
            raise UnboundedRegion(
                "sign vector does not name a bounded maximal cell of the arrangement"
            )
        verts = self.vertices()
        total = Fraction(0)
        for simplex in self._triangulate(cell):
            pts = [verts[i] for i in simplex]
            mat = [[pts[k][j] - pts[0][j] for j in range(self.dim)] for k in range(1, len(pts))]
            den = 1
            for row in mat:
                for x in row:
                    den = den * x.denominator // math.gcd(den, x.denominator)
            imat = [[int(x * den) for x in row] for row in mat]
            total += Fraction(abs(det_bareiss(imat)), den**self.dim)
        return total / math.factorial(self.dim)

    def _triangulate(self, cell):
        if len(cell.vertex_ids) == cell.dim + 1:
            return [cell.vertex_ids]
        v0 = cell.vertex_ids[0]
        out = []
        for facet in (c for c in self.cell_faces(cell) if c.dim == cell.dim - 1):
            if v0 in facet.vertex_ids:
                continue
            for simplex in self._triangulate(facet):
                out.append(simplex + (v0,))
        return out


def arrangement_bounded_complex(arr: AffineArrangement):
    """Bounded cells and their f-vector."""
    return arr.bounded_cells(), arr.fvector()


def arrangement_from_pair(pair, theta, psi=None):
    if psi is None:
        psi = psi_from_theta(pair, theta)
    else:
        got = pair.A.mul_vector([int(x) for x in psi])
        want = [-Fraction(t) for t in theta]
        if [Fraction(g) for g in got] != want:
            raise ValueError("supplied psi does not satisfy A psi = -theta")
    return AffineArrangement(pair.B, psi), psi


# ---------------------------------------------------------------------------
# poset isomorphism between H^bd(B, psi) and the Lawrence bounded complex


def lawrence_slice(pair, theta):
    """The slice {(u,v) >= 0 : Au - Av = theta} of the Lawrence configuration.

    The attached pair is the Lawrence pair, so the slice's own Gale-dual
    space (dimension 2n - d) is available for sweep directions.
    """
    lpair = pair.lawrence()
    return PolyhedronSlice(lpair.A, theta, lawrence_base=pair.A, pair=lpair)


def cell_tight_set(sign, n):
    """Tight coordinates of the Lawrence face matching an arrangement cell."""
    tight = set()
    for i, s in enumerate(sign):
        if s <= 0:
            tight.add(i)
        if s >= 0:
            tight.add(n + i)
    return frozenset(tight)


def check_bounded_poset_isomorphism(pair, theta, psi=None):
    """Verify H^bd(B,psi) is isomorphic to the bounded complex of the
    Lawrence slice (dimension- and incidence-preserving bijection).

    Returns a report dict; raises VerificationFailure on any mismatch.
    """
    arr, psi = arrangement_from_pair(pair, theta, psi)
    cells = arr.bounded_cells()
    slc = lawrence_slice(pair, theta)
    cplx = slc.bounded_complex()
    n = pair.n
    by_tight = {f.tight: f for f in cplx.faces}
    if len(cells) != len(cplx.faces):
        raise VerificationFailure(
            f"bounded cell count {len(cells)} != bounded face count {len(cplx.faces)}"
        )
    mapping = {}
    for c in cells:
        t = cell_tight_set(c.sign, n)
        f = by_tight.get(t)
        if f is None:
            raise VerificationFailure(f"cell {c.sign} has no matching Lawrence face")
        if f.dim != c.dim:
            raise VerificationFailure(
                f"cell {c.sign}: dimension {c.dim} maps to face of dimension {f.dim}"
            )
        mapping[c.sign] = f
    for c1 in cells:
        for c2 in cells:
            if _sign_leq(c1.sign, c2.sign) != (mapping[c2.sign].tight <= mapping[c1.sign].tight):
                raise VerificationFailure("incidence not preserved by the Lawrence matching")
    return {
        "cells": len(cells),
        "fvector_arrangement": list(arr.fvector()),
        "fvector_lawrence": list(cplx.fvector),
        "psi": list(psi),
        "isomorphic": True,
    }


# ---------------------------------------------------------------------------
# lattice points


def lattice_points_bounded(slice_or_complex):
    """All integer points on bounded faces of P_theta, sorted.

    Accepts a PolyhedronSlice.  Enumerates per maximal bounded face by
    depth-first search over coordinates with interval propagation
    against the equations A u = theta.
    """
    slc = slice_or_complex
    cplx = slc.bounded_complex()
    Am = slc.A
    theta = slc.theta
    pts = set()
    for face in cplx.maximal_faces():
        verts = [cplx.vertex_points[i] for i in face.vertex_ids]
        lo = [min(v[j] for v in verts) for j in range(Am.cols)]
        hi = [max(v[j] for v in verts) for j in range(Am.cols)]
        lo = [max(0, math.ceil(x)) for x in lo]
        hi = [math.floor(x) for x in hi]
        if any(a > b for a, b in zip(lo, hi)):
            continue
        for p in _integer_points_box_eq(Am, theta, lo, hi):
            pts.add(p)
    return sorted(pts)


def _integer_points_box_eq(A, theta, lo, hi):
    d, n = A.rows, A.cols
    rhs = [Fraction(t) for t in theta]
    if any(r.denominator != 1 for r in rhs):
        return
    rhs = [int(r) for r in rhs]
    rows = [list(A.row(i)) for i in range(d)]

    # residual bounds of each equation over the suffix of unassigned coords
    def rec(idx, acc):
        if idx == n:
            if all(a == b for a, b in zip(acc, rhs)):
                yield ()
            return
        for i in range(d):
            lo_rest = acc[i]
            hi_rest = acc[i]
            for j in range(idx, n):
                c = rows[i][j]
                if c > 0:
                    lo_rest += c * lo[j]
                    hi_rest += c * hi[j]
                elif c < 0:
                    lo_rest += c * hi[j]
                    hi_rest += c * lo[j]
            if rhs[i] < lo_rest or rhs[i] > hi_rest:
                return
        for val in range(lo[idx], hi[idx] + 1):
            acc2 = [acc[i] + rows[i][idx] * val for i in range(d)]
            for tail in rec(idx + 1, acc2):
                yield (val,) + tail

    yield from rec(0, [0] * d)


# ---------------------------------------------------------------------------
# star-collapsibility


def _check_star_collapsible_oriented(face_sets, values):
    """face_sets: list of frozensets of vertex ids; values: id -> Fraction."""
    anchors = {}
    for fs in face_sets:
        anchors[fs] = max(fs, key=lambda v: (values[v], v))
    groups = {}
    for fs in face_sets:
        groups.setdefault(anchors[fs], set()).add(fs)
    for p, group in groups.items():
        top = next((f for f in group if all(g <= f for g in group)), None)
        if top is None:
            return False
        expected = {fs for fs in face_sets if fs <= top and p in fs}
        if group != expected:
            return False
    return True


def star_collapsibility_check(faces, vertex_values):
    """Check the sweep-order property of the bounded complex.

    faces: iterable of vertex-id frozensets (all bounded faces);
    vertex_values: dict vertex id -> Fraction, the sweep functional.
    Values must be pairwise distinct (NonGenericDirection otherwise).

    Returns (ok, orientation) where orientation is +1 if the property
    holds anchoring at functional-maximal vertices, -1 if only the
    reversed sweep works.
    """
    vals = list(vertex_values.values())
    if len(set(vals)) != len(vals):
        raise NonGenericDirection("sweep functional has equal values on two vertices")
    face_sets = [frozenset(f) for f in faces]
    if _check_star_collapsible_oriented(face_sets, vertex_values):
        return True, +1
    neg = {k: -v for k, v in vertex_values.items()}
    if _check_star_collapsible_oriented(face_sets, neg):
        return True, -1
    return False, 0


def slice_sweep_values(slc: PolyhedronSlice, v, B: IntMatrix = None):
    """Sweep values of bounded-complex vertices of P_theta.

    The direction v lives in the Gale-dual space of the slice itself
    (dimension cols(A) - rows(A)); on the Lawrence slice that space has
    dimension 2n - d, where the sweep functional is honestly linear.
    Values are pulled back through the Q_psi chart; the psi translation
    only shifts them by a constant, which the check ignores.
    """
    if B is None:
        if slc.pair is None:
            raise ValueError("slice carries no Gale pair; pass the kernel basis B")
        B = slc.pair.B
    if B.rows != slc.A.cols:
        raise ValueError("kernel basis does not match the slice's column count")
    v = ratvec(v)
    m = B.cols
    if len(v) != m:
        raise ValueError("direction must live in the Gale-dual space of the slice")
    gram = [
        [sum(B.entry(i, a) * B.entry(i, b) for i in range(B.rows)) for b in range(m)]
        for a in range(m)
    ]
    y = solve_square(gram, v)
    vtilde = [sum(Fraction(B.entry(i, a)) * y[a] for a in range(m)) for i in range(B.rows)]
    cplx = slc.bounded_complex()
    return {
        i: sum(c * x for c, x in zip(vtilde, p)) for i, p in enumerate(cplx.vertex_points)
    }


def slice_star_collapsibility(slc: PolyhedronSlice, v, B: IntMatrix = None):
    values = slice_sweep_values(slc, v, B)
    faces = [frozenset(f.vertex_ids) for f in slc.bounded_complex().faces]
    return star_collapsibility_check(faces, values)


def interior_sweep_direction(B: IntMatrix, seed=0):
    """A deterministic pseudo-random interior vector of pos(rows of B)."""
    import random as _random

    rng = _random.Random(seed)
    m = B.cols
    v = [0] * m
    for i in range(B.rows):
        c = rng.randint(1, 13)
        for a in range(m):
            v[a] += c * B.entry(i, a)
    return tuple(v)


# ---------------------------------------------------------------------------
# Hilbert basis of the degree-zero semigroup


def hilbert_basis_deg0(pair):
    """Minimal generators of the semigroup N^n intersect ker_Z(A).

    Extreme rays bound the search box (each Hilbert basis element is a
    [0,1]-combination of the rays of a simplicial subcone); completeness
    of the returned set over the box is verified by decomposition.
    """
    A = pair.A
    d, n = A.rows, A.cols
    rays = _extreme_rays_deg0(A)
    if not rays:
        return []
    bound = [sum(r[j] for r in rays) for j in range(n)]
    points = [
        p
        for p in _integer_points_box_eq(A, (0,) * d, [0] * n, bound)
        if any(x != 0 for x in p)
    ]
    points.sort(key=lambda p: (sum(p), p))
    minimal = []
    for p in points:
        if not any(all(g[j] <= p[j] for j in range(n)) for g in minimal):
            minimal.append(p)
    # completeness: every enumerated semigroup point decomposes over `minimal`
    representable = {(0,) * n}
    dead = set()

    def reduces(p):
        if p in representable:
            return True
        if p in dead:
            return False
        for g in minimal:
            if all(g[j] <= p[j] for j in range(n)):
                rest = tuple(p[j] - g[j] for j in range(n))
                if reduces(rest):
                    representable.add(p)
                    return True
        dead.add(p)
        return False

    for p in points:
        if not reduces(p):
            raise VerificationFailure(
                f"semigroup point {p} is not generated by the computed Hilbert basis"
            )
    return sorted(minimal)


def _extreme_rays_deg0(A):
    """Primitive generators of the extreme rays of {u >= 0 : Au = 0}."""
    d, n = A.rows, A.cols
    stacked = IntMatrix([list(A.row(i)) for i in range(d)] + [[1] * n])
    try:
        slc = PolyhedronSlice(stacked, [0] * d + [1])
        verts = slc.vertices()
    except InfeasibleSlice:
        return []
    rays = set()
    for _, p in verts:
        rays.add(clear_denominators(p))
    return sorted(rays)


def star_collapsibility_with_retry(slc: PolyhedronSlice, seed=0, tries=32):
    """Run the sweep check with deterministic resampling over directions.

    Returns (ok, orientation, direction).  Directions with coincident
    vertex values are skipped; running out of attempts raises
    NonGenericDirection.
    """
    if slc.pair is None:
        raise ValueError("slice carries no Gale pair")
    last = None
    for k in range(tries):
        v = interior_sweep_direction(slc.pair.B, seed + k)
        try:
            ok, orientation = slice_star_collapsibility(slc, v)
            return ok, orientation, v
        except NonGenericDirection as exc:
            last = exc
    raise NonGenericDirection(f"no generic sweep direction found in {tries} attempts: {last}")
