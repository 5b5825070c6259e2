"""Triangulations from generic degrees, Lawrence liftings, and chambers.

A triangulation is stored by its maximal cones, as index subsets of the
ground configuration (the rows of the Gale-dual matrix).  Chambers of
the secondary arrangement are enumerated by incremental hyperplane
insertion with exact interior witnesses.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import NonGenericTheta, VerificationFailure
from .exact import (
    GaleDualPair,
    IntMatrix,
    clear_denominators,
    det_bareiss,
    rat_rank,
    ratvec,
    solve_square,
)
from .polyhedra import PolyhedronSlice, is_generic


# ---------------------------------------------------------------------------
# Lawrence construction


def lawrence_configuration(A: IntMatrix) -> IntMatrix:
    """The d x 2n matrix [A, -A]."""
    return A.hstack(A.neg())


def lawrence_lifting(pair: GaleDualPair) -> IntMatrix:
    """The (2n-d) x 2n Gale dual of [A, -A]: block matrix (I I; 0 B^T)."""
    n, m = pair.n, pair.corank
    rows = []
    for i in range(n):
        rows.append([1 if j == i or j == n + i else 0 for j in range(2 * n)])
    Bt = pair.B.transpose()
    for r in range(m):
        rows.append([0] * n + list(Bt.row(r)))
    return IntMatrix(rows)


def lawrence_pair(pair: GaleDualPair) -> GaleDualPair:
    """Gale dual pair of the Lawrence configuration; validates exactness."""
    Apm = lawrence_configuration(pair.A)
    Lam = lawrence_lifting(pair)
    return GaleDualPair(Apm, Lam.transpose())


# ---------------------------------------------------------------------------
# triangulations


@dataclass(frozen=True)
class Triangulation:
    """Simplicial fan on the ground configuration, by maximal cones."""

    ground: IntMatrix  # rows are the ray generators
    cones: tuple  # sorted tuple of sorted index tuples

    @property
    def dim(self):
        return self.ground.cols

    def ray_rows(self, cone):
        return [list(self.ground.row(i)) for i in cone]

    def check_simplicial(self):
        for cone in self.cones:
            if len(cone) != self.dim:
                raise VerificationFailure(f"cone {cone} does not have {self.dim} rays")
            if det_bareiss(self.ray_rows(cone)) == 0:
                raise VerificationFailure(f"cone {cone} is not simplicial (dependent rays)")
        return True

    def cone_coordinates(self, cone, point):
        mat = [[self.ground.entry(i, j) for i in cone] for j in range(self.dim)]
        sol = solve_square(mat, point)
        return None if sol is None else list(sol)

    def is_unimodular(self):
        return all(abs(det_bareiss(self.ray_rows(c))) == 1 for c in self.cones)

    def check_cover(self, samples=24, seed=7):
        """Exact cover-and-properness check on random generic cross-sections.

        Draws segments between interior points of pos(ground); on each,
        every maximal cone cuts out an exact parameter interval, and the
        intervals must tile [0,1] with disjoint interiors.
        """
        rng = random.Random(seed)
        rows = [list(self.ground.row(i)) for i in range(self.ground.rows)]

        def interior_point():
            coeffs = [Fraction(rng.randint(1, 17)) for _ in rows]
            return [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(self.dim)]

        for _ in range(samples):
            p = interior_point()
            q = interior_point()
            if p == q:
                continue
            intervals = []
            for cone in self.cones:
                lam_p = self.cone_coordinates(cone, p)
                lam_q = self.cone_coordinates(cone, q)
                # lam(t) = (1-t) lam_p + t lam_q >= 0 componentwise
                lo, hi = Fraction(0), Fraction(1)
                for a, b in zip(lam_p, lam_q):
                    # a + t(b - a) >= 0
                    if b == a:
                        if a < 0:
                            lo, hi = Fraction(1), Fraction(0)
                            break
                    else:
                        t0 = Fraction(-a, b - a)
                        if b - a > 0:
                            lo = max(lo, t0)
                        else:
                            hi = min(hi, t0)
                if lo < hi:
                    intervals.append((lo, hi))
            intervals.sort()
            total = sum(h - l for l, h in intervals)
            if total != 1:
                raise VerificationFailure(
                    f"triangulation does not cover a cross-section: measure {total} != 1"
                )
            for (l1, h1), (l2, h2) in zip(intervals, intervals[1:]):
                if l2 < h1:
                    raise VerificationFailure(
                        f"maximal cones overlap on a cross-section at parameters ({l2}, {h1})"
                    )
        return True


def triangulation_from_theta(pair: GaleDualPair, theta) -> Triangulation:
    """Regular triangulation of the Gale-dual configuration given by theta.

    Maximal cones are the complements of the feasible bases of P_theta,
    equivalently the normal fan of Q_psi.
    """
    A = pair.A
    if not is_generic(theta, A):
        raise NonGenericTheta(f"theta {tuple(theta)} lies on a spanned hyperplane")
    slc = PolyhedronSlice(A, theta)
    n = A.cols
    cones = sorted(tuple(sorted(set(range(n)) - set(b))) for b in slc.feasible_bases())
    tri = Triangulation(pair.B, tuple(cones))
    tri.check_simplicial()
    return tri


def lawrence_triangulation(pair: GaleDualPair, theta) -> Triangulation:
    """Triangulation of the Lawrence lifting given by theta."""
    return triangulation_from_theta(lawrence_pair(pair), theta)


def stanley_reisner_ideal(tri: Triangulation):
    """Minimal non-faces of the simplicial complex of the triangulation.

    Returns sorted index tuples; the complex's faces are the subsets of
    the maximal cones.
    """
    ground = range(tri.ground.rows)
    cones = [frozenset(c) for c in tri.cones]
    maxdim = max((len(c) for c in cones), default=0)
    nonfaces = []
    faces = [frozenset()]
    for size in range(1, maxdim + 2):
        candidates = set()
        for f in faces:
            for e in ground:
                if e not in f:
                    candidates.add(f | {e})
        next_faces = []
        for cand in sorted(candidates, key=sorted):
            if any(nf <= cand for nf in nonfaces):
                continue
            if any(cand <= c for c in cones):
                next_faces.append(cand)
            else:
                nonfaces.append(cand)
        faces = next_faces
    return sorted(tuple(sorted(nf)) for nf in nonfaces)


def irrelevant_ideal(tri: Triangulation):
    """One square-free monomial per maximal cone, on the complement set."""
    ground = set(range(tri.ground.rows))
    gens = {tuple(sorted(ground - set(c))) for c in tri.cones}
    return sorted(gens)


# ---------------------------------------------------------------------------
# chambers


@dataclass(frozen=True)
class Chamber:
    representative: tuple  # exact rational interior point
    sign_vector: tuple  # one sign per arrangement hyperplane
    fingerprint: frozenset  # feasible signed bases at the representative


@dataclass(frozen=True)
class ChamberComplexSample:
    hyperplanes: tuple  # primitive normals of the spanned hyperplanes
    chambers: tuple
    restricted: bool

    @property
    def count(self):
        return len(self.chambers)


def spanned_hyperplanes(config: IntMatrix):
    """Primitive normals of all hyperplanes spanned by rank d-1 subsets
    of the columns, deduplicated and sorted."""
    d, n = config.rows, config.cols
    # dedupe columns up to sign
    seen = set()
    cols = []
    for j in range(n):
        c = config.column(j)
        if all(x == 0 for x in c):
            continue
        key = clear_denominators(c)
        if key[next(i for i, x in enumerate(key) if x)] < 0:
            key = tuple(-x for x in key)
        if key not in seen:
            seen.add(key)
            cols.append(list(key))
    normals = set()
    for subset in itertools.combinations(cols, d - 1):
        rows = [list(map(Fraction, c)) for c in subset]
        if rat_rank(rows) != d - 1:
            continue
        normal = _hyperplane_normal(rows, d)
        if normal is not None:
            normals.add(normal)
    return sorted(normals)


def _hyperplane_normal(rows, d):
    """Primitive normal of the span of d-1 independent vectors in R^d."""
    from .exact import solve_general

    if d == 1:
        return (1,)  # span of the empty set is the origin hyperplane
    _, null = solve_general(rows, [0] * len(rows))
    if len(null) != 1:
        return None
    normal = clear_denominators(null[0])
    lead = next(i for i, x in enumerate(normal) if x)
    if normal[lead] < 0:
        normal = tuple(-x for x in normal)
    return normal


def enumerate_regions(normals, dim):
    """Open regions of the central arrangement of the given hyperplanes.

    Returns a list of (sign_vector, witness) in deterministic order, by
    incremental insertion with exact strictly-interior witnesses.
    """
    regions = [((), tuple(Fraction(0) for _ in range(dim)))]
    inserted = []
    for nv in normals:
        inserted.append(nv)
        new = []
        for signs, w in regions:
            val = sum(Fraction(a) * b for a, b in zip(nv, w))
            for side in (1, -1):
                if val != 0 and (1 if val > 0 else -1) == side:
                    new.append((signs + (side,), w))
                    continue
                cand = lp.strict_witness(
                    inserted, [0] * len(inserted), list(signs) + [side], dim
                )
                if cand is not None:
                    new.append((signs + (side,), cand))
        regions = new
    return sorted(regions)


def feasible_basis_fingerprint(config: IntMatrix, theta):
    """Signed feasible-basis set of the slice at theta (chamber invariant)."""
    d, n = config.rows, config.cols
    theta = ratvec(theta)
    out = set()
    for cand in itertools.combinations(range(n), d):
        sub = [[config.entry(i, j) for j in cand] for i in range(d)]
        if det_bareiss([r[:] for r in sub]) == 0:
            continue
        sol = solve_square(sub, theta)
        if all(x >= 0 for x in sol):
            out.add(cand)
    return frozenset(out)


def enumerate_chambers(config: IntMatrix, restrict_to_pos: bool) -> ChamberComplexSample:
    """Open chambers of the secondary arrangement of the configuration.

    Chambers are the full-dimensional regions of the central arrangement
    of hyperplanes spanned by rank d-1 column subsets, optionally
    restricted to pos(config).  Distinct chambers are asserted to carry
    distinct feasible-basis fingerprints.
    """
    d = config.rows
    normals = spanned_hyperplanes(config)
    regions = enumerate_regions(normals, d)
    chambers = []
    for signs, w in regions:
        if restrict_to_pos and not _in_pos(config, w):
            continue
        fp = feasible_basis_fingerprint(config, w)
        chambers.append(Chamber(tuple(w), signs, fp))
    fps = [c.fingerprint for c in chambers]
    if len(set(fps)) != len(fps):
        raise VerificationFailure(
            "two distinct chambers share a feasible-basis fingerprint; "
            "the chamber enumeration is inconsistent"
        )
    return ChamberComplexSample(tuple(normals), tuple(chambers), restrict_to_pos)


def _in_pos(config: IntMatrix, point):
    rows = [[config.entry(i, j) for j in range(config.cols)] for i in range(config.rows)]
    ok, _ = lp.feasible_nonneg(rows, list(point))
    return ok


def same_chamber(config: IntMatrix, theta1, theta2) -> bool:
    """Identical feasible-basis sets (hence identical triangulations)."""
    for theta in (theta1, theta2):
        if not is_generic(theta, config):
            raise NonGenericTheta(f"theta {tuple(theta)} is not generic")
    return feasible_basis_fingerprint(config, theta1) == feasible_basis_fingerprint(
        config, theta2
    )


# ---------------------------------------------------------------------------
# cross-checks used by the verification suites


def chamber_triangulation_consistency(pair: GaleDualPair, sample: ChamberComplexSample):
    """On every enumerated chamber the triangulation is constant and
    chambers with different fingerprints give different triangulations."""
    tris = {}
    for ch in sample.chambers:
        tri = triangulation_from_theta(pair, ch.representative)
        tris[ch.fingerprint] = tri.cones
    if len(set(tris.values())) != len(tris):
        raise VerificationFailure("distinct chambers produced identical triangulations")
    return True
