"""Linear matroids of rational vector configurations.

Ground-set elements are the columns of an integer matrix.  Bases,
circuits and cocircuits are enumerated exhaustively with rank pruning;
at desk scale (n <= ~14) certified exactness beats cleverness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import IntMatrix, MultiPoly, rank_int


@dataclass(frozen=True)
class HVector:
    """h-vector of an independence complex; entries are nonnegative."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if any(x < 0 for x in self.entries):
            raise ValueError(f"negative h-vector entry in {self.entries}")

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def total(self):
        return sum(self.entries)


class LinearMatroid:
    """Matroid of the columns of an integer matrix."""

    def __init__(self, matrix: IntMatrix):
        self.matrix = matrix
        self.ground_size = matrix.cols
        self.rank = matrix.rank()
        self._bases = None
        self._circuits = None
        self._cocircuits = None
        self._fvector = None

    # -- rank oracle

    def subset_rank(self, subset):
        cols = sorted(subset)
        if not cols:
            return 0
        return rank_int([[self.matrix.entry(i, j) for j in cols] for i in range(self.matrix.rows)])

    def is_independent(self, subset):
        return self.subset_rank(subset) == len(tuple(subset))

    # -- bases

    def bases(self):
        """All r-subsets of columns spanning rank r, in sorted order."""
        if self._bases is None:
            r = self.rank
            out = []
            for cand in itertools.combinations(range(self.ground_size), r):
                if self.subset_rank(cand) == r:
                    out.append(cand)
            self._bases = tuple(out)
        return self._bases

    def loops(self):
        return tuple(j for j in range(self.ground_size) if self.subset_rank((j,)) == 0)

    def coloops(self):
        """Elements contained in every basis."""
        full = self.rank
        return tuple(
            j
            for j in range(self.ground_size)
            if self.subset_rank([k for k in range(self.ground_size) if k != j]) < full
        )

    # -- circuits

    def circuits(self):
        """Inclusion-minimal dependent sets, each sorted, in sorted order.

        Every circuit is the fundamental circuit of some element with
        respect to some basis, so it suffices to scan those.
        """
        if self._circuits is None:
            found = set()
            for loop in self.loops():
                found.add((loop,))
            for basis in self.bases():
                bset = set(basis)
                for e in range(self.ground_size):
                    if e in bset or self.subset_rank((e,)) == 0:
                        continue
                    circ = self._fundamental_circuit(basis, e)
                    found.add(circ)
            self._circuits = tuple(sorted(found))
        return self._circuits

    def _fundamental_circuit(self, basis, e):
        # minimal dependent subset of basis + {e}; found by dropping
        # basis elements that keep e dependent on the rest
        support = list(basis)
        for x in list(support):
            trial = [y for y in support if y != x]
            if self.subset_rank(trial + [e]) == self.subset_rank(trial):
                support = trial
        return tuple(sorted(support + [e]))

    def cocircuits(self):
        """Minimal sets meeting every basis (circuits of the dual matroid)."""
        if self._cocircuits is None:
            dual = _DualView(self)
            found = set()
            for basis in self.bases():
                co_basis = tuple(x for x in range(self.ground_size) if x not in basis)
                bset = set(co_basis)
                for e in range(self.ground_size):
                    if e in bset or dual.subset_rank((e,)) == 0:
                        continue
                    circ = _fundamental_circuit_generic(dual, co_basis, e)
                    found.add(circ)
            for j in self.coloops():  # dual loops are singleton cocircuits
                found.add((j,))
            self._cocircuits = tuple(sorted(found))
        return self._cocircuits

    # -- face counts

    def f_vector(self):
        """Independent-set counts by cardinality, (f_0, ..., f_r) with f_0 = 1."""
        if self._fvector is None:
            counts = [0] * (self.rank + 1)
            counts[0] = 1

            def extend(prefix, start, size):
                for j in range(start, self.ground_size):
                    cand = prefix + [j]
                    if self.subset_rank(cand) == size + 1:
                        counts[size + 1] += 1
                        if size + 1 < self.rank:
                            extend(cand, j + 1, size + 1)

            extend([], 0, 0)
            self._fvector = tuple(counts)
        return self._fvector

    def h_vector(self):
        """Transform sum_i f_i (x-1)^(r-i) = sum_i h_i x^(r-i)."""
        r = self.rank
        f = self.f_vector()
        coeffs = [0] * (r + 1)  # coefficient of x^k
        for i, fi in enumerate(f):
            # fi * (x-1)^(r-i)
            m = r - i
            for k in range(m + 1):
                coeffs[k] += fi * _binom(m, k) * ((-1) ** (m - k))
        h = [coeffs[r - i] for i in range(r + 1)]
        hv = HVector(tuple(h))
        assert hv.total() == len(self.bases()), "sum of h-vector must count bases"
        return hv

    def matroid_ideal_generators(self):
        """One square-free monomial (as a sorted index tuple) per circuit."""
        return self.circuits()

    def reliability_h_polynomial(self):
        """sum_i h_i x^i in one variable; value at 1 counts bases."""
        h = self.h_vector()
        return MultiPoly(1, {(i,): Fraction(c) for i, c in enumerate(h) if c})

    def delete(self, elements):
        """Matroid on the remaining columns (order preserved)."""
        keep = [j for j in range(self.ground_size) if j not in set(elements)]
        return LinearMatroid(self.matrix.submatrix_columns(keep))


class _DualView:
    """Rank oracle of the dual matroid: r*(S) = |S| + r(E-S) - r(E)."""

    def __init__(self, matroid):
        self.m = matroid
        self.ground_size = matroid.ground_size
        self.rank = matroid.ground_size - matroid.rank

    def subset_rank(self, subset):
        s = set(subset)
        rest = [j for j in range(self.ground_size) if j not in s]
        return len(s) + self.m.subset_rank(rest) - self.m.rank


def _fundamental_circuit_generic(oracle, basis, e):
    support = list(basis)
    for x in list(support):
        trial = [y for y in support if y != x]
        if oracle.subset_rank(trial + [e]) == oracle.subset_rank(trial):
            support = trial
    return tuple(sorted(support + [e]))


def _binom(n, k):
    import math

    return math.comb(n, k)


def gale_dual_matroid(pair):
    """The matroid of the Gale-dual configuration (rows of B)."""
    return LinearMatroid(pair.B.transpose())


def configuration_matroid(pair):
    """The matroid of the columns of A."""
    return LinearMatroid(pair.A)
