"""Quiver ingestion and the graph-side specializations.

Boundary matrices in the basis {v_0-v_1, ..., v_0-v_d}, fundamental
cycle bases, spanning trees with exact tree coefficients, signed cuts,
and the classification of products of ALE surfaces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ColoopPresent,
    Disconnected,
    InputFormatError,
    NotASpanningTree,
    VerificationFailure,
)
from .exact import (
    GaleDualPair,
    IntMatrix,
    clear_denominators,
    det_bareiss,
    rat_rank,
    solve_square,
)
from .matroid import LinearMatroid
from .polyhedra import is_generic, lattice_points_bounded, lawrence_slice


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph on vertices 0..nv-1; edge order fixes variables."""

    nv: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        for i, j in edges:
            if not (0 <= i < self.nv and 0 <= j < self.nv):
                raise ValueError(f"edge ({i},{j}) out of range for {self.nv} vertices")
        if not self._connected():
            raise Disconnected("the underlying graph of the quiver is not connected")

    def _connected(self):
        if self.nv == 0:
            return False
        seen = {0}
        frontier = [0]
        adj = {v: [] for v in range(self.nv)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.nv

    @property
    def n(self):
        return len(self.edges)

    @property
    def d(self):
        return self.nv - 1

    def loops(self):
        return tuple(k for k, (i, j) in enumerate(self.edges) if i == j)


def cycle_quiver(n):
    """The n-cycle: edges (0,1), (1,2), ..., (n-1,0)."""
    return Quiver(n, tuple((i, (i + 1) % n) for i in range(n)))


def k23_quiver():
    """The complete bipartite quiver on parts {0,1} and {2,3,4}."""
    return Quiver(5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)))


# ---------------------------------------------------------------------------
# text format: first line "V E", then E lines "i j"


def parse_quiver_text(text):
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx >= len(lines):
        raise InputFormatError("empty quiver file", line=1)
    header = lines[idx].split()
    if len(header) != 2:
        raise InputFormatError("header must be 'V E'", line=idx + 1)
    try:
        nv, ne = int(header[0]), int(header[1])
    except ValueError:
        raise InputFormatError("header entries must be integers", line=idx + 1) from None
    edges = []
    row_line = idx + 1
    for k in range(ne):
        while row_line < len(lines) and (
            not lines[row_line].strip() or lines[row_line].lstrip().startswith("#")
        ):
            row_line += 1
        if row_line >= len(lines):
            raise InputFormatError(f"expected {ne} edges, found {k}", line=len(lines))
        parts = lines[row_line].split()
        if len(parts) != 2:
            raise InputFormatError("edge lines must be 'tail head'", line=row_line + 1)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError("edge endpoints must be integers", line=row_line + 1) from None
        if not (0 <= i < nv and 0 <= j < nv):
            raise InputFormatError(f"edge ({i},{j}) out of range", line=row_line + 1)
        edges.append((i, j))
        row_line += 1
    return Quiver(nv, tuple(edges))


def format_quiver_text(q: Quiver):
    out = [f"{q.nv} {q.n}"]
    for i, j in q.edges:
        out.append(f"{i} {j}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# boundary matrix and cycle basis


def boundary_matrix(q: Quiver) -> IntMatrix:
    """d x n matrix of e_ij -> v_i - v_j in the basis {v_0-v_k, k=1..d}.

    Row k-1 corresponds to v_0 - v_k; the column of edge (i,j) is
    f_j - f_i with f_0 = 0.
    """
    d, n = q.d, q.n
    cols = []
    for i, j in q.edges:
        col = [0] * d
        if j > 0:
            col[j - 1] += 1
        if i > 0:
            col[i - 1] -= 1
        cols.append(col)
    return IntMatrix.from_columns(cols, d) if n else IntMatrix.zero(d, 0)


def cycle_basis(q: Quiver) -> IntMatrix:
    """Fundamental cycles of the breadth-first spanning tree, as columns.

    Entries lie in {-1,0,1}; columns form a saturated basis of ker(A).
    """
    tree = _bfs_tree(q)
    tree_set = set(tree)
    parent = _parents(q, tree)
    n = q.n
    cols = []
    for k, (i, j) in enumerate(q.edges):
        if k in tree_set:
            continue
        col = [0] * n
        col[k] += 1  # traverse the edge i -> j, then walk back j -> i in the tree
        for eidx, sgn in _tree_path(q, parent, j, i):
            col[eidx] += sgn
        cols.append(col)
    B = IntMatrix.from_columns(cols, n) if cols else IntMatrix.zero(n, 0)
    if not boundary_matrix(q).mul(B).is_zero():
        raise VerificationFailure("fundamental cycles are not cycles; path computation bug")
    return B


def _bfs_tree(q: Quiver):
    seen = {0}
    tree = []
    changed = True
    while changed and len(seen) < q.nv:
        changed = False
        for k, (i, j) in enumerate(q.edges):
            if i in seen and j not in seen:
                seen.add(j)
                tree.append(k)
                changed = True
            elif j in seen and i not in seen:
                seen.add(i)
                tree.append(k)
                changed = True
    return tuple(sorted(tree))


def _parents(q: Quiver, tree):
    adj = {v: [] for v in range(q.nv)}
    for k in tree:
        i, j = q.edges[k]
        adj[i].append((k, j))
        adj[j].append((k, i))
    parent = {0: None}
    frontier = [0]
    while frontier:
        v = frontier.pop(0)
        for k, w in adj[v]:
            if w not in parent:
                parent[w] = (v, k)
                frontier.append(w)
    return parent


def _tree_path(q, parent, src, dst):
    """(edge index, sign) along the tree path src -> dst; sign +1 when the
    edge is traversed tail -> head."""

    def chain(v):
        out = [v]
        while parent[v] is not None:
            v = parent[v][0]
            out.append(v)
        return out

    dst_chain = set(chain(dst))
    common = next(v for v in chain(src) if v in dst_chain)
    steps = []
    v = src
    while v != common:
        u, k = parent[v]
        i, _j = q.edges[k]
        steps.append((k, 1 if i == v else -1))
        v = u
    down = []
    v = dst
    while v != common:
        u, k = parent[v]
        i, _j = q.edges[k]
        down.append((k, 1 if i == u else -1))
        v = u
    return steps + list(reversed(down))


def quiver_pair(q: Quiver, hyperkaehler=True) -> GaleDualPair:
    """Gale dual pair (boundary matrix, cycle basis) of a quiver.

    Hyperkaehler builds reject self-loop edges: a loop has boundary
    column zero, a coloop of the Gale-dual matroid, so the bounded
    complex would degenerate.
    """
    if hyperkaehler and q.loops():
        raise ColoopPresent(
            f"self-loop edges {q.loops()} have zero boundary column (a_i = 0), "
            "a coloop of the Gale-dual matroid; hyperkaehler builds require "
            "coloop-free quivers"
        )
    return GaleDualPair(boundary_matrix(q), cycle_basis(q))


# ---------------------------------------------------------------------------
# spanning trees


@dataclass(frozen=True)
class SpanningTreeCert:
    tree: tuple
    coefficients: tuple  # aligned with tree

    def coefficient(self, edge_index):
        return self.coefficients[self.tree.index(edge_index)]


def spanning_trees(q: Quiver):
    """All spanning trees, as sorted tuples of edge indices.

    A d-subset of edges is a spanning tree exactly when its boundary
    columns form a column basis.
    """
    A = boundary_matrix(q)
    d = q.d
    out = []
    for cand in itertools.combinations(range(q.n), d):
        sub = [[A.entry(i, j) for j in cand] for i in range(d)]
        if det_bareiss([r[:] for r in sub]) != 0:
            out.append(cand)
    return out


def tree_coefficients(q: Quiver, tau, theta) -> SpanningTreeCert:
    """Integer coefficients expressing theta over the tree edges."""
    tau = tuple(sorted(tau))
    A = boundary_matrix(q)
    d = q.d
    if len(tau) != d:
        raise NotASpanningTree(f"{tau} has {len(tau)} edges, expected {d}")
    sub = [[A.entry(i, j) for j in tau] for i in range(d)]
    if det_bareiss([r[:] for r in sub]) == 0:
        raise NotASpanningTree(f"{tau} is not a spanning tree")
    sol = solve_square(sub, list(theta))
    if any(x.denominator != 1 for x in sol):
        raise VerificationFailure("tree solve was not integral; boundary matrix not unimodular")
    coeffs = tuple(int(x) for x in sol)
    return SpanningTreeCert(tau, coeffs)


def is_generic_quiver(q: Quiver, theta):
    """theta is generic iff every tree coefficient is nonzero."""
    for tau in spanning_trees(q):
        cert = tree_coefficients(q, tau, theta)
        if any(c == 0 for c in cert.coefficients):
            return False
    return True


def sigma_tau_theta(q: Quiver, tau, theta):
    """Column indices into [A, -A] selected by the tree and theta.

    Edge e with positive coefficient contributes its z-column (index e),
    negative coefficient its w-column (index n + e).
    """
    cert = tree_coefficients(q, tau, theta)
    out = set()
    for e, c in zip(cert.tree, cert.coefficients):
        if c > 0:
            out.add(e)
        elif c < 0:
            out.add(q.n + e)
        else:
            raise VerificationFailure(f"theta is not generic for tree {tau} (zero coefficient)")
    return frozenset(out)


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class Cut:
    vertex_side: frozenset  # the set W
    plus: tuple  # edges from W to the complement
    minus: tuple  # edges from the complement into W

    def edge_set(self):
        return frozenset(self.plus) | frozenset(self.minus)


def cuts(q: Quiver):
    """All signed cuts, one per nonempty proper vertex subset W."""
    out = []
    for bits in range(1, 2**q.nv - 1):
        W = frozenset(v for v in range(q.nv) if bits >> v & 1)
        plus = tuple(k for k, (i, j) in enumerate(q.edges) if i in W and j not in W)
        minus = tuple(k for k, (i, j) in enumerate(q.edges) if i not in W and j in W)
        out.append(Cut(W, plus, minus))
    return out


def cocircuit_cuts(q: Quiver):
    """Inclusion-minimal cuts, deduplicated up to complementation."""
    all_cuts = cuts(q)
    seen = {}
    for c in all_cuts:
        es = c.edge_set()
        if es not in seen:
            seen[es] = c
    minimal = []
    for es, c in seen.items():
        if not any(other < es for other in seen):
            minimal.append(c)
    return sorted(minimal, key=lambda c: tuple(sorted(c.edge_set())))


def cut_monomials(q: Quiver):
    """Square-free monomials of the minimal cuts, as sorted index tuples."""
    return sorted(tuple(sorted(c.edge_set())) for c in cocircuit_cuts(q))


def cut_bilinear_relations(q: Quiver):
    """The relations sum_{D+} z_e w_e = sum_{D-} z_e w_e, for every cut."""
    return [(c.plus, c.minus) for c in cuts(q)]


def cut_vector_in_row_space(q: Quiver, cut: Cut):
    """Each cut vector lies in the row space of the boundary matrix."""
    A = boundary_matrix(q)
    r = [0] * q.n
    for e in cut.plus:
        r[e] = 1
    for e in cut.minus:
        r[e] = -1
    rows = [[Fraction(x) for x in A.row(i)] for i in range(A.rows)]
    return rat_rank(rows + [list(map(Fraction, r))]) == rat_rank(rows)


# ---------------------------------------------------------------------------
# ALE classification


@dataclass(frozen=True)
class AleReport:
    is_product_of_ale: bool
    parallel_classes: tuple  # ground indices grouped by parallel Gale rows
    factors: tuple  # cycle lengths of the A_n factors (empty if not a product)
    unimodular: bool
    notes: str


def is_product_of_ale(obj) -> AleReport:
    """Decide whether the associated variety is a product of ALE surfaces.

    Accepts a GaleDualPair or a Quiver.  The criterion: the Gale-dual
    vectors partition into corank-many parallel classes spanning
    independent lines; for unimodular input each class then normalizes
    to an all-ones block and contributes one cyclic factor.
    """
    if isinstance(obj, Quiver):
        pair = quiver_pair(obj)
    else:
        pair = obj
    B = pair.B
    n, m = pair.n, pair.corank
    rows = [B.row(i) for i in range(n)]
    if any(all(x == 0 for x in r) for r in rows):
        from .errors import LoopPresent

        raise LoopPresent("a Gale-dual vector b_i is zero; the classification assumes 0 not in B")
    classes = {}
    for i, r in enumerate(rows):
        key = clear_denominators(r)
        lead = next(k for k, x in enumerate(key) if x)
        if key[lead] < 0:
            key = tuple(-x for x in key)
        classes.setdefault(key, []).append(i)
    class_list = tuple(tuple(v) for _, v in sorted(classes.items()))
    is_product = len(class_list) == m
    uni = _pair_is_unimodular(pair)
    factors = ()
    notes = ""
    if is_product:
        if uni:
            for key, members in sorted(classes.items()):
                for i in members:
                    r = rows[i]
                    if any(abs(x) not in (0, 1) for x in r):
                        raise VerificationFailure(
                            "unimodular pair with a non-unit parallel class entry"
                        )
            factors = tuple(sorted((len(v) for v in class_list), reverse=True))
            notes = "each parallel class normalizes to an all-ones block"
        else:
            notes = "toric subvariety criterion holds but the pair is not unimodular"
    return AleReport(is_product, class_list, factors, uni, notes)


def _pair_is_unimodular(pair):
    from .exact import is_unimodular

    return is_unimodular(pair.A)


def ale_degree_generators_check(n) -> bool:
    """Verify the degree-(1,...,1) generators of the n-cycle quiver.

    Collapses the lattice points of the Lawrence bounded complex by
    total z- and w-degree and compares with the binomial-exponent set
    {(C(i,2), C(n-i+1,2)) : i = 1..n}; either cycle orientation is
    accepted.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    q = cycle_quiver(n)
    pair = quiver_pair(q)
    theta = (1,) * (n - 1)
    slc = lawrence_slice(pair, theta)
    pts = lattice_points_bounded(slc)
    collapsed = {(sum(p[:n]), sum(p[n:])) for p in pts}
    expect = {(math.comb(i, 2), math.comb(n - i + 1, 2)) for i in range(1, n + 1)}
    swapped = {(b, a) for a, b in expect}
    return collapsed == expect or collapsed == swapped
