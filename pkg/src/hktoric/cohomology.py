"""Ring presentations and their invariants.

The quotient Q[x_1..x_n] / (matroid ideal + circuit ideal) is handled
degree by degree with exact row reduction; no Groebner bases.  Large
instances run in the d-variable parameter model (quotient by the linear
system first), which is the same graded ring; the n-variable route is
kept for cross-checks on small inputs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AnnihilatorMismatch,
    ChamberCrossed,
    ColoopPresent,
    LoopPresent,
    NonGenericD,
    NotInImage,
    NotInjective,
    VerificationFailure,
)
from .exact import (
    GaleDualPair,
    IntMatrix,
    MultiPoly,
    apply_diff_op,
    interpolate_homogeneous,
    kernel_lattice_basis,
    monomial_exponents,
    ratvec,
)
from .matroid import LinearMatroid, gale_dual_matroid
from .polyhedra import AffineArrangement


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class RingPresentation:
    """Variables of degree one, linear generators, square-free monomial
    generators; the quotient is the cohomology model."""

    nvars: int
    linear_gens: tuple  # integer coefficient tuples, a lattice basis of ker(A)
    monomial_gens: tuple  # sorted index tuples (circuits)
    A: IntMatrix | None = None  # parameter matrix with ker(A) spanned by linear_gens

    def corank(self):
        return self.nvars - self.parameter_matrix().rows

    def parameter_matrix(self):
        if self.A is not None:
            return self.A
        if not self.linear_gens:
            return IntMatrix.identity(self.nvars)
        G = IntMatrix(self.linear_gens)
        K = kernel_lattice_basis(G)
        return K.transpose()


def build_presentation(pair: GaleDualPair) -> RingPresentation:
    """Circuit linear forms (columns of B) plus the matroid circuit monomials.

    Rejects pairs with a zero Gale-dual vector; the bilinear relations
    would be degenerate.
    """
    if pair.has_loop():
        raise LoopPresent(
            "a Gale-dual vector b_i is zero; the presentation assumes loop-free B"
        )
    matroid = gale_dual_matroid(pair)
    linear = tuple(pair.B.column(j) for j in range(pair.B.cols))
    return RingPresentation(pair.n, linear, matroid.circuits(), pair.A)


def _alpha_image(pres: RingPresentation, monomial):
    """The monomial's image under x_j -> sum_i a_ij t_i, as a d-variable poly."""
    A = pres.parameter_matrix()
    d = A.rows
    out = MultiPoly(d, {(0,) * d: Fraction(1)})
    for j in monomial:
        out = out * MultiPoly.linear_form(A.column(j))
    return out


class DegreeSpan:
    """Row-reduced span of homogeneous polynomials of one degree."""

    def __init__(self, nvars, degree):
        self.monomials = monomial_exponents(nvars, degree)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.pivots = {}  # pivot column -> reduced row (list of Fractions)

    def _vector(self, poly):
        v = [Fraction(0)] * len(self.monomials)
        for e, c in poly.terms.items():
            v[self.index[e]] += c
        return v

    def reduce(self, vec):
        vec = list(vec)
        for col in sorted(self.pivots):
            if vec[col] != 0:
                f = vec[col]
                row = self.pivots[col]
                vec = [a - f * b for a, b in zip(vec, row)]
        return vec

    def insert(self, poly):
        vec = self.reduce(self._vector(poly))
        lead = next((i for i, x in enumerate(vec) if x != 0), None)
        if lead is None:
            return False
        inv = Fraction(1) / vec[lead]
        row = [x * inv for x in vec]
        for col, other in self.pivots.items():
            if other[lead] != 0:
                f = other[lead]
                self.pivots[col] = [a - f * b for a, b in zip(other, row)]
        self.pivots[lead] = row
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def quotient_monomials(self):
        return [m for i, m in enumerate(self.monomials) if i not in self.pivots]

    def quotient_coordinates(self, poly):
        vec = self.reduce(self._vector(poly))
        return [vec[i] for i, m in enumerate(self.monomials) if i not in self.pivots]


def _ideal_degree_span(nvars, degree, gens):
    """Span of {g * monomial} at the given degree; gens are MultiPoly."""
    span = DegreeSpan(nvars, degree)
    for g in gens:
        gd = g.degree()
        if gd < 0 or gd > degree:
            continue
        for m in monomial_exponents(nvars, degree - gd):
            span.insert(g * MultiPoly.monomial(nvars, m))
    return span


def _parameter_gens(pres: RingPresentation):
    return [_alpha_image(pres, m) for m in pres.monomial_gens]


def hilbert_function(pres: RingPresentation, up_to) -> list:
    """Dimensions of the graded quotient in degrees 0..up_to.

    Computed in the parameter model: the circuit linear forms are
    eliminated by the substitution x_j -> (A t)_j, and the monomial
    generators' images are row reduced degree by degree.
    """
    A = pres.parameter_matrix()
    d = A.rows
    gens = _parameter_gens(pres)
    out = []
    for k in range(up_to + 1):
        span = _ideal_degree_span(d, k, gens)
        out.append(len(span.monomials) - span.rank)
    return out


def hilbert_function_direct(pres: RingPresentation, up_to) -> list:
    """Same dimensions computed in the full n-variable ring (cross-check)."""
    n = pres.nvars
    gens = [MultiPoly.linear_form(l) for l in pres.linear_gens]
    gens += [
        MultiPoly.monomial(n, tuple(m.count(j) for j in range(n)))
        for m in pres.monomial_gens
    ]
    out = []
    for k in range(up_to + 1):
        span = _ideal_degree_span(n, k, gens)
        out.append(len(span.monomials) - span.rank)
    return out


@dataclass(frozen=True)
class GradedQuotientBasis:
    """Monomials whose cosets span each graded piece of the quotient."""

    degrees: tuple  # tuple of tuples of exponent tuples
    model: str  # "x" (full ring) or "t" (parameter model)

    def dims(self):
        return [len(d) for d in self.degrees]


def graded_quotient_basis(pres: RingPresentation, up_to, model="x") -> GradedQuotientBasis:
    if model == "x":
        n = pres.nvars
        gens = [MultiPoly.linear_form(l) for l in pres.linear_gens]
        gens += [
            MultiPoly.monomial(n, tuple(m.count(j) for j in range(n)))
            for m in pres.monomial_gens
        ]
    elif model == "t":
        n = pres.parameter_matrix().rows
        gens = _parameter_gens(pres)
    else:
        raise ValueError("model must be 'x' or 't'")
    layers = []
    for k in range(up_to + 1):
        span = _ideal_degree_span(n, k, gens)
        layers.append(tuple(span.quotient_monomials()))
    return GradedQuotientBasis(tuple(layers), model)


# ---------------------------------------------------------------------------
# volume cogenerators


@dataclass(frozen=True)
class CogeneratorSet:
    """Volume polynomials of the maximal bounded regions."""

    nvars: int
    polynomials: tuple  # MultiPoly, homogeneous of degree n-d
    region_signs: tuple  # sign vectors naming the regions
    psi: tuple

    @property
    def count(self):
        return len(self.polynomials)


def volume_cogenerators(arr: AffineArrangement, seed=1729) -> CogeneratorSet:
    """Interpolate each region's volume as a polynomial in psi.

    Samples perturbed psi values inside the chamber (shrinking the
    perturbation until the bounded-cell signature is stable) and fits a
    homogeneous degree-(n-d) polynomial per region; inconsistent fits
    raise ChamberCrossed.
    """
    B, psi = arr.B, arr.psi
    n, m = arr.n, arr.dim
    matroid = LinearMatroid(B.transpose())
    if matroid.loops():
        raise LoopPresent(f"Gale-dual vectors {matroid.loops()} are zero")
    if matroid.coloops():
        raise ColoopPresent(
            f"elements {matroid.coloops()} are coloops; maximal bounded regions degenerate"
        )
    base_cells = sorted(c.sign for c in arr.maximal_bounded_cells())
    if not base_cells:
        raise VerificationFailure("arrangement has no maximal bounded region")
    signature = set(base_cells)
    nmono = len(monomial_exponents(n, m))
    rng = random.Random(seed)
    deltas = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(nmono + 2)]
    denom = 64
    for _attempt in range(6):
        try:
            samples = {sign: [] for sign in base_cells}
            points = [psi] + [
                tuple(p + Fraction(dd, denom) for p, dd in zip(psi, delta)) for delta in deltas
            ]
            for pt in points:
                sub = AffineArrangement(B, pt)
                cells = {c.sign: c for c in sub.maximal_bounded_cells()}
                if set(cells) != signature:
                    raise ChamberCrossed("bounded-cell signature changed under perturbation")
                for sign in base_cells:
                    samples[sign].append((pt, sub.region_volume(sign)))
            polys = []
            for sign in base_cells:
                poly = interpolate_homogeneous(samples[sign], m, n)
                polys.append(poly)
            return CogeneratorSet(n, tuple(polys), tuple(base_cells), tuple(psi))
        except ChamberCrossed:
            denom *= 8
    raise ChamberCrossed(
        "could not sample inside the chamber of psi; signature unstable at all scales"
    )


def annihilator_verify(pres: RingPresentation, cogens: CogeneratorSet):
    """Check Ann({V_i}) matches the presentation ideal degree by degree.

    (a) every presentation generator annihilates every V_i; (b) for each
    degree k the catalecticant rank equals the Hilbert function.
    """
    n = cogens.nvars
    if n != pres.nvars:
        raise ValueError("presentation and cogenerators live on different variable counts")
    m = max((p.degree() for p in cogens.polynomials), default=0)
    for lam in pres.linear_gens:
        op = MultiPoly.linear_form(lam)
        for i, V in enumerate(cogens.polynomials):
            if not apply_diff_op(op, V).is_zero():
                raise AnnihilatorMismatch(
                    f"circuit form {lam} does not annihilate V_{i} (degree 1)"
                )
    for mono in pres.monomial_gens:
        op = MultiPoly.monomial(n, tuple(mono.count(j) for j in range(n)))
        for i, V in enumerate(cogens.polynomials):
            if not apply_diff_op(op, V).is_zero():
                raise AnnihilatorMismatch(
                    f"matroid monomial {mono} does not annihilate V_{i} "
                    f"(degree {len(mono)})"
                )
    hf = hilbert_function(pres, m + 1)
    ranks = []
    for k in range(m + 2):
        rows = []
        lower = monomial_exponents(n, max(m - k, 0)) if k <= m else []
        for beta in monomial_exponents(n, k):
            op = MultiPoly.monomial(n, beta)
            row = []
            for V in cogens.polynomials:
                img = apply_diff_op(op, V)
                row.extend(img.coefficient(g) for g in lower)
            rows.append(row)
        rank = 0
        if rows and rows[0]:
            from .exact import rat_rank

            rank = rat_rank(rows)
        ranks.append(rank)
        if rank != hf[k]:
            raise AnnihilatorMismatch(
                f"catalecticant rank {rank} != Hilbert dimension {hf[k]} in degree {k}"
            )
    return {"ranks": ranks[:-1], "hilbert": hf[:-1], "top_rank": ranks[m], "regions": cogens.count}


def pullback_cogenerators(pair: GaleDualPair, cogens: CogeneratorSet):
    """The unique d-variable preimages v_i with v_i(A x) = V_i(x)."""
    A = pair.A
    d, n = pair.d, pair.n
    for j in range(pair.B.cols):
        op = MultiPoly.linear_form(pair.B.column(j))
        for i, V in enumerate(cogens.polynomials):
            if not apply_diff_op(op, V).is_zero():
                raise NotInImage(
                    f"V_{i} is not annihilated by Circ (kernel direction {j}); "
                    "it has no d-variable preimage"
                )
    out = []
    forms = [MultiPoly.linear_form(A.row(i)) for i in range(d)]  # t_i -> (A x)_i
    for V in cogens.polynomials:
        deg = max(V.degree(), 0)
        tmonos = monomial_exponents(d, deg)
        xmonos = monomial_exponents(n, deg)
        xindex = {mm: i for i, mm in enumerate(xmonos)}
        cols = []
        for tm in tmonos:
            poly = MultiPoly(n, {(0,) * n: Fraction(1)})
            for i, e in enumerate(tm):
                for _ in range(e):
                    poly = poly * MultiPoly.linear_form(A.row(i))
            vec = [Fraction(0)] * len(xmonos)
            for mm, c in poly.terms.items():
                vec[xindex[mm]] += c
            cols.append(vec)
        rows = [[cols[j][i] for j in range(len(tmonos))] for i in range(len(xmonos))]
        rhs = [V.coefficient(mm) for mm in xmonos]
        from .exact import solve_general

        sol, null = solve_general(rows, rhs)
        if sol is None:
            raise NotInImage("no d-variable preimage solves the coefficient system")
        if null:
            raise VerificationFailure("alpha* is not injective; parameter matrix is degenerate")
        vpoly = MultiPoly(d, dict(zip(tmonos, sol)))
        check = vpoly.substitute_linear(forms, n)
        if check != V:
            raise VerificationFailure("re-expanded preimage does not reproduce V")
        out.append(vpoly)
    return out


def lawrence_double_cogenerators(cogens: CogeneratorSet):
    """The 2n-variable polynomials V_i(x - y), with the diagonal checks."""
    n = cogens.nvars
    # substitution forms x_j - y_j in 2n variables
    forms = []
    for j in range(n):
        terms = {}
        e = [0] * (2 * n)
        e[j] = 1
        terms[tuple(e)] = Fraction(1)
        e = [0] * (2 * n)
        e[n + j] = 1
        terms[tuple(e)] = Fraction(-1)
        forms.append(MultiPoly(2 * n, terms))
    out = []
    for V in cogens.polynomials:
        W = V.substitute_linear(forms, 2 * n)
        for j in range(n):
            e1 = [0] * (2 * n)
            e1[j] = 1
            e2 = [0] * (2 * n)
            e2[n + j] = 1
            op = MultiPoly(2 * n, {tuple(e1): Fraction(1), tuple(e2): Fraction(1)})
            if not apply_diff_op(op, W).is_zero():
                raise VerificationFailure(
                    f"diagonal operator d/dx_{j} + d/dy_{j} does not annihilate V(x-y)"
                )
        out.append(W)
    return out


# ---------------------------------------------------------------------------
# Lefschetz and Macaulay


def lefschetz_injectivity(pres: RingPresentation, D):
    """Ranks of multiplication by the degree-1 class D on the quotient.

    For each i with 2i <= n - d the map from degree i-1 to degree i must
    have full column rank; returns the rank report or raises
    NonGenericD when a rank drops (caller may resample).
    """
    D = ratvec(D)
    if len(D) != pres.nvars:
        raise ValueError("D must have one coefficient per variable")
    A = pres.parameter_matrix()
    d = A.rows
    gens = _parameter_gens(pres)
    m = pres.corank()
    ell = MultiPoly.zero(d)
    for j, c in enumerate(D):
        if c:
            ell = ell + MultiPoly.linear_form(A.column(j)).scale(c)
    top = m // 2
    spans = {k: _ideal_degree_span(d, k, gens) for k in range(top + 1)}
    report = {"D": tuple(D), "maps": []}
    for i in range(1, top + 1):
        src = spans[i - 1].quotient_monomials()
        dst_span = spans[i]
        rows = []
        for mu in src:
            img = ell * MultiPoly.monomial(d, mu)
            rows.append(dst_span.quotient_coordinates(img))
        from .exact import rat_rank

        rank = rat_rank(rows) if rows and rows[0] else 0
        report["maps"].append(
            {"degree": i, "source_dim": len(src), "target_dim": len(dst_span.quotient_monomials()), "rank": rank}
        )
        if rank < len(src):
            raise NonGenericD(
                f"multiplication by D has rank {rank} < {len(src)} from degree {i - 1}"
            )
    # ring-level witness: dims of the quotient modulo D equal the g-vector
    gdims = []
    for k in range(top + 1):
        span = _ideal_degree_span(d, k, gens + [ell])
        gdims.append(len(span.monomials) - span.rank)
    report["quotient_mod_D_dims"] = gdims
    return report


def sample_lefschetz_class(pres: RingPresentation, seed=0, attempts=24):
    """Deterministic search for a degree-1 class with injective multiplication."""
    rng = random.Random(seed)
    last = None
    for t in range(attempts):
        if t == 0:
            D = [1] * pres.nvars
        else:
            D = [rng.randint(1, 40) for _ in range(pres.nvars)]
        try:
            report = lefschetz_injectivity(pres, D)
            return report
        except NonGenericD as exc:
            last = exc
    raise NotInjective(
        f"no sampled degree-1 class was injective after {attempts} attempts: {last}"
    )


def macaulay_upper_bound(a, i):
    """a^<i>: the Macaulay bound on the next entry of an O-sequence."""
    if a == 0:
        return 0
    if i == 0:
        raise ValueError("bound undefined at i = 0")
    rep = []
    k = i
    rest = a
    while rest > 0 and k >= 1:
        mm = k - 1
        while math.comb(mm + 1, k) <= rest:
            mm += 1
        rep.append((mm, k))
        rest -= math.comb(mm, k)
        k -= 1
    return sum(math.comb(mm + 1, kk + 1) for mm, kk in rep)


def g_vector_macaulay_check(h) -> bool:
    """Whether g_i = h_i - h_{i-1}, i <= floor((n-d)/2), is an O-sequence."""
    entries = list(h)
    if not entries or entries[0] != 1:
        return False
    m = len(entries) - 1
    top = m // 2
    g = [1] + [entries[i] - entries[i - 1] for i in range(1, top + 1)]
    if any(x < 0 for x in g):
        return False
    for i in range(1, len(g) - 1):
        if g[i + 1] > macaulay_upper_bound(g[i], i):
            return False
    return True


def g_sequence_is_o_sequence(seq) -> bool:
    """Direct O-sequence test for an explicit candidate (g_0, g_1, ...)."""
    seq = list(seq)
    if not seq or seq[0] != 1:
        return False
    if any(x < 0 for x in seq):
        return False
    for i in range(1, len(seq) - 1):
        if seq[i + 1] > macaulay_upper_bound(seq[i], i):
            return False
    return True
