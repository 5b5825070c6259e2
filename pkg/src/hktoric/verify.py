"""Cross-validation workflows combining the modules.

The headline check computes the even Betti numbers three independent
ways (matroid h-vector, graded Hilbert function, alternating sum over
bounded faces) and insists on exact agreement; the full suite adds the
bounded-complex isomorphism, star-collapsibility, chamber independence,
cogenerator annihilators, and the Lefschetz/Macaulay tests.
"""

from __future__ import annotations

import random

from .cohomology import (
    annihilator_verify,
    build_presentation,
    g_vector_macaulay_check,
    hilbert_function,
    sample_lefschetz_class,
    volume_cogenerators,
)
from .errors import VerificationFailure
from .exact import GaleDualPair, is_unimodular
from .fans import feasible_basis_fingerprint, lawrence_configuration
from .matroid import gale_dual_matroid
from .polyhedra import (
    arrangement_from_pair,
    betti_from_bounded_faces,
    check_bounded_poset_isomorphism,
    is_generic,
    lawrence_slice,
    star_collapsibility_with_retry,
)


def three_way_betti(pair: GaleDualPair, theta):
    """Betti numbers by matroid transform, ring dimensions, and face counts.

    Returns the report; raises VerificationFailure unless all three
    agree exactly.
    """
    if not is_generic(theta, pair.A):
        from .errors import NonGenericTheta

        raise NonGenericTheta(f"theta {tuple(theta)} is not generic")
    h = list(gale_dual_matroid(pair).h_vector())
    pres = build_presentation(pair)
    hf = hilbert_function(pres, len(h))
    if hf[: len(h)] != h or any(x != 0 for x in hf[len(h) :]):
        raise VerificationFailure(
            f"Hilbert function {hf} disagrees with the matroid h-vector {h}"
        )
    slc = lawrence_slice(pair, theta)
    fvec = slc.bounded_complex().fvector
    betti = betti_from_bounded_faces(fvec)
    if betti != h:
        raise VerificationFailure(
            f"alternating-sum Betti numbers {betti} disagree with the h-vector {h}"
        )
    return {
        "h_vector": h,
        "hilbert": hf,
        "fvector": list(fvec),
        "betti_from_faces": betti,
        "agree": True,
    }


def sample_distinct_chambers(pair: GaleDualPair, base_theta, want=3, seed=0, radius=9):
    """Generic theta representatives with pairwise distinct Lawrence chambers."""
    Apm = lawrence_configuration(pair.A)
    rng = random.Random(seed)
    chosen = []
    fps = set()

    def consider(theta):
        theta = tuple(int(x) for x in theta)
        if not is_generic(theta, Apm):
            return
        fp = feasible_basis_fingerprint(Apm, theta)
        if fp in fps:
            return
        fps.add(fp)
        chosen.append(theta)

    consider(base_theta)
    for _ in range(400):
        if len(chosen) >= want:
            break
        consider(tuple(rng.randint(-radius, radius) for _ in range(pair.d)))
    return chosen


def theta_independence(pair: GaleDualPair, thetas):
    """The h-vector computed from bounded faces is chamber independent."""
    results = []
    for theta in thetas:
        slc = lawrence_slice(pair, theta)
        results.append(tuple(betti_from_bounded_faces(slc.bounded_complex().fvector)))
    if len(set(results)) != 1:
        raise VerificationFailure(
            f"bounded-face Betti numbers vary across chambers: {results}"
        )
    return {"thetas": [list(t) for t in thetas], "betti": list(results[0])}


def full_verification(pair: GaleDualPair, theta, seed=0, chambers=3):
    """The verify-all suite; raises on the first failed invariant."""
    report = {}
    report["unimodular"] = is_unimodular(pair.A)
    report["three_way_betti"] = three_way_betti(pair, theta)
    report["poset_isomorphism"] = check_bounded_poset_isomorphism(pair, theta)
    slc = lawrence_slice(pair, theta)
    ok, orientation, direction = star_collapsibility_with_retry(slc, seed=seed)
    if not ok:
        raise VerificationFailure("bounded complex is not star-collapsible for any sweep")
    report["star_collapsible"] = {
        "ok": ok,
        "orientation": orientation,
        "direction": [int(x) for x in direction],
    }
    thetas = sample_distinct_chambers(pair, theta, want=chambers, seed=seed)
    report["theta_independence"] = theta_independence(pair, thetas)
    arr, psi = arrangement_from_pair(pair, theta)
    cogens = volume_cogenerators(arr)
    pres = build_presentation(pair)
    report["annihilator"] = annihilator_verify(pres, cogens)
    h = report["three_way_betti"]["h_vector"]
    report["lefschetz"] = sample_lefschetz_class(pres, seed=seed)
    gdims = report["lefschetz"]["quotient_mod_D_dims"]
    top = (len(h) - 1) // 2
    expected_g = [1] + [h[i] - h[i - 1] for i in range(1, top + 1)]
    if gdims[: top + 1] != expected_g:
        raise VerificationFailure(
            f"quotient-mod-D dimensions {gdims} disagree with the g-vector {expected_g}"
        )
    if not g_vector_macaulay_check(h):
        raise VerificationFailure(f"g-vector of {h} violates the Macaulay growth bound")
    report["macaulay"] = True
    report["all_passed"] = True
    return report
