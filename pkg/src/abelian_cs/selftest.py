"""Property checks shared by the ``selftest`` subcommand and the scripts.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
property so that a full report can always be printed.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator

from .exact_linalg import IntMatrix, determinant, matrix, signature, symmetrize
from .invariants import (
    DEFAULT_TOLERANCE,
    braiding,
    delta,
    duality_check,
    partition_function,
    reciprocity_check,
    rt_invariant,
    s_matrix,
    twist,
)
from .moves import Slide, Stabilize, invariance_suite, random_unimodular
from .phases import GaussSum, PhaseRational
from .sampling import random_coupling, random_even_form
from .torsion_group import GroupPresentation, cokernel, pairing, pairing_of_lifts, quadratic

GAUSS_MILGRAM_FORMS = [
    [[2]], [[4]], [[0, 1], [1, 0]], [[2, 1], [1, 2]], [[4, 2], [2, 4]], [[6, 3], [3, 6]],
    [[2, 1, 0], [1, 2, 0], [0, 0, 2]],
]

# even forms whose groups have order <= 24
PROPERTY_FORMS = [
    [[2]], [[4]], [[6]], [[8]], [[12]], [[24]], [[-10]],
    [[0, 2], [2, 0]], [[0, 3], [3, 0]], [[0, 4], [4, 0]],
    [[2, 1], [1, 2]], [[4, 2], [2, 4]], [[2, 1], [1, -2]], [[2, 3], [3, 2]],
    [[4, 1], [1, 6]], [[2, 1, 0], [1, 2, 0], [0, 0, 2]], [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
    [[2, 1, 0], [1, 2, 1], [0, 1, 2]], [[2, 1, 0], [1, 4, 0], [0, 0, 2]],
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}" + (f" :: {self.detail}" if self.detail else "")


def gauss_milgram(k: IntMatrix, tol: float = DEFAULT_TOLERANCE) -> CheckResult:
    g = cokernel(k)
    d = delta(g)
    det = abs(determinant(k))
    exact_norm = (d * d.conjugate()).equals_value(GaussSum.constant(det))
    sig = signature(k)
    z = d.to_complex()
    arg_err = abs(cmath.phase(z * cmath.exp(1j * math.pi * sig / 4)))
    ok = exact_norm and arg_err <= tol and abs(abs(z) - math.sqrt(det)) <= tol * (1 + det)
    return CheckResult(f"gauss-milgram K={k.to_rows()}", ok,
                       f"|D|^2==|det| exact: {exact_norm}, arg error {arg_err:.3g}")


def lift_shift(g: GroupPresentation, rng: random.Random, shifts: int = 3) -> bool:
    k = g.form_matrix
    for u in g.element_list:
        for v in g.element_list:
            base_p = pairing(g, u, v).value
            for _ in range(shifts):
                w1 = [rng.randint(-3, 3) for _ in range(g.source_rank)]
                w2 = [rng.randint(-3, 3) for _ in range(g.source_rank)]
                x = [a + b for a, b in zip(u.canonical_lift, k.apply(w1))]
                y = [a + b for a, b in zip(v.canonical_lift, k.apply(w2))]
                if (pairing_of_lifts(g, x, y) - base_p) % 1:
                    return False
        base_q = quadratic(g, u).value
        for _ in range(shifts):
            w = [rng.randint(-3, 3) for _ in range(g.source_rank)]
            x = [a + b for a, b in zip(u.canonical_lift, k.apply(w))]
            if PhaseRational(pairing_of_lifts(g, x, x)).value != base_q:
                return False
    return True


def group_identities(g: GroupPresentation) -> dict[str, bool]:
    """Exhaustive exact identities over all pairs of elements."""
    polar = coboundary = braid = bilinear = True
    nondeg = True
    elems = g.element_list
    for u in elems:
        if u != g.identity() and all(pairing(g, u, v).value == 0 for v in elems):
            nondeg = False
        for v in elems:
            uv = g.add(u, v)
            s = s_matrix(g, u, v)
            if quadratic(g, uv) - quadratic(g, u) - quadratic(g, v) != PhaseRational(2 * pairing(g, u, v).value):
                polar = False
            if twist(g, uv) - twist(g, u) - twist(g, v) != s:
                coboundary = False
            if braiding(g, u, v) + braiding(g, v, u) != s:
                braid = False
        for v, w in itertools.islice(itertools.product(elems, elems), 64):
            lhs = pairing(g, g.add(u, v), w).value
            rhs = (pairing(g, u, w).value + pairing(g, v, w).value) % 1
            if lhs != rhs:
                bilinear = False
    return {"polarization": polar, "twist coboundary": coboundary,
            "braiding c_uv c_vu = S": braid, "bilinearity": bilinear,
            "nondegeneracy": nondeg}


def run_selftest(seed: int = 0, tol: float = DEFAULT_TOLERANCE,
                 random_pairs: int = 40) -> Iterator[CheckResult]:
    rng = random.Random(seed)

    for rows in GAUSS_MILGRAM_FORMS:
        yield gauss_milgram(matrix(rows), tol)

    for rows in PROPERTY_FORMS:
        g = cokernel(matrix(rows))
        ok_order = len(g.element_list) == abs(determinant(g.form_matrix))
        yield CheckResult(f"group order K={rows}", ok_order)
        yield CheckResult(f"lift shift K={rows}", lift_shift(g, rng))
        for name, ok in group_identities(g).items():
            yield CheckResult(f"{name} K={rows}", ok)

    worst = 0.0
    bad = 0
    for _ in range(random_pairs):
        k, l = random_even_form(rng), random_even_form(rng)
        rep = reciprocity_check(k, l, tol)
        worst = max(worst, rep.float_residual)
        bad += not rep.holds
    yield CheckResult(f"reciprocity on {random_pairs} random pairs", bad == 0,
                      f"{bad} failures, worst residual {worst:.3g}")

    first_bad = dual_bad = second_bad = 0
    for _ in range(random_pairs):
        c, l = random_coupling(rng), random_even_form(rng)
        rep = duality_check(c, l, tol)
        first_bad += not rep.first_holds
        dual_bad += not rep.dual_partition_holds
        second_bad += not rep.second_holds
    yield CheckResult(f"duality Z = |det L|^(n/2) RT_K(L), {random_pairs} pairs", first_bad == 0,
                      f"{first_bad} failures")
    yield CheckResult(f"|det K|^(m/2) RT_L(K) = dual partition function, {random_pairs} pairs",
                      dual_bad == 0, f"{dual_bad} failures")
    yield CheckResult(f"duality Z = |det K|^(m/2) RT_L(K), {random_pairs} pairs", second_bad == 0,
                      f"{second_bad} failures (magnitudes differ unless |det L|^n = |det K|^m)")

    c1, c2 = matrix([[1, 3], [-1, 2]]), matrix([[1, 2], [0, 2]])
    same = symmetrize(c1) == symmetrize(c2)
    yield CheckResult("partition depends on C only through K",
                      same and partition_function(c1, matrix([[4]])) == partition_function(c2, matrix([[4]])))

    for k_rows, l_rows in [([[2]], [[2, 1], [1, 2]]), ([[2, 1], [1, 2]], [[4, 1], [1, 2]])]:
        k, l = matrix(k_rows), matrix(l_rows)
        slides = [Slide(random_unimodular(rng, l.rows)) for _ in range(6)]
        rep = invariance_suite(k, l, slides, tol=tol)
        yield CheckResult(f"slide invariance K={k_rows} L={l_rows}", rep.holds,
                          f"max deviation {rep.max_deviation:.3g}")
        for block in ("H", "E8", "-E8"):
            rep = invariance_suite(k, l, [Stabilize(block)], tol=tol)
            yield CheckResult(f"{block} stabilization K={k_rows} L={l_rows}", rep.holds,
                              f"deviation {rep.max_deviation:.3g}")

    k1, k2, l = matrix([[2, 1], [1, 2]]), matrix([[4]]), matrix([[2, 1], [1, 4]])
    prod = rt_invariant(k1, l).to_complex() * rt_invariant(k2, l).to_complex()
    joint = rt_invariant(k1.direct_sum(k2), l).to_complex()
    yield CheckResult("RT factorization over K1 ⊕ K2", abs(prod - joint) <= tol * 100,
                      f"residual {abs(prod - joint):.3g}")


def summarize(results: list[CheckResult]) -> tuple[int, int]:
    return sum(r.passed for r in results), len(results)

