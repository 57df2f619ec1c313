"""Acceptance criteria, one test each; a summary line per criterion is printed at the end."""

import cmath
import math
import random
import time
from fractions import Fraction

import pytest

from abelian_cs import (
    GaussSum,
    NotEven,
    Slide,
    Stabilize,
    check_even_symmetric_nondegenerate,
    cokernel,
    delta,
    determinant,
    duality_check,
    invariance_suite,
    lens_example,
    matrix,
    partition_function,
    reciprocity_check,
    rt_invariant,
    signature,
)
from abelian_cs.moves import random_unimodular
from abelian_cs.sampling import random_coupling, random_even_form
from abelian_cs.selftest import GAUSS_MILGRAM_FORMS, PROPERTY_FORMS, group_identities, lift_shift

TOL = 1e-9
RECIPROCITY_SEED = 2024
DUALITY_SEED = 2025
SLIDE_SEED = 2026


def test_criterion_1_gauss_milgram(criterion):
    start = time.perf_counter()
    bad = []
    worst_arg = 0.0
    for rows in GAUSS_MILGRAM_FORMS:
        k = matrix(rows)
        d = delta(cokernel(k))
        det = abs(determinant(k))
        exact_norm = (d * d.conjugate()).equals_value(GaussSum.constant(det))
        arg_err = abs(cmath.phase(d.to_complex() * cmath.exp(1j * math.pi * signature(k) / 4)))
        worst_arg = max(worst_arg, arg_err)
        if not exact_norm or arg_err > TOL:
            bad.append(rows)
    elapsed = time.perf_counter() - start
    line = criterion(1, "Gauss-Milgram on 7 forms", not bad,
                     f"{len(bad)} failures, worst arg error {worst_arg:.2e}", elapsed, 1.0)
    assert line.passed, line


def test_criterion_2_reciprocity(criterion):
    rng = random.Random(RECIPROCITY_SEED)
    start = time.perf_counter()
    failures, worst = 0, 0.0
    for _ in range(200):
        rep = reciprocity_check(random_even_form(rng), random_even_form(rng), tol=TOL)
        failures += not rep.holds
        worst = max(worst, rep.float_residual)
    elapsed = time.perf_counter() - start
    line = criterion(2, "reciprocity on 200 seeded pairs", failures == 0,
                     f"{failures} failures, worst residual {worst:.2e}", elapsed, 60.0)
    assert line.passed, line


def test_criterion_3_lens_golden(criterion):
    start = time.perf_counter()
    checks = []
    r11, r12 = lens_example(1, 1), lens_example(1, 2)
    checks.append(abs(r11.z_value - 1) < TOL and abs(r11.rt_value - 1) < TOL)
    checks.append(abs(r12.z_value + 2) < TOL and abs(r12.rt_value + 1) < TOL)
    worst = max(lens_example(k, p).residual for k in (1, 2, 3) for p in (1, 2, 3))
    checks.append(worst < TOL)
    elapsed = time.perf_counter() - start
    line = criterion(3, "lens space golden values and Z = p RT", all(checks),
                     f"golden (1,1) {checks[0]}, (1,2) {checks[1]}, worst residual {worst:.2e}",
                     elapsed, 5.0)
    assert line.passed, line


def _u1_rt_printed(k, p):
    return cmath.exp(-1j * math.pi / 4) / math.sqrt(2 * k) * sum(
        cmath.exp(2j * math.pi * p * u * u / (4 * k)) for u in range(2 * k))


def _block_rt_printed(k, p):
    total = sum(cmath.exp(2j * math.pi * p * (u1 * u1 / k + u1 * u2 / k + u2 * u2 / (3 * k)
                                              + u3 * u3 / (4 * k)))
                for u1 in range(k) for u2 in range(3 * k) for u3 in range(2 * k))
    return cmath.exp(-0.75j * math.pi) / math.sqrt(6 * k ** 3) * total


def _u1_z_printed(k, p):
    return sum(cmath.exp(-2j * math.pi * k * a * a / p) for a in range(p))


def test_criterion_4_block_factorization(criterion):
    start = time.perf_counter()
    worst = 0.0
    l = matrix([[2]])
    p = 2
    for k in (1, 2):
        c3 = matrix([[k, k, 0], [0, k, 0], [0, 0, k]])
        c2, c1 = matrix([[k, k], [0, k]]), matrix([[k]])
        lens = lens_example(k, p)
        z3 = partition_function(c3, l).to_complex()
        rt3 = rt_invariant(c3 + c3.transpose(), l).to_complex()
        residuals = [
            z3 - partition_function(c2, l).to_complex() * partition_function(c1, l).to_complex(),
            z3 - lens.z_value * _u1_z_printed(k, p),
            rt3 - rt_invariant(c2 + c2.transpose(), l).to_complex()
            * rt_invariant(c1 + c1.transpose(), l).to_complex(),
            rt3 - lens.rt_value * _u1_rt_printed(k, p),
            rt3 - _block_rt_printed(k, p),
        ]
        worst = max(worst, *(abs(r) for r in residuals))
    elapsed = time.perf_counter() - start
    line = criterion(4, "U(1)^3 block factorization, k in {1,2}, L=[[2]]", worst < TOL,
                     f"worst residual {worst:.2e}", elapsed, 5.0)
    assert line.passed, line


def test_criterion_5_duality(criterion):
    rng = random.Random(DUALITY_SEED)
    start = time.perf_counter()
    first_bad = second_bad = 0
    worst_first = worst_second = 0.0
    for _ in range(50):
        rep = duality_check(random_coupling(rng), random_even_form(rng), tol=TOL)
        first_bad += not rep.first_holds
        second_bad += not rep.second_holds
        worst_first = max(worst_first, rep.residual_kl)
        worst_second = max(worst_second, rep.residual_lk)
    elapsed = time.perf_counter() - start
    line = criterion(5, "duality Z = |det L|^(n/2) RT_K(L) = |det K|^(m/2) RT_L(K) on 50 pairs",
                     first_bad == 0 and second_bad == 0,
                     f"first equality {first_bad} failures (worst {worst_first:.2e}); "
                     f"second equality {second_bad} failures (worst {worst_second:.2e})",
                     elapsed, 60.0)
    assert line.passed, line


def test_criterion_6_move_invariance(criterion):
    rng = random.Random(SLIDE_SEED)
    start = time.perf_counter()
    problems = []
    worst = 0.0
    for k_rows in ([[2]], [[2, 1], [1, 2]]):
        for l_rows in ([[2]], [[4]]):
            k, l = matrix(k_rows), matrix(l_rows)
            slides = [Slide(random_unimodular(rng, l.rows)) for _ in range(20)]
            rep = invariance_suite(k, l, slides, tol=TOL)
            if not all(s.exact_match for s in rep.steps):
                problems.append(f"slide K={k_rows} L={l_rows}")
            for block in ("H", "E8"):
                rep = invariance_suite(k, l, [Stabilize(block)], tol=TOL)
                worst = max(worst, rep.max_deviation)
                if rep.max_deviation > TOL:
                    problems.append(f"{block} K={k_rows} L={l_rows}")
    elapsed = time.perf_counter() - start
    line = criterion(6, "slide (exact) and H/E8 stabilization invariance", not problems,
                     f"failures {problems or 'none'}, worst stabilization deviation {worst:.2e}",
                     elapsed, 120.0)
    assert line.passed, line


def test_criterion_7_property_suite(criterion):
    rng = random.Random(0)
    start = time.perf_counter()
    failed = []
    for rows in PROPERTY_FORMS:
        g = cokernel(matrix(rows))
        assert g.order <= 24
        if not lift_shift(g, rng):
            failed.append(f"lift shift {rows}")
        ids = group_identities(g)
        for name in ("polarization", "twist coboundary", "braiding c_uv c_vu = S"):
            if not ids[name]:
                failed.append(f"{name} {rows}")
    elapsed = time.perf_counter() - start
    line = criterion(7, f"well-definedness suite on {len(PROPERTY_FORMS)} groups", not failed,
                     f"failures {failed or 'none'}", elapsed, 10.0)
    assert line.passed, line


def test_criterion_8_odd_rejection(criterion):
    start = time.perf_counter()
    try:
        check_even_symmetric_nondegenerate(matrix([[1, 0], [0, 3]]))
        ok, detail = False, "accepted"
    except NotEven as exc:
        ok, detail = exc.index == 0, f"NotEven at index {exc.index}"
    elapsed = time.perf_counter() - start
    line = criterion(8, "odd K = [[1,0],[0,3]] rejected", ok, detail, elapsed, 1.0)
    assert line.passed, line
