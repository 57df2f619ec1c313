"""Partition functions, twisted-category data and abelian RT invariants.

All big sums are accumulated exactly as :class:`GaussSum` multisets of phase
exponents; floating point only enters through ``to_complex`` when residuals
are reported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, NonSymmetric, RouteMismatch, SizeMismatch
from .exact_linalg import (
    IntMatrix,
    check_even_diagonal,
    check_even_symmetric_nondegenerate,
    determinant,
    signature,
    symmetrize,
)
from .phases import GaussSum, InvariantValue, PhaseRational, scaled_magnitude
from .torsion_group import (
    GroupElement,
    GroupPresentation,
    cokernel,
    pairing,
    quadratic,
)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_BUDGET = 10**7


def _phase_sum(size: int, m: int, diag_coef, pair_coef, diag_table, pair_table,
               modulus: int, budget: int) -> np.ndarray:
    """Histogram of ``sum_i diag_coef[i] D[u_i] + sum_{i<j} pair_coef[i][j] P[u_i][u_j]``.

    Runs over all ``size**m`` tuples; result is a count per exponent
    numerator in [0, modulus).
    """
    total = size**m
    if total > budget:
        raise BudgetExceeded(f"{size}^{m} = {total} terms exceeds budget {budget}")
    counts = np.zeros(modulus, dtype=np.int64)
    if m == 0:
        counts[0] = 1
        return counts
    dtab = np.asarray(diag_table, dtype=np.int64) % modulus
    ptab = np.asarray(pair_table, dtype=np.int64) % modulus
    chosen = [0] * m
    last = m - 1
    last_diag = (diag_coef[last] * dtab) % modulus

    def rec(k: int, acc: int):
        if k == last:
            vec = last_diag + acc
            for i in range(last):
                c = pair_coef[i][last]
                if c:
                    vec = vec + c * ptab[chosen[i]]
            counts[:] += np.bincount(vec % modulus, minlength=modulus)
            return
        for u in range(size):
            e = acc + diag_coef[k] * diag_table[u]
            for i in range(k):
                c = pair_coef[i][k]
                if c:
                    e += c * pair_table[chosen[i]][u]
            chosen[k] = u
            rec(k + 1, e % modulus)

    rec(0, 0)
    return counts


def _histogram_to_sum(counts: np.ndarray, denominator: int, sign: int) -> GaussSum:
    modulus = len(counts)
    return GaussSum({
        Fraction(sign * a % modulus, denominator): int(c)
        for a, c in enumerate(counts.tolist()) if c
    })


def form_gauss_sum(form: IntMatrix, g: GroupPresentation, sign: int = 1,
                   budget: int = DEFAULT_BUDGET) -> GaussSum:
    """``sum_{U in g^m} e^{sign * i pi (form ⊗ Q)(U)}`` for an even symmetric m x m form."""
    if not form.is_square:
        raise SizeMismatch("tensor form must be square")
    if not form.is_symmetric():
        raise NonSymmetric("tensor form is not symmetric")
    check_even_diagonal(form)
    m = form.rows
    den = g.denominator
    diag = [form[i, i] for i in range(m)]
    pair = [[2 * form[i, j] if j > i else 0 for j in range(m)] for i in range(m)]
    counts = _phase_sum(g.order, m, diag, pair, g.quadratic_numerators,
                        g.pairing_numerators, 2 * den, budget)
    return _histogram_to_sum(counts, den, sign)


def partition_function(c_mat: IntMatrix, l_mat: IntMatrix,
                       budget: int = DEFAULT_BUDGET) -> GaussSum:
    """Z_C: sum over (Z^m / L Z^m)^n of e^{-i pi (K ⊗ L^{-1})(X)}, K = C + C^T."""
    k_mat = symmetrize(c_mat)
    check_even_symmetric_nondegenerate(l_mat)
    return form_gauss_sum(k_mat, cokernel(l_mat), sign=-1, budget=budget)


def twist(g: GroupPresentation, u: GroupElement) -> PhaseRational:
    """Exponent of theta_u = e^{i pi Q_K(u)}."""
    return quadratic(g, u)


def s_matrix(g: GroupPresentation, u: GroupElement, v: GroupElement) -> PhaseRational:
    """Exponent of S_{u,v} = e^{2 i pi Q_K(u, v)}."""
    if not g.even:
        quadratic(g, u)  # raises NotEven
    return PhaseRational(2 * pairing(g, u, v).value)


def braiding(g: GroupPresentation, u: GroupElement, v: GroupElement) -> PhaseRational:
    """Exponent of c_{u,v} built from generator twists and S-entries.

    Uses the generator-basis coordinates of u and v, not their lifts.
    """
    g.check(u)
    g.check(v)
    gens = g.generators()
    total = PhaseRational(0)
    for i, gi in enumerate(gens):
        if u.coords[i] and v.coords[i]:
            total += twist(g, gi) * (u.coords[i] * v.coords[i])
    for k in range(len(gens)):
        for l in range(k + 1, len(gens)):
            if u.coords[k] and v.coords[l]:
                total += s_matrix(g, gens[k], gens[l]) * (u.coords[k] * v.coords[l])
    return total


def delta(g: GroupPresentation) -> GaussSum:
    """Delta_K = sum_u e^{-i pi Q_K(u)}."""
    return GaussSum.from_exponents(-twist(g, u).value for u in g.elements())


def global_dimension(g: GroupPresentation) -> int:
    """D_K^2 = |G_K|; returned as the radicand."""
    return g.order


def gauss_milgram_value(k_mat: IntMatrix) -> complex:
    """e^{-i pi sigma(K)/4} sqrt(|det K|)."""
    return cmath.exp(-1j * math.pi * signature(k_mat) / 4) * math.sqrt(abs(determinant(k_mat)))


def _rt_product_route(g: GroupPresentation, l_mat: IntMatrix, budget: int) -> GaussSum:
    # prod_i theta_{u_i}^{L_ii} prod_{k<l} S_{u_k,u_l}^{L_kl}, tables from twist/s_matrix
    den = g.denominator
    elems = g.element_list
    theta = [int(twist(g, u).value * den) for u in elems]
    smat = [[int(s_matrix(g, u, v).value * den) for v in elems] for u in elems]
    m = l_mat.rows
    diag = [l_mat[i, i] for i in range(m)]
    pair = [[l_mat[i, j] if j > i else 0 for j in range(m)] for i in range(m)]
    counts = _phase_sum(g.order, m, diag, pair, theta, smat, 2 * den, budget)
    return _histogram_to_sum(counts, den, 1)


def rt_invariant(k_mat: IntMatrix, l_mat: IntMatrix, budget: int = DEFAULT_BUDGET,
                 cross_check: bool = True) -> InvariantValue:
    """Abelian RT invariant RT_K(L) in exact form.

    The sum is ``sum_{U in G_K^m} e^{i pi (L ⊗ Q_K)(U)}`` and the prefactor
    is ``e^{-i pi sigma(K) sigma(L)/4} |det K|^{-m/2}``. With ``cross_check``
    the twist/S-matrix product form is evaluated as well and must give the
    identical GaussSum; the Delta^sigma(L) D^(-sigma(L)-m) front factor is
    compared numerically against the closed form.
    """
    check_even_symmetric_nondegenerate(k_mat)
    check_even_symmetric_nondegenerate(l_mat)
    g = cokernel(k_mat)
    m = l_mat.rows
    sum_b = form_gauss_sum(l_mat, g, sign=1, budget=budget)
    sig_k, sig_l = signature(k_mat), signature(l_mat)
    det_k = abs(determinant(k_mat))
    rational, radicand = scaled_magnitude(1, 0, det_k, m)
    value = InvariantValue(sum_b, PhaseRational(Fraction(-sig_k * sig_l, 4)), rational, radicand)
    if cross_check:
        sum_a = _rt_product_route(g, l_mat, budget)
        if sum_a != sum_b:
            raise RouteMismatch("twist/S product sum differs from the (L⊗Q_K) sum")
        front = delta(g).to_complex() ** sig_l * math.sqrt(g.order) ** (-sig_l - m)
        if abs(front - value.prefactor()) > DEFAULT_TOLERANCE * max(1.0, abs(front)):
            raise RouteMismatch(f"front factor {front} != closed form {value.prefactor()}")
    return value


def _threshold(tol: float, terms: int) -> float:
    return tol * (1 + terms)


@dataclass(frozen=True)
class ReciprocityReport:
    lhs: GaussSum
    rhs: InvariantValue
    float_residual: float
    terms: int
    tolerance: float

    @property
    def threshold(self) -> float:
        return _threshold(self.tolerance, self.terms)

    @property
    def holds(self) -> bool:
        return self.float_residual <= self.threshold


def reciprocity_check(k_mat: IntMatrix, l_mat: IntMatrix, tol: float = DEFAULT_TOLERANCE,
                      budget: int = DEFAULT_BUDGET) -> ReciprocityReport:
    """Evaluate both sides of the tensor reciprocity identity for (K, L)."""
    check_even_symmetric_nondegenerate(k_mat)
    check_even_symmetric_nondegenerate(l_mat)
    n, m = k_mat.rows, l_mat.rows
    lhs = form_gauss_sum(k_mat, cokernel(l_mat), sign=-1, budget=budget)
    rhs_sum = form_gauss_sum(l_mat, cokernel(k_mat), sign=1, budget=budget)
    phase = PhaseRational(Fraction(-signature(k_mat) * signature(l_mat), 4))
    rational, radicand = scaled_magnitude(abs(determinant(l_mat)), n, abs(determinant(k_mat)), m)
    rhs = InvariantValue(rhs_sum, phase, rational, radicand)
    residual = abs(lhs.to_complex() - rhs.to_complex())
    return ReciprocityReport(lhs, rhs, residual, lhs.term_count() + rhs.term_count(), tol)


@dataclass(frozen=True)
class DualityReport:
    z: GaussSum
    rt_kl: InvariantValue
    rt_lk: InvariantValue
    z_via_rt_kl: complex
    z_via_rt_lk: complex
    residual_kl: float
    residual_lk: float
    # |det K|^{m/2} RT_L(K) against the dual theory (coupling L, linking form Q_K)
    dual_partition: GaussSum
    dual_partition_residual: float
    terms: int
    tolerance: float

    @property
    def threshold(self) -> float:
        return _threshold(self.tolerance, self.terms)

    @property
    def first_holds(self) -> bool:
        return self.residual_kl <= self.threshold

    @property
    def second_holds(self) -> bool:
        return self.residual_lk <= self.threshold

    @property
    def dual_partition_holds(self) -> bool:
        return self.dual_partition_residual <= self.threshold

    @property
    def holds(self) -> bool:
        return self.first_holds and self.second_holds


def duality_check(c_mat: IntMatrix, l_mat: IntMatrix, tol: float = DEFAULT_TOLERANCE,
                  budget: int = DEFAULT_BUDGET) -> DualityReport:
    """Compare Z_C with |det L|^{n/2} RT_K(L) and with |det K|^{m/2} RT_L(K)."""
    k_mat = check_even_symmetric_nondegenerate(symmetrize(c_mat))
    check_even_symmetric_nondegenerate(l_mat)
    n, m = k_mat.rows, l_mat.rows
    det_k, det_l = abs(determinant(k_mat)), abs(determinant(l_mat))
    z = partition_function(c_mat, l_mat, budget=budget)
    rt_kl = rt_invariant(k_mat, l_mat, budget=budget)
    rt_lk = rt_invariant(l_mat, k_mat, budget=budget)
    via_kl = det_l ** (n / 2) * rt_kl.to_complex()
    via_lk = det_k ** (m / 2) * rt_lk.to_complex()
    zc = z.to_complex()
    dual = form_gauss_sum(l_mat, cokernel(k_mat), sign=-1, budget=budget)
    terms = z.term_count() + rt_kl.term_count() + rt_lk.term_count()
    return DualityReport(
        z=z, rt_kl=rt_kl, rt_lk=rt_lk,
        z_via_rt_kl=via_kl, z_via_rt_lk=via_lk,
        residual_kl=abs(zc - via_kl), residual_lk=abs(zc - via_lk),
        dual_partition=dual,
        dual_partition_residual=abs(dual.to_complex() - via_lk),
        terms=terms, tolerance=tol,
    )


@dataclass(frozen=True)
class LensReport:
    k: int
    p: int
    z: GaussSum
    rt: InvariantValue
    residual: float

    @property
    def z_value(self) -> complex:
        return self.z.to_complex()

    @property
    def rt_value(self) -> complex:
        return self.rt.to_complex()


def lens_example(k: int, p: int) -> LensReport:
    """U(1)^2 theory with coupling [[k, k], [0, k]] on the lens space L(p, 1).

    Z = sum_{a1, a2 < p} e^{-2 i pi (k/p)(a1^2 + a1 a2 + a2^2)}
    RT = (-i / sqrt(3 k^2)) sum_{u1 < k, u2 < 3k} e^{2 i pi (p/3k)(3 u1^2 + 3 u1 u2 + u2^2)}
    """
    if k < 1 or p < 1:
        raise ValueError("k and p must be positive")
    z = GaussSum.from_exponents(
        Fraction(-2 * k * (a1 * a1 + a1 * a2 + a2 * a2), p)
        for a1 in range(p) for a2 in range(p)
    )
    rt_sum = GaussSum.from_exponents(
        Fraction(2 * p * (3 * u1 * u1 + 3 * u1 * u2 + u2 * u2), 3 * k)
        for u1 in range(k) for u2 in range(3 * k)
    )
    # -i / sqrt(3 k^2) = e^{-i pi / 2} * sqrt(3) / (3k)
    rt = InvariantValue(rt_sum, PhaseRational(Fraction(-1, 2)), Fraction(1, 3 * k), 3)
    residual = abs(z.to_complex() - p * rt.to_complex())
    return LensReport(k, p, z, rt, residual)
