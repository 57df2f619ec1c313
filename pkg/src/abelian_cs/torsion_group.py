"""Finite abelian groups Z^n / K Z^n with their linking and quadratic forms.

Elements are stored by coordinates in the invariant-factor basis coming from
the Smith normal form of K; the canonical lift of ``(u_1, ..., u_r)`` is
``sum_i u_i g_i`` with ``0 <= u_i < N_i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .errors import Degenerate, ElementMismatch, NonSquare, NonSymmetric, NotEven, SizeMismatch
from .exact_linalg import (
    IntMatrix,
    RationalMatrix,
    SmithDecomposition,
    check_even_diagonal,
    determinant,
    is_even_form,
    rational_inverse,
    smith_normal_form,
)
from .phases import PhaseRational


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]
    canonical_lift: tuple[int, ...] = field(compare=False)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, eq=False)
class GroupPresentation:
    """Invariant-factor presentation of ``Z^n / K Z^n``.

    ``even`` is False for pairing-only presentations built from a symmetric
    matrix with an odd diagonal entry; quadratic evaluations refuse those.
    """

    source_rank: int
    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[tuple[int, ...], ...]
    smith: SmithDecomposition
    form_matrix: IntMatrix
    inverse_form: RationalMatrix
    even: bool
    # rows of U for the nontrivial factors: coordinate i of a lift x is row_i . x mod N_i
    _coord_rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def denominator(self) -> int:
        """Common denominator for every pairing and quadratic value (|det K|)."""
        return abs(determinant(self.form_matrix))

    def identity(self) -> GroupElement:
        return self.element((0,) * self.rank)

    def generators(self) -> list[GroupElement]:
        out = []
        for i in range(self.rank):
            c = [0] * self.rank
            c[i] = 1
            out.append(self.element(c))
        return out

    def element(self, coords: Sequence[int]) -> GroupElement:
        """Element with the given coordinates (must lie in [0, N_i))."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank or any(
            not 0 <= c < n for c, n in zip(coords, self.invariant_factors)
        ):
            raise ElementMismatch(f"coordinates {coords} do not fit factors {self.invariant_factors}")
        lift = [0] * self.source_rank
        for c, g in zip(coords, self.generator_lifts):
            if c:
                for k in range(self.source_rank):
                    lift[k] += c * g[k]
        return GroupElement(coords, tuple(lift))

    def reduce(self, lift: Sequence[int]) -> GroupElement:
        """Element represented by an arbitrary integer vector."""
        if len(lift) != self.source_rank:
            raise SizeMismatch(f"lift has length {len(lift)}, expected {self.source_rank}")
        coords = tuple(
            sum(a * b for a, b in zip(row, lift)) % n
            for row, n in zip(self._coord_rows, self.invariant_factors)
        )
        return self.element(coords)

    def add(self, u: GroupElement, v: GroupElement) -> GroupElement:
        self.check(u)
        self.check(v)
        return self.element(tuple((a + b) % n for a, b, n in
                                  zip(u.coords, v.coords, self.invariant_factors)))

    def neg(self, u: GroupElement) -> GroupElement:
        self.check(u)
        return self.element(tuple(-a % n for a, n in zip(u.coords, self.invariant_factors)))

    def scale(self, k: int, u: GroupElement) -> GroupElement:
        self.check(u)
        return self.element(tuple(k * a % n for a, n in zip(u.coords, self.invariant_factors)))

    def check(self, u: GroupElement):
        if len(u.coords) != self.rank or any(
            not 0 <= c < n for c, n in zip(u.coords, self.invariant_factors)
        ):
            raise ElementMismatch(f"element {u} does not belong to group {self.invariant_factors}")

    def index_of(self, u: GroupElement) -> int:
        """Position of u in :meth:`elements` order."""
        idx = 0
        for c, n in zip(u.coords, self.invariant_factors):
            idx = idx * n + c
        return idx

    def elements(self) -> Iterator[GroupElement]:
        """All elements, mixed-radix order with the last coordinate fastest."""
        for coords in itertools.product(*(range(n) for n in self.invariant_factors)):
            yield self.element(coords)

    # -- cached integer tables used by the big sums ----------------------------

    @cached_property
    def element_list(self) -> tuple[GroupElement, ...]:
        return tuple(self.elements())

    @cached_property
    def quadratic_numerators(self) -> tuple[int, ...]:
        """``a_u`` with Q(u) = a_u / denominator mod 2, canonical lifts."""
        den = self.denominator
        out = []
        for u in self.element_list:
            q = self.inverse_form.bilinear(u.canonical_lift, u.canonical_lift) * den
            out.append(int(q) % (2 * den))
        return tuple(out)

    @cached_property
    def pairing_numerators(self) -> tuple[tuple[int, ...], ...]:
        """``b_uv`` with Q(u, v) = b_uv / denominator mod 1."""
        den = self.denominator
        kinv_lifts = []
        for u in self.element_list:
            lift = u.canonical_lift
            kinv_lifts.append([
                sum(self.inverse_form[i, j] * lift[j] for j in range(self.source_rank)) * den
                for i in range(self.source_rank)
            ])
        rows = []
        for u in self.element_list:
            lu = u.canonical_lift
            rows.append(tuple(
                int(sum(a * b for a, b in zip(lu, kv))) % den for kv in kinv_lifts
            ))
        return tuple(rows)


def cokernel(k_mat: IntMatrix, require_even: bool = True) -> GroupPresentation:
    """Presentation of ``Z^n / K Z^n`` from the Smith normal form of K.

    With ``require_even=False`` any symmetric nondegenerate matrix is
    accepted; the result only supports pairings if K is odd.
    """
    if not k_mat.is_square:
        raise NonSquare(f"matrix is {k_mat.rows}x{k_mat.cols}, expected square")
    if not k_mat.is_symmetric():
        raise NonSymmetric("form is not symmetric")
    if require_even:
        check_even_diagonal(k_mat)
    if determinant(k_mat) == 0:
        raise Degenerate("form is degenerate (determinant 0)")
    snf = smith_normal_form(k_mat)
    n = k_mat.rows
    diag = snf.diagonal
    u_inv = rational_inverse(snf.u_mat).to_int()
    keep = [i for i in range(n) if diag[i] != 1]
    factors = tuple(diag[i] for i in keep)
    lifts = tuple(tuple(u_inv[r, i] for r in range(n)) for i in keep)
    coord_rows = tuple(snf.u_mat.row(i) for i in keep)
    return GroupPresentation(
        source_rank=n,
        invariant_factors=factors,
        generator_lifts=lifts,
        smith=snf,
        form_matrix=k_mat,
        inverse_form=rational_inverse(k_mat),
        even=is_even_form(k_mat),
        _coord_rows=coord_rows,
    )


def enumerate_group(g: GroupPresentation) -> Iterator[GroupElement]:
    return g.elements()


def pairing_of_lifts(g: GroupPresentation, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Raw rational ``<x, K^{-1} y>`` for integer vectors (no reduction)."""
    return g.inverse_form.bilinear(x, y)


def pairing(g: GroupPresentation, u: GroupElement, v: GroupElement) -> PhaseRational:
    """Linking form Q_K(u, v) mod 1, returned as a PhaseRational in [0, 1)."""
    g.check(u)
    g.check(v)
    return PhaseRational(pairing_of_lifts(g, u.canonical_lift, v.canonical_lift) % 1)


def quadratic(g: GroupPresentation, u: GroupElement) -> PhaseRational:
    """Q_K(u) = <u, K^{-1} u> on the canonical lift, mod 2."""
    if not g.even:
        i = next(i for i in range(g.source_rank) if g.form_matrix[i, i] % 2)
        raise NotEven(i, "quadratic form needs an even presentation")
    g.check(u)
    return PhaseRational(pairing_of_lifts(g, u.canonical_lift, u.canonical_lift))


def tensor_quadratic(form: IntMatrix, g: GroupPresentation,
                     elements: Sequence[GroupElement]) -> PhaseRational:
    """``sum_{i,j} form_ij Q(x_i, x_j)`` mod 2 for a tuple of group elements.

    ``form`` must be even symmetric; diagonal terms use one lift per element.
    """
    if not form.is_square or form.rows != len(elements):
        raise SizeMismatch(f"form is {form.rows}x{form.cols} but {len(elements)} elements given")
    if not form.is_symmetric():
        raise NonSymmetric("tensor form is not symmetric")
    check_even_diagonal(form)
    total = Fraction(0)
    m = form.rows
    for i in range(m):
        g.check(elements[i])
        xi = elements[i].canonical_lift
        if form[i, i]:
            total += form[i, i] * pairing_of_lifts(g, xi, xi)
        for j in range(i + 1, m):
            if form[i, j]:
                total += 2 * form[i, j] * pairing_of_lifts(g, xi, elements[j].canonical_lift)
    return PhaseRational(total)
