"""Exact unit phases and formal sums of them.

A phase ``e^{i pi t}`` is stored as the rational exponent ``t`` reduced to
[0, 2). A :class:`GaussSum` is a finite multiset of such phases with integer
multiplicities; nothing is converted to floating point until
:meth:`GaussSum.to_complex` is asked for.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ParseError

_TWO = Fraction(2)


@dataclass(frozen=True, order=True, init=False)
class PhaseRational:
    """The phase e^{i pi value}, value kept in [0, 2)."""

    value: Fraction

    def __init__(self, value=0):
        object.__setattr__(self, "value", Fraction(value) % _TWO)

    def __add__(self, other) -> "PhaseRational":
        return PhaseRational(self.value + _as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other) -> "PhaseRational":
        return PhaseRational(self.value - _as_fraction(other))

    def __rsub__(self, other) -> "PhaseRational":
        return PhaseRational(_as_fraction(other) - self.value)

    def __neg__(self) -> "PhaseRational":
        return PhaseRational(-self.value)

    def __mul__(self, k: int) -> "PhaseRational":
        if not isinstance(k, int):
            return NotImplemented
        return PhaseRational(self.value * k)

    __rmul__ = __mul__

    def mod1(self) -> Fraction:
        return self.value % 1

    def to_complex(self) -> complex:
        return _unit(self.value)

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"

    def __repr__(self) -> str:
        return f"PhaseRational({self})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, PhaseRational):
        return x.value
    return Fraction(x)


def _unit(t: Fraction) -> complex:
    # reduce to a small angle before calling trig for best accuracy
    t = t % _TWO
    theta = math.pi * float(t)
    return complex(math.cos(theta), math.sin(theta))


class GaussSum:
    """Exact finite sum ``sum_t m_t e^{i pi t}`` with integer multiplicities.

    Keys are exponents reduced to [0, 2); zero multiplicities are never
    stored, so two sums compare equal iff they have the same multiset of
    phases (structural equality). :meth:`equals_value` tests equality of the
    complex numbers exactly, modulo the cyclotomic relations.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        acc: dict[Fraction, int] = defaultdict(int)
        if terms:
            for t, m in terms.items():
                acc[_as_fraction(t) % _TWO] += int(m)
        self._terms = {t: m for t, m in sorted(acc.items()) if m}

    @classmethod
    def from_exponents(cls, exponents: Iterable) -> "GaussSum":
        acc: dict[Fraction, int] = defaultdict(int)
        for t in exponents:
            acc[_as_fraction(t)] += 1
        return cls(acc)

    @classmethod
    def from_numerators(cls, counts: Mapping[int, int], denominator: int) -> "GaussSum":
        """Build from exponent numerators ``a`` meaning ``e^{i pi a / denominator}``."""
        return cls({Fraction(a, denominator): m for a, m in counts.items()})

    @classmethod
    def constant(cls, n: int) -> "GaussSum":
        return cls({Fraction(0): n})

    @property
    def terms(self) -> dict[Fraction, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def term_count(self) -> int:
        """Number of unit phases summed (sum of absolute multiplicities)."""
        return sum(abs(m) for m in self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{t}: {m}" for t, m in self._terms.items())
        return f"GaussSum({{{body}}})"

    def __add__(self, other: "GaussSum") -> "GaussSum":
        acc = defaultdict(int, self._terms)
        for t, m in other._terms.items():
            acc[t] += m
        return GaussSum(acc)

    def __neg__(self) -> "GaussSum":
        return GaussSum({t: -m for t, m in self._terms.items()})

    def __sub__(self, other: "GaussSum") -> "GaussSum":
        return self + (-other)

    def __mul__(self, other) -> "GaussSum":
        if isinstance(other, int):
            return GaussSum({t: m * other for t, m in self._terms.items()})
        if isinstance(other, PhaseRational):
            return self.rotate(other)
        acc: dict[Fraction, int] = defaultdict(int)
        for s, a in self._terms.items():
            for t, b in other._terms.items():
                acc[(s + t) % _TWO] += a * b
        return GaussSum(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GaussSum":
        if k < 0:
            raise ValueError("negative powers are not exact in a GaussSum")
        out = GaussSum.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def rotate(self, phase) -> "GaussSum":
        """Multiply by e^{i pi phase}."""
        shift = _as_fraction(phase)
        return GaussSum({t + shift: m for t, m in self._terms.items()})

    def conjugate(self) -> "GaussSum":
        return GaussSum({-t: m for t, m in self._terms.items()})

    def to_complex(self) -> complex:
        """Float view; summation over sorted keys with fsum, so deterministic."""
        re = []
        im = []
        for t, m in self._terms.items():
            z = _unit(t)
            re.append(m * z.real)
            im.append(m * z.imag)
        return complex(math.fsum(re), math.fsum(im))

    # -- exact value comparison ------------------------------------------------

    def conductor(self) -> int:
        """Smallest M with every phase an M-th root of unity."""
        return math.lcm(1, *(2 * t.denominator for t in self._terms)) if self._terms else 1

    def cyclotomic_coefficients(self, order: int | None = None) -> tuple[int, ...]:
        """Coordinates of the value in the power basis of Q(zeta_order).

        The exponent vector is reduced modulo the cyclotomic polynomial of
        the given order, which is the canonical form of the value.
        """
        if order is None:
            order = self.conductor()
        poly = [0] * order
        for t, m in self._terms.items():
            k = t * order / 2
            if k.denominator != 1:
                raise ValueError(f"phase {t} is not a {order}-th root of unity")
            poly[int(k) % order] += m
        return _reduce_mod_cyclotomic(poly, order)

    def is_zero_value(self) -> bool:
        return not any(self.cyclotomic_coefficients())

    def equals_value(self, other: "GaussSum") -> bool:
        """Exact equality of the complex values."""
        return (self - other).is_zero_value()

    # -- text form ---------------------------------------------------------------

    def serialize(self) -> str:
        lines = [f"terms={len(self._terms)}"]
        lines += [f"{t.numerator}/{t.denominator} {m}" for t, m in self._terms.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "GaussSum":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("terms="):
            raise ParseError("missing 'terms=<count>' header", line=1)
        count = int(lines[0][len("terms="):])
        body = [ln for ln in lines[1:] if "=" not in ln]
        if len(body) != count:
            raise ParseError(f"expected {count} terms, found {len(body)}")
        acc = {}
        for n, ln in enumerate(body, start=2):
            try:
                t, m = ln.split()
                acc[Fraction(t)] = int(m)
            except ValueError:
                raise ParseError(f"bad term line {ln!r}", line=n) from None
        return cls(acc)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_order, highest degree first."""
    from sympy import Symbol, cyclotomic_poly

    poly = cyclotomic_poly(order, Symbol("x"), polys=True)
    return tuple(int(c) for c in poly.all_coeffs())


def _reduce_mod_cyclotomic(poly: list[int], order: int) -> tuple[int, ...]:
    # poly[k] is the coefficient of x^k
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    low = phi[::-1]  # low[k] is the coefficient of x^k, low[deg] == 1
    p = list(poly)
    for k in range(len(p) - 1, deg - 1, -1):
        c = p[k]
        if c:
            shift = k - deg
            for j in range(deg + 1):
                p[shift + j] -= c * low[j]
    return tuple(p[:deg])


@dataclass(frozen=True)
class InvariantValue:
    """``rational * sqrt(radicand) * e^{i pi phase} * sum``, kept exact."""

    sum: GaussSum
    prefactor_phase: PhaseRational
    prefactor_rational: Fraction
    prefactor_radicand: int

    def __post_init__(self):
        if self.prefactor_radicand < 1:
            raise ValueError("radicand must be a positive integer")
        object.__setattr__(self, "prefactor_rational", Fraction(self.prefactor_rational))

    def magnitude(self) -> float:
        return float(self.prefactor_rational) * math.sqrt(self.prefactor_radicand)

    def prefactor(self) -> complex:
        return self.magnitude() * self.prefactor_phase.to_complex()

    def to_complex(self) -> complex:
        return self.prefactor() * self.sum.to_complex()

    def term_count(self) -> int:
        return self.sum.term_count()

    def __mul__(self, other: "InvariantValue") -> "InvariantValue":
        return InvariantValue(
            self.sum * other.sum,
            self.prefactor_phase + other.prefactor_phase,
            self.prefactor_rational * other.prefactor_rational,
            self.prefactor_radicand * other.prefactor_radicand,
        )

    def serialize(self) -> str:
        ph = self.prefactor_phase.value
        r = self.prefactor_rational
        return (
            f"prefactor_phase={ph.numerator}/{ph.denominator}\n"
            f"prefactor_rational={r.numerator}/{r.denominator}\n"
            f"prefactor_radicand={self.prefactor_radicand}\n"
            + self.sum.serialize()
        )

    @classmethod
    def parse(cls, text: str) -> "InvariantValue":
        fields = {}
        rest = []
        for ln in text.splitlines():
            key, sep, val = ln.strip().partition("=")
            if sep and key.startswith("prefactor_"):
                fields[key] = val
            elif ln.strip():
                rest.append(ln)
        try:
            return cls(
                GaussSum.parse("\n".join(rest)),
                PhaseRational(Fraction(fields["prefactor_phase"])),
                Fraction(fields["prefactor_rational"]),
                int(fields["prefactor_radicand"]),
            )
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]}") from None


def scaled_magnitude(numer_base: int, numer_exp: int, denom_base: int, denom_exp: int):
    """Exact ``numer_base^(numer_exp/2) / denom_base^(denom_exp/2)`` as (rational, radicand)."""
    rational = Fraction(numer_base ** (numer_exp // 2))
    radicand = 1
    if numer_exp % 2:
        radicand *= numer_base
    # b^{-e/2} = b^{-ceil(e/2)} * sqrt(b^{e mod 2})
    rational /= denom_base ** ((denom_exp + 1) // 2)
    if denom_exp % 2:
        radicand *= denom_base
    return rational, radicand
