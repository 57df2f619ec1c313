"""Even-preserving Kirby-type moves on linking matrices.

Two kinds of move are supported: unimodular congruence ``L -> P^T L P``
(handle slides and basis changes) and stabilization by one of the even
unimodular blocks H, E8, -E8.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import NotUnimodular, ParseError, SizeMismatch
from .exact_linalg import (
    IntMatrix,
    check_even_symmetric_nondegenerate,
    determinant,
    read_matrix,
)
from .invariants import DEFAULT_BUDGET, DEFAULT_TOLERANCE, rt_invariant

HYPERBOLIC = IntMatrix.from_rows([[0, 1], [1, 0]])

# Cartan matrix of E8 (Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 on node 4)
_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
E8 = IntMatrix.from_rows([
    [2 if i == j else (-1 if (i, j) in _E8_EDGES or (j, i) in _E8_EDGES else 0)
     for j in range(8)]
    for i in range(8)
])

BLOCKS = {"H": HYPERBOLIC, "E8": E8, "-E8": -E8}


@dataclass(frozen=True)
class Slide:
    p: IntMatrix

    def __post_init__(self):
        if not self.p.is_square or abs(determinant(self.p)) != 1:
            raise NotUnimodular("slide matrix must be square with determinant +-1")

    def __str__(self):
        return "slide " + ";".join(" ".join(map(str, r)) for r in self.p.to_rows())


@dataclass(frozen=True)
class Stabilize:
    block: str

    def __post_init__(self):
        if self.block not in BLOCKS:
            raise ValueError(f"unknown block {self.block!r}; expected one of {sorted(BLOCKS)}")

    def __str__(self):
        return f"stab {self.block}"


Move = Union[Slide, Stabilize]


@dataclass(frozen=True)
class MoveSequence:
    moves: tuple[Move, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)


def apply_slide(l_mat: IntMatrix, p: IntMatrix) -> IntMatrix:
    """P^T L P for unimodular P."""
    if not p.is_square or p.rows != l_mat.rows:
        raise SizeMismatch(f"slide matrix is {p.rows}x{p.cols}, form is {l_mat.rows}x{l_mat.cols}")
    if abs(determinant(p)) != 1:
        raise NotUnimodular("slide matrix must have determinant +-1")
    return p.transpose() @ l_mat @ p


def apply_stabilize(l_mat: IntMatrix, block: str) -> IntMatrix:
    return l_mat.direct_sum(BLOCKS[block])


def apply_move(l_mat: IntMatrix, move: Move) -> IntMatrix:
    if isinstance(move, Slide):
        return apply_slide(l_mat, move.p)
    return apply_stabilize(l_mat, move.block)


def random_unimodular(rng: random.Random, n: int, factors: int = 6) -> IntMatrix:
    """Product of at most ``factors`` elementary transvections and signed permutations."""
    p = IntMatrix.identity(n)
    for _ in range(rng.randint(1, factors)):
        rows = IntMatrix.identity(n).to_rows()
        if n > 1 and rng.random() < 0.6:
            i, j = rng.sample(range(n), 2)
            rows[i][j] = rng.choice([-1, 1])
        else:
            perm = list(range(n))
            rng.shuffle(perm)
            rows = [[0] * n for _ in range(n)]
            for i, j in enumerate(perm):
                rows[i][j] = rng.choice([-1, 1])
        p = p @ IntMatrix.from_rows(rows)
    return p


@dataclass(frozen=True)
class MoveStep:
    move: Move
    size: int
    value: complex
    deviation: float
    exact_match: bool | None  # slides only: GaussSum identical to the previous step
    terms: int


@dataclass(frozen=True)
class InvarianceReport:
    baseline: complex
    steps: tuple[MoveStep, ...]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max((s.deviation for s in self.steps), default=0.0)

    @property
    def holds(self) -> bool:
        return all(
            s.deviation <= self.tolerance * (1 + s.terms) and s.exact_match is not False
            for s in self.steps
        )


def invariance_suite(k_mat: IntMatrix, l_mat: IntMatrix, moves, *,
                     tol: float = DEFAULT_TOLERANCE,
                     budget: int = DEFAULT_BUDGET) -> InvarianceReport:
    """Apply moves cumulatively to L and track RT_K after each one.

    Slides must leave the exact GaussSum and prefactor unchanged;
    every step is compared numerically with the starting value.
    """
    check_even_symmetric_nondegenerate(k_mat)
    check_even_symmetric_nondegenerate(l_mat)
    base = rt_invariant(k_mat, l_mat, budget=budget)
    base_value = base.to_complex()
    current, prev = l_mat, base
    steps = []
    for move in moves:
        current = check_even_symmetric_nondegenerate(apply_move(current, move))
        val = rt_invariant(k_mat, current, budget=budget)
        exact = (val == prev) if isinstance(move, Slide) else None
        z = val.to_complex()
        steps.append(MoveStep(move, current.rows, z, abs(z - base_value), exact,
                              base.term_count() + val.term_count()))
        prev = val
    return InvarianceReport(base_value, tuple(steps), tol)


def parse_moves(text: str, base_dir: Path | str = ".", source: str | None = None) -> MoveSequence:
    """One move per line: ``slide <matrix-file>`` or ``stab H|E8|-E8``."""
    base_dir = Path(base_dir)
    moves = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise ParseError(f"bad move line {line!r}", line=n, source=source)
        kind, arg = parts
        if kind == "slide":
            path = Path(arg)
            if not path.is_absolute():
                path = base_dir / path
            try:
                moves.append(Slide(read_matrix(path)))
            except FileNotFoundError:
                raise ParseError(f"slide matrix file {arg!r} not found", line=n, source=source) from None
        elif kind == "stab":
            if arg not in BLOCKS:
                raise ParseError(f"unknown stabilization block {arg!r}", line=n, source=source)
            moves.append(Stabilize(arg))
        else:
            raise ParseError(f"unknown move {kind!r}", line=n, source=source)
    return MoveSequence(tuple(moves))


def read_moves(path) -> MoveSequence:
    path = Path(path)
    return parse_moves(path.read_text(), base_dir=path.parent, source=str(path))
