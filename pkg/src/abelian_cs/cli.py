"""Command-line interface.

Exit status: 0 when the computation succeeded and any checked identity
holds, 2 when an identity residual exceeds the tolerance, 1 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import AbelianCSError, NonSquare, ParseError
from .exact_linalg import (
    IntMatrix,
    check_even_symmetric_nondegenerate,
    determinant,
    format_matrix,
    read_matrix,
    signature,
    smith_normal_form,
)
from .invariants import (
    DEFAULT_BUDGET,
    DEFAULT_TOLERANCE,
    duality_check,
    lens_example,
    partition_function,
    reciprocity_check,
    rt_invariant,
)
from .moves import invariance_suite, read_moves
from .selftest import run_selftest, summarize
from .torsion_group import cokernel

EXIT_OK, EXIT_INPUT, EXIT_RESIDUAL = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: dict
    tolerance: float = DEFAULT_TOLERANCE
    budget: int = DEFAULT_BUDGET
    mode: str = "both"
    seed: int | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.budget > 0:
            raise ValueError("budget must be positive")
        if self.mode not in ("exact", "float", "both"):
            raise ValueError(f"unknown mode {self.mode!r}")


def format_complex(z: complex) -> str:
    """``re <value> im <value>`` with 12 significant digits; float noise below 1e-12 prints as 0."""
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    return f"re {re:#.12g} im {im:#.12g}"


def _sum_block(label: str, value, mode: str) -> list[str]:
    out = []
    if mode in ("float", "both"):
        out.append(f"{label}: {format_complex(value.to_complex())}")
    if mode in ("exact", "both"):
        out.append(f"[{label} exact]")
        out.extend(value.serialize().rstrip("\n").splitlines())
    return out


def _load(inputs: dict, key: str, check: str | None = None) -> IntMatrix:
    """Read the matrix given by flag ``key``; domain errors name the flag."""
    path = inputs.get(key)
    if path is None:
        raise AbelianCSError(f"missing -{key} <file>")
    try:
        m = read_matrix(path)
        if check == "square" and not m.is_square:
            raise NonSquare(f"matrix is {m.rows}x{m.cols}, expected square")
        if check == "even":
            check_even_symmetric_nondegenerate(m)
        return m
    except FileNotFoundError:
        raise AbelianCSError(f"-{key}: file not found: {path}") from None
    except AbelianCSError as exc:
        named = isinstance(exc, ParseError) and exc.source is not None
        exc.args = (f"-{key}: {exc}" if named else f"-{key} ({path}): {exc}",)
        raise


def _cmd_det(cfg):
    return [str(determinant(_load(cfg.inputs, "file")))], EXIT_OK


def _cmd_signature(cfg):
    return [str(signature(_load(cfg.inputs, "file")))], EXIT_OK


def _cmd_snf(cfg):
    snf = smith_normal_form(_load(cfg.inputs, "file"))
    lines = ["# D"] + format_matrix(snf.d_mat).splitlines()
    lines += ["# U"] + format_matrix(snf.u_mat).splitlines()
    lines += ["# V"] + format_matrix(snf.v_mat).splitlines()
    return lines, EXIT_OK


def _cmd_group(cfg):
    g = cokernel(_load(cfg.inputs, "file"), require_even=False)
    lines = ["factors: " + (" ".join(map(str, g.invariant_factors)) or "(trivial)")]
    lines.append(f"order: {g.order}")
    for i, lift in enumerate(g.generator_lifts):
        lines.append(f"generator {i}: " + " ".join(map(str, lift)))
    return lines, EXIT_OK


def _cmd_partition(cfg):
    z = partition_function(_load(cfg.inputs, "C", "square"), _load(cfg.inputs, "L", "even"), budget=cfg.budget)
    return _sum_block("Z", z, cfg.mode), EXIT_OK


def _cmd_rt(cfg):
    rt = rt_invariant(_load(cfg.inputs, "K", "even"), _load(cfg.inputs, "L", "even"), budget=cfg.budget)
    return _sum_block("RT", rt, cfg.mode), EXIT_OK


def _cmd_reciprocity(cfg):
    rep = reciprocity_check(_load(cfg.inputs, "K", "even"), _load(cfg.inputs, "L", "even"),
                            tol=cfg.tolerance, budget=cfg.budget)
    lines = _sum_block("lhs", rep.lhs, cfg.mode) + _sum_block("rhs", rep.rhs, cfg.mode)
    lines.append(f"residual: {rep.float_residual:.3e} (threshold {rep.threshold:.3e})")
    lines.append("reciprocity: " + ("holds" if rep.holds else "FAILS"))
    return lines, EXIT_OK if rep.holds else EXIT_RESIDUAL


def _cmd_duality(cfg):
    rep = duality_check(_load(cfg.inputs, "C", "square"), _load(cfg.inputs, "L", "even"),
                        tol=cfg.tolerance, budget=cfg.budget)
    lines = _sum_block("Z", rep.z, cfg.mode)
    lines += _sum_block("RT_K(L)", rep.rt_kl, cfg.mode)
    lines += _sum_block("RT_L(K)", rep.rt_lk, cfg.mode)
    lines.append(f"|det L|^(n/2) RT_K(L): {format_complex(rep.z_via_rt_kl)}")
    lines.append(f"|det K|^(m/2) RT_L(K): {format_complex(rep.z_via_rt_lk)}")
    lines.append(f"residual Z vs |det L|^(n/2) RT_K(L): {rep.residual_kl:.3e}")
    lines.append(f"residual Z vs |det K|^(m/2) RT_L(K): {rep.residual_lk:.3e}")
    lines.append(f"residual dual partition vs |det K|^(m/2) RT_L(K): "
                 f"{rep.dual_partition_residual:.3e}")
    lines.append(f"threshold: {rep.threshold:.3e}")
    lines.append("duality: " + ("holds" if rep.holds else "FAILS"))
    return lines, EXIT_OK if rep.holds else EXIT_RESIDUAL


def _cmd_lens(cfg):
    k, p = cfg.inputs["k"], cfg.inputs["p"]
    if k is None or p is None:
        raise AbelianCSError("lens needs -k <int> and -p <int>")
    rep = lens_example(k, p)
    lines = _sum_block("Z", rep.z, cfg.mode) + _sum_block("RT", rep.rt, cfg.mode)
    ok = rep.residual <= cfg.tolerance * (1 + rep.z.term_count() + rep.rt.term_count())
    lines.append(f"residual Z - p*RT: {rep.residual:.3e}")
    return lines, EXIT_OK if ok else EXIT_RESIDUAL


def _cmd_moves(cfg):
    moves_path = cfg.inputs.get("M")
    if moves_path is None:
        raise AbelianCSError("missing -M <movesfile>")
    try:
        moves = read_moves(moves_path)
    except FileNotFoundError:
        raise AbelianCSError(f"-M: file not found: {moves_path}") from None
    rep = invariance_suite(_load(cfg.inputs, "K", "even"), _load(cfg.inputs, "L", "even"), moves,
                           tol=cfg.tolerance, budget=cfg.budget)
    lines = [f"baseline: {format_complex(rep.baseline)}"]
    for i, s in enumerate(rep.steps):
        exact = "" if s.exact_match is None else f" exact={'yes' if s.exact_match else 'NO'}"
        lines.append(f"step {i} {s.move} size={s.size}: {format_complex(s.value)} "
                     f"deviation={s.deviation:.3e}{exact}")
    lines.append(f"max deviation: {rep.max_deviation:.3e}")
    lines.append("invariance: " + ("holds" if rep.holds else "FAILS"))
    return lines, EXIT_OK if rep.holds else EXIT_RESIDUAL


def _cmd_selftest(cfg):
    seed = 0 if cfg.seed is None else cfg.seed
    results = list(run_selftest(seed=seed, tol=cfg.tolerance))
    lines = [f"seed: {seed}"] + [r.line() for r in results]
    passed, total = summarize(results)
    lines.append(f"{passed}/{total} checks passed")
    return lines, EXIT_OK if passed == total else EXIT_RESIDUAL


COMMANDS = {
    "det": _cmd_det,
    "signature": _cmd_signature,
    "snf": _cmd_snf,
    "group": _cmd_group,
    "partition": _cmd_partition,
    "rt": _cmd_rt,
    "reciprocity": _cmd_reciprocity,
    "duality": _cmd_duality,
    "lens": _cmd_lens,
    "moves": _cmd_moves,
    "selftest": _cmd_selftest,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one subcommand; returns (exit status, report text)."""
    try:
        lines, status = COMMANDS[config.subcommand](config)
    except AbelianCSError as exc:
        return EXIT_INPUT, f"error: {type(exc).__name__}: {exc}\n"
    return status, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--mode", choices=("exact", "float", "both"), default="both")

    parser = argparse.ArgumentParser(prog="abelian-cs",
                                     description="Abelian U(1)^n Chern-Simons / RT invariants")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("det", "signature", "snf", "group"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
    for name, keys in [("partition", "CL"), ("rt", "KL"), ("reciprocity", "KL"),
                       ("duality", "CL"), ("moves", "KLM")]:
        p = sub.add_parser(name, parents=[common])
        for key in keys:
            p.add_argument(f"-{key}", dest=key, required=True, metavar="FILE")
    p = sub.add_parser("lens", parents=[common])
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    sub.add_parser("selftest", parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items()
              if k in ("file", "C", "K", "L", "M", "k", "p")}
    try:
        cfg = RunConfig(args.subcommand, inputs, args.tol, args.budget, args.mode, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status, report = run(cfg)
    stream = sys.stderr if status == EXIT_INPUT else sys.stdout
    stream.write(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
