"""Command-line front end.

Subcommands: roots, expand, char, dim, tensor, block, verify.  Every command
takes --family B|D and --m; weights use the "lam0;lam1,...,lamm" grammar with
integer or p/2 entries.  Output formats: text (default), json, latex.

Exit codes: 0 success, 1 verification failures, 2 argument errors,
3 mathematical domain errors (non-dominant weight and friends).

Expansions can be persisted under --cache-dir (or the OSPCHAR_CACHE
environment variable); cache hits render byte-identically to cold runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .characters import character_to_json
from .expansion import (
    ExpansionCache,
    VermaSeries,
    dimension,
    expansion_to_json,
    irreducible_character,
    verma_expansion,
)
from .tensor import tensor_decompose, tensor_to_json
from .verify import (
    check_trivial_cohomology,
    check_trivial_telescoping,
    sweep_block_keys,
    sweep_dual_recursion,
    sweep_mirror_symmetry,
    sweep_tensor,
    sweep_typical,
)
from .weights import (
    Algebra,
    DomainError,
    Weight,
    block_key,
    positive_roots,
    same_block,
    weight_sort_key,
)

_FORMATS = ("text", "json", "latex")


class CliParseError(Exception):
    """Malformed command-line input (bad weight literal, wrong arity)."""


def _parse_cutoff(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, _, den = text.partition("/")
            if den.strip() != "2":
                raise ValueError(text)
            return Fraction(int(num), 2)
        return Fraction(int(text))
    except ValueError:
        raise CliParseError(f"cutoffs are integers or halves p/2, got {text!r}") from None


def _add_common(sub: argparse.ArgumentParser, weights: bool = True) -> None:
    sub.add_argument("--family", required=True, choices=("B", "D"))
    sub.add_argument("--m", required=True, type=int)
    if weights:
        sub.add_argument(
            "--weight",
            action="append",
            default=[],
            metavar="W",
            help='weight in the "lam0;lam1,...,lamm" grammar (repeatable)',
        )
    sub.add_argument("--format", choices=_FORMATS, default="text")
    sub.add_argument("--cache-dir", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospchar",
        description="Exact characters and tensor decompositions for osp(2m|2) and osp(2m+1|2).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("roots", help="positive even and odd roots")
    _add_common(sub, weights=False)

    sub = subs.add_parser("expand", help="expansion of ch L into Verma characters")
    _add_common(sub)

    sub = subs.add_parser("char", help="truncated character of L")
    _add_common(sub)
    sub.add_argument("--min-delta", default=None, help="delta cutoff (default -lam0-2)")

    sub = subs.add_parser("dim", help="dimension of L")
    _add_common(sub)

    sub = subs.add_parser("tensor", help="decomposition of L tensor the natural module")
    _add_common(sub)

    sub = subs.add_parser("block", help="block key of one weight or comparison of two")
    _add_common(sub)

    sub = subs.add_parser("verify", help="run the oracle suites")
    _add_common(sub, weights=False)
    sub.add_argument(
        "--suite",
        choices=("all", "telescoping", "cohomology", "typical", "tensor", "blocks", "mirror", "dual"),
        default="all",
    )
    sub.add_argument("--max-height", type=int, default=4)
    sub.add_argument("--q-max", type=int, default=8)
    return parser


def _fmt_weight(w: Weight, fmt: str) -> str:
    return w.render() if fmt == "json" else f"({w.render()})"


def _require_weights(args, count: int | None) -> list[Weight]:
    try:
        got = [Weight.parse(w) for w in args.weight]
    except DomainError as exc:
        raise CliParseError(str(exc)) from None
    if count is not None and len(got) != count:
        raise CliParseError(f"expected {count} --weight argument(s), got {len(got)}")
    if not got:
        raise CliParseError("at least one --weight argument is required")
    return got


def _cache_from(args) -> ExpansionCache | None:
    root = args.cache_dir or os.environ.get("OSPCHAR_CACHE")
    return ExpansionCache(root) if root else None


def _term_strings(terms, fmt: str) -> list[str]:
    out = []
    for w, c in terms:
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        body = f"M_{{{_fmt_weight(w, fmt)}}}" if fmt == "latex" else f"{mag}M_{_fmt_weight(w, fmt)}"
        if fmt == "latex" and abs(c) != 1:
            body = f"{abs(c)}\\, " + body
        out.append(("- " if c < 0 else "+ ") + body)
    return out


def _render_tail(s: VermaSeries, fmt: str) -> str:
    s0 = s.sign_at_start * (-1 if s.start_q % 2 else 1)
    if fmt == "latex":
        power = "q" if s0 > 0 else "q+1"
        mag = "" if s.magnitude == 1 else f"{s.magnitude}\\, "
        return (
            f"\\sum_{{q={s.start_q}}}^{{\\infty}} (-1)^{{{power}}} "
            f"{mag}M_{{({s.base.render()}) - (q-{s.start_q})({s.step.render()})}}"
        )
    return (
        f"tail: start q={s.start_q}, sign {s.sign_at_start:+d}, magnitude {s.magnitude}, "
        f"base {_fmt_weight(s.base, fmt)}, step {_fmt_weight(s.step, fmt)}"
    )


def _cmd_roots(alg: Algebra, args) -> str:
    even, odd = positive_roots(alg)
    even_s = sorted(even, key=weight_sort_key)
    odd_s = sorted(odd, key=weight_sort_key)
    if args.format == "json":
        return json.dumps(
            {
                "algebra": {"family": alg.family, "m": alg.m},
                "even": [w.render() for w in even_s],
                "odd": [w.render() for w in odd_s],
            },
            indent=1,
        ) + "\n"
    if args.format == "latex":
        ev = ", ".join(f"({w.render()})" for w in even_s)
        od = ", ".join(f"({w.render()})" for w in odd_s)
        return f"\\Delta_0^+ = \\{{{ev}\\}}\n\\Delta_1^+ = \\{{{od}\\}}\n"
    lines = [
        f"{alg.name}  (family {alg.family}, m={alg.m})",
        "even positive roots: " + " ".join(f"({w.render()})" for w in even_s),
        "odd positive roots:  " + " ".join(f"({w.render()})" for w in odd_s),
    ]
    return "\n".join(lines) + "\n"


def _cmd_expand(alg: Algebra, args) -> str:
    (lam,) = _require_weights(args, 1)
    exp = verma_expansion(alg, lam, cache=_cache_from(args))
    if args.format == "json":
        return json.dumps(expansion_to_json(exp), indent=1) + "\n"
    terms = sorted(exp.finite_terms.items(), key=lambda kv: weight_sort_key(kv[0]))
    pieces = _term_strings(terms, args.format)
    if args.format == "latex":
        rhs = " ".join(pieces)
        if rhs.startswith("+ "):
            rhs = rhs[2:]
        tails = " ".join("+ " + _render_tail(s, "latex") for s in exp.tails)
        return f"L_{{({lam.render()})}} = {rhs} {tails}".rstrip() + "\n"
    rhs = " ".join(pieces)
    if rhs.startswith("+ "):
        rhs = rhs[2:]
    lines = [f"L_{_fmt_weight(lam, 'text')} = {rhs}"]
    for s in exp.tails:
        lines.append("  + " + _render_tail(s, "text"))
    if exp.tails:
        lines.append("    [tail term(q) = base - (q - start q)*step, "
                      "coefficient sign*(-1)^(q - start q)*magnitude]")
    return "\n".join(lines) + "\n"


def _cmd_char(alg: Algebra, args) -> str:
    (lam,) = _require_weights(args, 1)
    cutoff = (
        _parse_cutoff(args.min_delta)
        if args.min_delta is not None
        else -lam.delta_part - 2
    )
    verma_expansion(alg, lam, cache=_cache_from(args))
    ch = irreducible_character(alg, lam, cutoff)
    if args.format == "json":
        return json.dumps(character_to_json(ch), indent=1) + "\n"
    if args.format == "latex":
        parts = []
        for w, c in ch.items_sorted():
            coeff = "" if c == 1 else ("-" if c == -1 else str(c))
            parts.append(f"{coeff} e^{{({w.render()})}}")
        return " + ".join(parts).replace("+ -", "- ") + "\n"
    lines = [f"ch L_{_fmt_weight(lam, 'text')}   [exact for delta >= {cutoff}]"]
    for w, c in ch.items_sorted():
        lines.append(f"  {_fmt_weight(w, 'text')}: {c}")
    return "\n".join(lines) + "\n"


def _cmd_dim(alg: Algebra, args) -> str:
    (lam,) = _require_weights(args, 1)
    verma_expansion(alg, lam, cache=_cache_from(args))
    value = dimension(alg, lam)
    if args.format == "json":
        return json.dumps({"weight": lam.render(), "dimension": str(value)}) + "\n"
    return f"{value}\n"


def _cmd_tensor(alg: Algebra, args) -> str:
    (lam,) = _require_weights(args, 1)
    td = tensor_decompose(alg, lam)
    if args.format == "json":
        return json.dumps(tensor_to_json(td), indent=1) + "\n"
    items = sorted(td.constituents.items(), key=lambda kv: weight_sort_key(kv[0]))
    joiner = " (+) " if td.completely_reducible else " + "
    parts = []
    for w, c in items:
        mag = "" if c == 1 else f"{c}*"
        parts.append(f"{mag}L_{_fmt_weight(w, args.format)}")
    if args.format == "latex":
        op = " \\oplus " if td.completely_reducible else " + "
        body = op.join(
            (f"{c}\\, " if c != 1 else "") + f"L_{{({w.render()})}}" for w, c in items
        )
        return f"L_{{({lam.render()})}} \\otimes L_{{({alg.delta().render()})}} = {body}\n"
    lines = [
        f"L_{_fmt_weight(lam, 'text')} (x) L_{_fmt_weight(alg.delta(), 'text')} = "
        + joiner.join(parts),
        f"completely reducible: {'yes' if td.completely_reducible else 'no'}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_block(alg: Algebra, args) -> str:
    weights = _require_weights(args, None)
    if len(weights) not in (1, 2):
        raise CliParseError("block takes one or two --weight arguments")
    keys = [block_key(alg, w) for w in weights]
    if args.format == "json":
        payload = {
            "weights": [w.render() for w in weights],
            "keys": [str(k) for k in keys],
        }
        if len(weights) == 2:
            payload["same_block"] = same_block(alg, *weights)
        return json.dumps(payload, indent=1) + "\n"
    lines = [f"block key of {_fmt_weight(w, 'text')}: {k}" for w, k in zip(weights, keys)]
    if len(weights) == 2:
        verdict = "same block" if keys[0] == keys[1] else "different blocks"
        lines.append(verdict)
    return "\n".join(lines) + "\n"


def _cmd_verify(alg: Algebra, args) -> tuple[str, int]:
    ht = args.max_height
    suites = {
        "telescoping": lambda: check_trivial_telescoping(alg, -8),
        "cohomology": lambda: check_trivial_cohomology(alg, args.q_max),
        "typical": lambda: sweep_typical(alg, ht),
        "tensor": lambda: sweep_tensor(alg, ht),
        "blocks": lambda: sweep_block_keys(alg, ht),
        "mirror": lambda: sweep_mirror_symmetry(alg, ht),
        "dual": lambda: sweep_dual_recursion(alg, ht),
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    reports = [suites[name]() for name in names]
    failed = any(not r.passed for r in reports)
    if args.format == "json":
        return json.dumps([r.to_json() for r in reports], indent=1) + "\n", 1 if failed else 0
    lines = []
    for r in reports:
        lines.append(r.summary())
        for f in r.failures:
            lines.append(f"  failure at {f['weight']}: expected {f['expected']}, "
                         f"got {f['actual']}  [{f['repro']}]")
    return "\n".join(lines) + "\n", 1 if failed else 0


def _fold_negative_weights(argv: list[str]) -> list[str]:
    """Join '--weight -3;3,0' into '--weight=-3;3,0' so argparse does not
    mistake a weight with negative leading coordinate for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok in ("--weight", "--min-delta")
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: list[str]) -> int:
    """Parse, dispatch, print; returns the process exit code."""
    args = build_parser().parse_args(_fold_negative_weights(argv))
    try:
        alg = Algebra.make(args.family, args.m)
        if args.command == "verify":
            output, code = _cmd_verify(alg, args)
        else:
            handler = {
                "roots": _cmd_roots,
                "expand": _cmd_expand,
                "char": _cmd_char,
                "dim": _cmd_dim,
                "tensor": _cmd_tensor,
                "block": _cmd_block,
            }[args.command]
            output, code = handler(alg, args), 0
    except CliParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(output)
    return code


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
