"""Command-line front end.

Subcommands: ``reproduce-paper``, ``expected-rate``, ``inequality``,
``simulate`` and ``ncd``. Every document records the tool version, RNG
identifier and effective configuration. Floats are printed with six
decimals, rounded half-to-even. Output is a function of the arguments
only, so identical invocations produce identical bytes.

Exit status: 0 success, 1 a reproduction fixture failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Any, Optional, Sequence

from . import __version__
from .correlation_model import (
    RNG_ID,
    BlochVector,
    chain_settings,
    directions_with_dot,
    sample_lhv_pair,
    sample_singlet_pair,
    xor_distribution,
)
from .errors import NcdChainError
from .huffman import build_codebook, empirical_rate, expected_block_weights, expected_rate
from .inequality import evaluate_chain
from .information import (
    CompressorSpec,
    binary_entropy,
    estimate_bit_probability,
    ncd,
    zurek_distance_approx,
)
from .reproduce import paper_fixtures

DEFAULT_SEED = 42
EXIT_OK, EXIT_FIXTURE_FAILED, EXIT_USAGE = 0, 1, 2

_SIX = Decimal("0.000001")


class UsageError(Exception):
    pass


# -- formatting ------------------------------------------------------------

def format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        return json.dumps(value)
    text = str(Decimal(value).quantize(_SIX, rounding=ROUND_HALF_EVEN))
    return "0.000000" if text == "-0.000000" else text


def _json(value: Any, indent: int = 0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(_json(v) for v in value) + "]"
        return "[\n" + ",\n".join(inner + _json(v, indent + 1) for v in value) + "\n" + pad + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _flatten(prefix: str, value: Any, out: list[tuple[str, Any]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, value))


def render(document: dict[str, Any], fmt: str) -> str:
    """Serialise a document as a JSON tree or a flat CSV table.

    CSV output starts with ``# key=value`` metadata lines. A result holding
    a ``table`` (list of row dicts) is written with one column per field;
    anything else becomes ``key,value`` rows with dotted paths.
    """
    if fmt == "tree":
        return _json(document) + "\n"
    buf = io.StringIO()
    meta: list[tuple[str, Any]] = []
    _flatten("", {k: v for k, v in document.items() if k != "result"}, meta)
    for key, value in meta:
        buf.write(f"# {key}={_cell(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    result = document["result"]
    table = result.get("table") if isinstance(result, dict) else None
    if table:
        columns = list(table[0].keys())
        writer.writerow(columns)
        for row in table:
            writer.writerow([_cell(row[c]) for c in columns])
    else:
        rows: list[tuple[str, Any]] = []
        _flatten("", result, rows)
        writer.writerow(["key", "value"])
        for key, value in rows:
            writer.writerow([key, _cell(value)])
    return buf.getvalue()


def _document(command: str, config: dict[str, Any], result: Any) -> dict[str, Any]:
    return {
        "tool": "ncdchain",
        "version": __version__,
        "command": command,
        "rng_id": RNG_ID,
        "config": config,
        "result": result,
    }


def _emit(args, document: dict[str, Any]) -> None:
    text = render(document, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# -- helpers ---------------------------------------------------------------

def _directions(args) -> tuple[BlochVector, BlochVector, dict[str, Any]]:
    if args.dot is not None and args.chain is not None:
        raise UsageError("give either --dot or --chain, not both")
    if args.dot is not None:
        a, b = directions_with_dot(args.dot)
        return a, b, {"dot": args.dot}
    if args.chain is None:
        raise UsageError("one of --dot or --chain is required")
    chain = chain_settings(args.chain)
    if not (1 <= args.alice <= args.chain and 1 <= args.bob <= args.chain):
        raise UsageError(f"--alice/--bob must lie in 1..{args.chain}")
    a, b = chain.alice_dirs[args.alice - 1], chain.bob_dirs[args.bob - 1]
    return a, b, {"chain": args.chain, "alice": args.alice, "bob": args.bob}


def _sample(args, a, b):
    n = args.n_bits
    if n % args.k:
        if not args.truncate:
            raise UsageError(
                f"--n-bits {n} is not a multiple of --k {args.k}; pass --truncate to drop the tail"
            )
        n -= n % args.k
    if n < args.k:
        raise UsageError("--n-bits must hold at least one block")
    sampler = sample_singlet_pair if args.source == "singlet" else sample_lhv_pair
    x, y = sampler(a, b, args.n_bits, args.seed)
    if n != args.n_bits:
        x, y = x[:n], y[:n]
    return x, y, n


def _analytic_p0(source: str, a: BlochVector, b: BlochVector) -> float:
    if source == "singlet":
        return xor_distribution(a, b).p0
    return a.angle_to(b) / math.pi


# -- subcommands -----------------------------------------------------------

def cmd_reproduce_paper(args) -> int:
    rows = paper_fixtures(seed=args.seed, monte_carlo=not args.skip_monte_carlo)
    table = [r.to_dict() for r in rows]
    for row in table:
        for key in ("paper_value", "computed_value"):
            if not isinstance(row[key], (bool, int, float, type(None))):
                row[key] = str(row[key])
    ok = all(r.passed for r in rows)
    config = {"seed": args.seed, "monte_carlo": not args.skip_monte_carlo}
    _emit(args, _document("reproduce-paper", config, {"all_pass": ok, "table": table}))
    return EXIT_OK if ok else EXIT_FIXTURE_FAILED


def cmd_expected_rate(args) -> int:
    if (args.p0 is None) == (args.dot is None):
        raise UsageError("give exactly one of --p0 or --dot")
    if args.p0 is not None:
        p0 = args.p0
        if not 0.0 <= p0 <= 1.0:
            raise UsageError("--p0 must lie in [0, 1]")
    else:
        if not -1.0 <= args.dot <= 1.0:
            raise UsageError("--dot must lie in [-1, 1]")
        p0 = (1.0 - args.dot) / 2.0
    rate = expected_rate(p0, args.k)
    if args.dump_codebook:
        book = build_codebook(expected_block_weights(p0, args.k))
        with open(args.dump_codebook, "w", encoding="utf-8", newline="") as fh:
            fh.write(book.dumps())
    config = {"p0": args.p0, "dot": args.dot, "k": args.k, "dump_codebook": args.dump_codebook}
    result = {"p0": p0, "rate": rate, "binary_entropy": binary_entropy(p0)}
    _emit(args, _document("expected-rate", config, result))
    return EXIT_OK


def cmd_inequality(args) -> int:
    mode = args.mode.replace("-", "_")
    n_bits = args.n_bits
    if mode == "monte_carlo" and n_bits is None:
        n_bits = 100 * args.n_settings * args.k
    report = evaluate_chain(
        args.n_settings,
        args.k,
        mode=mode,
        source=args.source,
        n_bits=n_bits if mode == "monte_carlo" else None,
        seed=args.seed,
        correction_c=args.correction_c,
        sampling=args.sampling,
        workers=args.workers,
    )
    config = {
        "n_settings": args.n_settings,
        "k": args.k,
        "mode": mode,
        "source": args.source,
        "n_bits": n_bits if mode == "monte_carlo" else None,
        "seed": args.seed,
        "correction_c": (
            args.correction_c if args.correction_c is not None
            else (1.0 if mode == "monte_carlo" else 0.0)
        ),
        "sampling": args.sampling,
    }
    _emit(args, _document("inequality", config, report.to_dict()))
    return EXIT_OK


def cmd_simulate(args) -> int:
    a, b, geometry = _directions(args)
    x, y, n = _sample(args, a, b)
    z = x ^ y
    p0 = _analytic_p0(args.source, a, b)
    emp_rate = empirical_rate(z, args.k)
    exp_rate = expected_rate(p0, args.k)
    entropy = binary_entropy(p0)
    p0_hat = estimate_bit_probability(z)
    result: dict[str, Any] = {
        "n_bits_used": n,
        "dot": a.dot(b),
        "p0_analytic": p0,
        "p0_empirical": p0_hat,
        "empirical_rate": emp_rate,
        "expected_rate": exp_rate,
        "binary_entropy": entropy,
        "empirical_entropy": binary_entropy(p0_hat),
        "gap_empirical_minus_expected": emp_rate - exp_rate,
        "gap_expected_minus_entropy": exp_rate - entropy,
    }
    if args.include_strings:
        result["strings"] = {"x": str(x), "y": str(y), "z": str(z)}
    config = dict(geometry, n_bits=args.n_bits, k=args.k, seed=args.seed,
                  source=args.source, truncate=args.truncate)
    _emit(args, _document("simulate", config, result))
    return EXIT_OK


def cmd_ncd(args) -> int:
    a, b, geometry = _directions(args)
    x, y, n = _sample(args, a, b)
    spec = CompressorSpec.huffman(args.k)
    value = ncd(x, y, spec, args.local_size_mode)
    result = {
        "n_bits_used": n,
        "ncd": value.value,
        "c_x": value.c_x,
        "c_y": value.c_y,
        "c_xy": value.c_xy,
        "zurek_approx": zurek_distance_approx(x, y, spec, args.local_size_mode),
    }
    config = dict(geometry, n_bits=args.n_bits, k=args.k, seed=args.seed, source=args.source,
                  local_size_mode=args.local_size_mode, truncate=args.truncate)
    _emit(args, _document("ncd", config, result))
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def _common(p: argparse.ArgumentParser, k_default: Optional[int] = 2) -> None:
    if k_default is not None:
        p.add_argument("--k", type=int, default=k_default, help="block size in bits")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("tree", "csv"), default="tree")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _geometry(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dot", type=float, help="dot product a.b of the two directions")
    p.add_argument("--chain", type=int, help="use the N-setting chain directions")
    p.add_argument("--alice", type=int, default=1, help="Alice setting (1-based) with --chain")
    p.add_argument("--bob", type=int, default=1, help="Bob setting (1-based) with --chain")
    p.add_argument("--n-bits", type=int, default=100_000)
    p.add_argument("--source", choices=("singlet", "lhv"), default="singlet")
    p.add_argument("--truncate", action="store_true",
                   help="drop trailing bits when --n-bits is not a multiple of --k")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncdchain", description="Compression of quantum vs classical correlated bit strings."
    )
    parser.add_argument("--version", action="version", version=f"ncdchain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce-paper", help="recompute the published reference values")
    _common(p, k_default=None)
    p.add_argument("--skip-monte-carlo", action="store_true")
    p.set_defaults(func=cmd_reproduce_paper)

    p = sub.add_parser("expected-rate", help="expected block-Huffman rate of a biased source")
    _common(p)
    p.add_argument("--p0", type=float)
    p.add_argument("--dot", type=float)
    p.add_argument("--dump-codebook", metavar="PATH")
    p.set_defaults(func=cmd_expected_rate)

    p = sub.add_parser("inequality", help="evaluate the NCD chain inequality")
    _common(p, k_default=9)
    p.add_argument("--n-settings", type=int, default=3)
    p.add_argument("--mode", choices=("analytic", "monte-carlo"), default="analytic")
    p.add_argument("--source", choices=("singlet", "lhv"), default="singlet")
    p.add_argument("--n-bits", type=int)
    p.add_argument("--correction-c", type=float,
                   help="finite-length correction constant (default 0 analytic / 1 monte-carlo)")
    p.add_argument("--sampling", choices=("independent", "shared"), default="independent")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_inequality)

    p = sub.add_parser("simulate", help="sample a string pair and compare rates")
    _common(p)
    _geometry(p)
    p.add_argument("--include-strings", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ncd", help="NCD and approximate Zurek distance of a sampled pair")
    _common(p)
    _geometry(p)
    p.add_argument("--local-size-mode", choices=("assumed_incompressible", "measured"),
                   default="assumed_incompressible")
    p.set_defaults(func=cmd_ncd)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NcdChainError, ValueError) as exc:
        parser.exit(EXIT_USAGE, f"ncdchain {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
