"""Batch command line: kernels, verification, span certificates, straightening.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Output is
human-readable text or a JSON envelope ``{"command", "config",
"results"}``; identical configuration and seed produce byte-identical
output.  The environment variable ``NOWICKI_THREADS`` caps how many
components are evaluated concurrently (default 1); results are merged in
component order regardless of completion order.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

from . import checks, exprio, kernel, uvconstants
from .grassmann import grassmann_generators
from .poly import nowicki_generators
from .uvconstants import ConstGen, completed_module_generators, module_generators, straighten

SPAN_ALGEBRAS = ("comm", "meta", "grass")
KERNEL_ALGEBRAS = ("comm", "uv", "meta", "grass", "module")


def _thread_count() -> int:
    raw = os.environ.get("NOWICKI_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parallel_map(fn: Callable, items: Sequence) -> list:
    threads = _thread_count()
    if threads == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _emit(args, envelope: dict, text_lines: Iterable[str]) -> None:
    if args.format == "json":
        payload = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


def _config_dict(args, fields: Sequence[str]) -> dict:
    return {name: getattr(args, name) for name in fields if getattr(args, name) is not None}


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------


def cmd_kernel(args) -> int:
    algebra = args.algebra
    d = args.d
    npairs = kernel.get_ops(algebra).npairs(d)
    if args.multidegree:
        key = tuple(int(x) for x in args.multidegree.split(","))
        if len(key) != npairs or any(k < 0 for k in key):
            raise SystemExit(_usage_error(f"multidegree needs {npairs} entries"))
        keys = [key]
    else:
        keys = kernel.component_keys(npairs, args.degree)

    def one(key):
        basis = kernel.kernel_basis(algebra, d, key)
        return {
            "key": list(key),
            "dimension": len(basis),
            "basis": [exprio.render(e) for e in basis],
        }

    results = _parallel_map(one, keys)
    total = sum(r["dimension"] for r in results)
    lines = [f"kernel algebra={algebra} d={d}"]
    for r in results:
        lines.append(f"  component {tuple(r['key'])}: dim {r['dimension']}")
        for b in r["basis"]:
            lines.append(f"    {b}")
    lines.append(f"total dimension: {total}")
    envelope = {
        "command": "kernel",
        "config": _config_dict(args, ("algebra", "d", "degree", "multidegree")),
        "results": results,
        "total_dimension": total,
    }
    _emit(args, envelope, lines)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_relations(args) -> list[checks.CheckReport]:
    return checks.check_relations(args.d)


def _verify_generators(args) -> list[checks.CheckReport]:
    algebras = (args.algebra,) if args.algebra else ("comm", "uv", "meta", "grass")
    return [checks.check_generator_constancy(a, args.d) for a in algebras]


def _verify_embedding(args) -> list[checks.CheckReport]:
    return [
        checks.check_embedding_homomorphism(args.d, args.cases, args.seed),
        checks.check_embedding_equivariance(args.d, args.cases, args.seed + 1),
        checks.check_embedding_injectivity(args.d, args.degree),
        checks.check_image_criterion(args.d, args.degree),
        checks.check_pullback_roundtrip(args.d, args.degree),
    ]


def _verify_identities(args) -> list[checks.CheckReport]:
    return checks.identity_suites(args.d, args.cases, args.seed)


def cmd_verify(args) -> int:
    handlers = {
        "relations": _verify_relations,
        "generators": _verify_generators,
        "embedding": _verify_embedding,
        "identities": _verify_identities,
    }
    reports = handlers[args.target](args)
    lines = [f"verify {args.target} d={args.d}"]
    for report in reports:
        status = "ok" if report.ok else "FAIL"
        lines.append(f"  {report.name}: {status} ({report.cases} cases)")
        for witness in report.failures[:8]:
            lines.append(f"    witness: {witness}")
    ok = all(r.ok for r in reports)
    lines.append("result: PASS" if ok else "result: FAIL")
    envelope = {
        "command": f"verify {args.target}",
        "config": _config_dict(args, ("target", "algebra", "d", "degree", "cases", "seed")),
        "results": [r.as_dict() for r in reports],
        "ok": ok,
    }
    _emit(args, envelope, lines)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# span
# ---------------------------------------------------------------------------


def _span_reports(args) -> list[kernel.SpanReport]:
    d = args.d
    if args.algebra == "comm":
        candidates = [
            (exprio.render(g), g) for g in nowicki_generators(d)
        ]
        return kernel.span_check("comm", d, candidates, args.max_degree)
    if args.algebra == "grass":
        candidates = [
            (gen.label(), elem) for gen, elem in grassmann_generators(d)
        ]
        if args.complete_generators:
            from .grassmann import integrated_hooks

            candidates.extend(integrated_hooks(d))
        return kernel.span_check("grass", d, candidates, args.max_degree)
    # metabelian
    source = completed_module_generators if args.complete_generators else module_generators
    gens = [(g.label(), g.preimage) for g in source(d)]
    if args.module:
        return kernel.module_span_check(d, gens, args.max_degree)
    candidates = kernel.meta_algebra_candidates(d, args.max_degree, gens)
    return kernel.span_check("meta", d, candidates, args.max_degree)


def cmd_span(args) -> int:
    reports = _span_reports(args)
    lines = [f"span algebra={args.algebra} d={args.d} max-degree={args.max_degree}"]
    for report in reports:
        status = "ok" if report.verified else "MISSING"
        lines.append(
            f"  component {report.key}: kernel {report.kernel_dim}"
            f" span {report.span_dim} {status}"
        )
        for witness in report.missing[:8]:
            lines.append(f"    not generated: {witness}")
    ok = all(r.verified for r in reports)
    lines.append("result: PASS" if ok else "result: FAIL")
    envelope = {
        "command": "span",
        "config": _config_dict(args, ("algebra", "d", "max_degree", "module")),
        "results": [r.as_dict() for r in reports],
        "ok": ok,
    }
    _emit(args, envelope, lines)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# straighten
# ---------------------------------------------------------------------------

_GEN_TOKEN = re.compile(
    r"\s*(?:(?P<name>alpha|beta|gamma|u|v)\((?P<idx>\d+(?:,\d+)?)\)|(?P<star>\*))"
)


def parse_generator_product(text: str, d: int) -> list[ConstGen]:
    """Parse a '*'-separated product of constants-generator symbols."""
    gens: list[ConstGen] = []
    pos = 0
    expect_gen = True
    while pos < len(text):
        match = _GEN_TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse generator product at {text[pos:]!r}")
        pos = match.end()
        if match.group("star"):
            if expect_gen:
                raise ValueError("misplaced '*' in generator product")
            expect_gen = True
            continue
        if not expect_gen:
            raise ValueError("missing '*' between generators")
        name = match.group("name")
        indices = [int(x) for x in match.group("idx").split(",")]
        if name in ("u", "v"):
            if len(indices) != 1:
                raise ValueError(f"{name} takes one index")
            gen = ConstGen(name, indices[0])
        else:
            if len(indices) != 2:
                raise ValueError(f"{name} takes two indices")
            gen = ConstGen(name, indices[0], indices[1])
        gen.check_range(d)
        gens.append(gen)
        expect_gen = False
    if expect_gen:
        raise ValueError("empty generator product")
    return gens


def render_straightened(combo) -> str:
    if not combo:
        return "0"
    parts = []
    for coeff, cm in combo:
        label = cm.label()
        if coeff == 1:
            parts.append(label)
        elif coeff == -1:
            parts.append(f"-{label}")
        else:
            parts.append(f"{coeff}*{label}")
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


def cmd_straighten(args) -> int:
    try:
        gens = parse_generator_product(args.expression, args.d)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    combo = straighten(gens, args.d)
    rendered = render_straightened(combo)
    envelope = {
        "command": "straighten",
        "config": _config_dict(args, ("d", "expression")),
        "results": [
            {"coeff": str(c), "monomial": cm.label()} for c, cm in combo
        ],
        "canonical": rendered,
    }
    _emit(args, envelope, [rendered])
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _usage_error(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", default=None, help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="constalg",
        description="Exact kernels, relations and generation certificates "
        "for Weitzenboeck-derivation constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_kernel = sub.add_parser("kernel", help="component dimensions and bases")
    p_kernel.add_argument("--algebra", choices=KERNEL_ALGEBRAS, required=True)
    p_kernel.add_argument("--d", type=int, default=2)
    p_kernel.add_argument("--degree", type=int, default=5, help="total degree")
    p_kernel.add_argument(
        "--multidegree", default=None, help="exact pair multidegree, e.g. 2,1"
    )
    _add_common(p_kernel)
    p_kernel.set_defaults(handler=cmd_kernel)

    p_verify = sub.add_parser("verify", help="relation/identity verification")
    p_verify.add_argument(
        "target", choices=("relations", "generators", "embedding", "identities")
    )
    p_verify.add_argument("--algebra", choices=SPAN_ALGEBRAS + ("uv",), default=None)
    p_verify.add_argument("--d", type=int, default=2)
    p_verify.add_argument("--degree", type=int, default=4)
    p_verify.add_argument("--cases", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    _add_common(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_span = sub.add_parser("span", help="kernel versus generated span")
    p_span.add_argument("--algebra", choices=SPAN_ALGEBRAS, required=True)
    p_span.add_argument("--d", type=int, default=2)
    p_span.add_argument("--max-degree", type=int, default=5)
    p_span.add_argument(
        "--module",
        action="store_true",
        help="metabelian only: certify the commutator-ideal module instead",
    )
    p_span.add_argument(
        "--complete-generators",
        action="store_true",
        help="also use the families the certificates show are needed "
        "(u-determinant twists for meta, integrated hooks for grass)",
    )
    _add_common(p_span)
    p_span.set_defaults(handler=cmd_span)

    p_str = sub.add_parser("straighten", help="rewrite generator products")
    p_str.add_argument("--d", type=int, default=2)
    p_str.add_argument("expression")
    _add_common(p_str)
    p_str.set_defaults(handler=cmd_straighten)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.d < 1:
        return _usage_error("d must be at least 1")
    if getattr(args, "degree", 0) is not None and getattr(args, "degree", 0) < 0:
        return _usage_error("degree must be nonnegative")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
