"""Command-line front end.

Every command is pure: identical invocations produce byte-identical
output (fixed seeds, sorted JSON keys).  Exit codes: 0 success or
reported, 1 hard-assertion failure, 2 usage or input error, 3 refusal
because a support cap or enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .caps import get_caps
from .dual import dual_norm
from .embeddings import (
    ArrayEmbed,
    Prop73,
    XpqBranch,
    measure_distortion,
)
from .errors import CapExceeded, InputError
from .hamming import HammingSpace, hamming_distance, johnson_distance, parse_ksubset
from .norms import NormEngine, brute_force_tsirelson
from .report import encode_value
from .spaces import Tsirelson, format_space, parse_space
from .vectors import format_vector, parse_vector, parse_rational
from .verifiers import (
    DEFAULT_SEED,
    c0_sampled_report,
    estimate_cm,
    estimate_dm,
    hat_sampled_report,
    spreading_report,
    verify_block_c0,
    verify_lemma_l2,
)


def _decimal(value) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{float(value):.10g}"
    return f"{value:.10g}"


def _print_norm(value) -> None:
    if isinstance(value, Fraction):
        print(f"{_decimal(value)} (= {value.numerator}/{value.denominator})")
    else:
        print(_decimal(value))


def _print_plain(value) -> None:
    if isinstance(value, Fraction):
        print(value)
    elif isinstance(value, int):
        print(value)
    else:
        print(_decimal(value))


def cmd_norm(args) -> int:
    space = parse_space(args.space)
    vec = parse_vector(args.vec)
    value = NormEngine(space, get_caps()).norm(vec)
    if args.oracle:
        if not isinstance(space, Tsirelson):
            raise InputError("--oracle is available for space T only")
        reference = brute_force_tsirelson(vec, get_caps())
        if reference != value:
            print(f"oracle mismatch: engine {value}, brute force {reference}", file=sys.stderr)
            return 1
    _print_norm(value)
    return 0


def cmd_dual_norm(args) -> int:
    space = parse_space(args.space)
    if not isinstance(space, Tsirelson):
        raise InputError("dual-norm computes the dual of T; pass --space T")
    result = dual_norm(parse_vector(args.vec), get_caps())
    _print_norm(result.value)
    if args.witness:
        print(f"witness: {format_vector(result.witness)}")
    return 0


def cmd_metric(args) -> int:
    a = parse_ksubset(args.a)
    b = parse_ksubset(args.b)
    if len(a) != args.k or len(b) != args.k:
        raise InputError(f"tuples must have k = {args.k} entries")
    if args.kind == "hamming":
        _print_plain(hamming_distance(a, b))
    elif args.kind == "johnson":
        _print_plain(johnson_distance(a, b))
    else:
        space = parse_space(args.space)
        _print_plain(HammingSpace(args.k, space, get_caps()).distance(a, b))
    return 0


def cmd_diameter(args) -> int:
    space = parse_space(args.space)
    hs = HammingSpace(args.k, space, get_caps())
    value = hs.diameter()
    if args.check is not None:
        brute = hs.diameter_brute(args.check)
        if brute != value:
            print(f"diameter mismatch: formula {value}, brute force {brute}", file=sys.stderr)
            return 1
    _print_plain(value)
    return 0


def cmd_parse(args) -> int:
    print(format_space(parse_space(args.space)))
    return 0


def _parse_embedding(text: str):
    name, _, params_text = text.partition(":")
    if name == "array":
        return _load_array_embedding(params_text)
    params = {}
    for item in params_text.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        params[key.strip()] = value.strip()
    def pvalue(key):
        raw = params[key]
        return None if raw == "inf" else parse_rational(raw)
    if name == "prop73":
        return Prop73(pvalue("p"), int(params["k"]))
    if name == "xpq":
        width = int(params.get("w", 8))
        return XpqBranch(pvalue("p"), pvalue("q"), int(params["k"]), width)
    raise InputError(f"unknown embedding spec {text!r}")


def _load_array_embedding(path: str) -> ArrayEmbed:
    """Array file: `space: <expr>` and `k: <int>` headers, then rows
    `i j path:value,...`; blank lines and # comments are skipped."""
    space = None
    k = None
    array = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read array file {path!r}: {exc}") from None
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("space:"):
            space = parse_space(line[len("space:"):])
            continue
        if line.startswith("k:"):
            k = int(line[len("k:"):])
            continue
        fields = line.split(None, 2)
        if len(fields) != 3:
            raise InputError(f"bad array row {line!r}")
        array[(int(fields[0]), int(fields[1]))] = parse_vector(fields[2])
    if space is None or k is None:
        raise InputError("array file needs `space:` and `k:` headers")
    return ArrayEmbed(array, k, space)


def cmd_distortion(args) -> int:
    spec = _parse_embedding(args.embedding)
    metric, _, generator = args.metric.partition(":")
    metric_space = parse_space(generator) if generator else None
    report = measure_distortion(
        spec, metric, args.n, get_caps(), metric_space=metric_space
    )
    data = report.to_dict()
    data["embedding"] = args.embedding
    data["metric"] = args.metric
    data["n"] = args.n
    if args.decimal is not None:
        data["distortion_decimal"] = round(float(report.distortion), args.decimal)
    print(json.dumps(data, sort_keys=True, separators=(",", ":")))
    if args.csv:
        _write_distortion_csv(args, spec, metric, metric_space)
    return 0


def _write_distortion_csv(args, spec, metric, metric_space) -> None:
    from itertools import combinations

    from .embeddings import ambient_space, embed
    from .hamming import make_ksubset

    engine = NormEngine(ambient_space(spec), get_caps())
    if metric == "hamming":
        dist = lambda a, b: Fraction(hamming_distance(a, b))
    elif metric == "johnson":
        dist = johnson_distance
    else:
        dist = HammingSpace(spec.k, metric_space, get_caps()).distance
    with open(args.csv, "w", encoding="utf-8") as handle:
        handle.write("a,b,metric,embedded,ratio\n")
        points = [make_ksubset(c) for c in combinations(range(1, args.n + 1), spec.k)]
        for i, a in enumerate(points):
            for b in points[i + 1:]:
                d = dist(a, b)
                value = engine.norm(embed(spec, a) - embed(spec, b))
                handle.write(
                    f"{' '.join(map(str, a))},{' '.join(map(str, b))},"
                    f"{encode_value(d)},{encode_value(value)},{encode_value(value / d)}\n"
                )


def cmd_verify(args) -> int:
    caps = get_caps()
    lemma = args.lemma
    if lemma == "block-c0":
        report = verify_block_c0(args.max_support, args.variant, caps)
    elif lemma == "dm":
        report = estimate_dm(args.n, args.max_support, caps)
    elif lemma == "cm":
        report = estimate_cm(args.max_support, args.samples, args.seed, caps)
    elif lemma == "l2":
        cuts = [int(c) for c in args.cuts.split(",")]
        report = verify_lemma_l2(args.k, cuts, args.samples, args.seed, args.ceiling, caps)
    elif lemma == "hat":
        report = hat_sampled_report(args.k, args.samples, args.seed, caps)
    elif lemma == "c0-subseq":
        report = c0_sampled_report(args.k, args.samples, args.seed, caps)
    elif lemma == "spreading":
        space = parse_space(args.space)
        report = spreading_report(
            space, args.blocks, args.k, args.shift, caps, space_text=args.space
        )
    else:
        raise InputError(f"unknown lemma {lemma!r}")
    print(report.to_json(decimals=args.decimal))
    return 0 if report.passed in (True, "reported") else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banachlab",
        description="Exact computation in Tsirelson-family Banach spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norm of a vector in a space")
    p.add_argument("--space", required=True)
    p.add_argument("--vec", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force evaluator")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("dual-norm", help="dual Tsirelson norm via exact LP")
    p.add_argument("--space", default="T")
    p.add_argument("--vec", required=True)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_dual_norm)

    p = sub.add_parser("metric", help="distance between two k-subsets")
    p.add_argument("--space", default="l1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--kind", choices=["hamming", "johnson", "d_e"], default="d_e")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("diameter", help="diameter of the metric on [N]^k")
    p.add_argument("--space", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check", type=int, default=None, metavar="N",
                   help="brute-check against all pairs of [N]^k")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("distortion", help="distortion of an embedding on [n]^k")
    p.add_argument("--embedding", required=True,
                   help="prop73:p=1,k=2 | xpq:p=2,q=1,k=2 | array:<file>")
    p.add_argument("--metric", default="hamming",
                   help="hamming | johnson | d_e:<space>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csv", default=None)
    p.add_argument("--decimal", type=int, default=None)
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser("verify", help="run a lemma verifier, emit a JSON report")
    p.add_argument("lemma", choices=["block-c0", "dm", "cm", "l2", "hat", "c0-subseq", "spreading"])
    p.add_argument("--max-support", type=int, default=10, dest="max_support")
    p.add_argument("--variant", choices=["strict", "relaxed"], default="strict")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--cuts", default="2,4,8")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ceiling", type=int, default=12)
    p.add_argument("--shift", type=int, default=4)
    p.add_argument("--blocks", default="unit")
    p.add_argument("--space", default="sum(T*,indexed(sum(lpn(1,#),repeat(T*))))")
    p.add_argument("--decimal", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("parse", help="canonical form of a space expression")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_parse)

    return parser


_SAMPLE_DEFAULTS = {"cm": 100, "l2": 50, "hat": 100, "c0-subseq": 20}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", None) is None and getattr(args, "lemma", None):
        args.samples = _SAMPLE_DEFAULTS.get(args.lemma, 100)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
