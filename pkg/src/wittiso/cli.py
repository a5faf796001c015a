"""Command line interface: ``wittiso {alpha,beta,delta,oracle,check,wittpoly}``.

Exit codes: 0 ok, 1 parse/usage error, 2 unsupported range, 3 property failure.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from .checks import MUTATIONS, CheckContext, default_algebras, run_checks
from .monoid_algebra import MonoidAlgebraElement, delta
from .parsing import (
    ParseError, format_descriptor, format_element, parse_element, parse_factor_spec,
    parse_witt_vector,
)
from .perfect_algebra import AlgebraDescriptor, AlgebraError, FieldFactor
from .witt_core import UnsupportedTruncation, alpha, beta_n
from .witt_oracle import canonical_map
from .witt_polynomials import WittBoundsError, dumps, load_or_build
from .witt_vector import WittVector

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_PROPERTY = 0, 1, 2, 3
DEFAULT_SEED = 20240917


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    p: int | None = None
    e: int = 1
    modulus: list[int] | None = None
    product: list[str] = field(default_factory=list)
    n: int | None = None
    seed: int = DEFAULT_SEED
    samples: int = 50
    json: bool = False
    cache_dir: str | None = None
    capped: bool = False
    mutate: str | None = None
    output: str | None = None
    expression: str | None = None

    def algebra(self) -> AlgebraDescriptor:
        if self.product:
            factors: list[FieldFactor] = []
            p = self.p
            for spec in self.product:
                p, factor = parse_factor_spec(spec, p)
                factors.append(factor)
            return AlgebraDescriptor(p, tuple(factors))
        if self.p is None:
            raise UsageError("--p is required")
        return AlgebraDescriptor.field(self.p, self.e, self.modulus)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _modulus(text: str) -> list[int]:
    body = text.strip().removeprefix("[").removesuffix("]")
    try:
        return [int(v) for v in body.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad modulus {text!r}, expected [c0,c1,...]")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--e", type=int, default=1, help="extension degree (default 1)")
    common.add_argument("--mod", type=_modulus, dest="modulus",
                        help="field modulus, constant first, e.g. [1,1,1]")
    common.add_argument("--product", action="append", default=[], metavar="SPEC",
                        help="factor spec 'e=2,mod=[1,1,1]'; repeat for each factor")
    common.add_argument("--n", type=int, help="truncation level")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=50)
    common.add_argument("--json", action="store_true", help="emit JSON lines")
    common.add_argument("--cache-dir", default=None,
                        help="Witt polynomial cache (falls back to $WITT_CACHE_DIR)")

    parser = _ArgumentParser(prog="wittiso",
                             description="Explicit Witt coordinates on ZR/I^n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p_alpha = sub.add_parser("alpha", parents=[common], help="Witt coordinates via delta")
    p_alpha.add_argument("expression")
    p_alpha.add_argument("--capped", action="store_true",
                         help="reduce accumulator coefficients mod p^(n-nu)")
    p_beta = sub.add_parser("beta", parents=[common], help="sum p^k [phi^-k(r_k)]")
    p_beta.add_argument("expression", help="Witt vector '(r0, r1, ...)'")
    p_delta = sub.add_parser("delta", parents=[common], help="(phi(x) - x^p) / p")
    p_delta.add_argument("expression")
    p_oracle = sub.add_parser("oracle", parents=[common], help="Galois-ring canonical map")
    p_oracle.add_argument("expression")
    p_check = sub.add_parser("check", parents=[common], help="run all property suites")
    p_check.add_argument("--mutate", choices=MUTATIONS, help="inject a known bug")
    p_poly = sub.add_parser("wittpoly", parents=[common], help="emit S_i, P_i")
    p_poly.add_argument("--output", "-o", help="write to file instead of stdout")
    return parser


def _emit(cfg: CliConfig, text: str, record: dict) -> None:
    if cfg.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _need_n(cfg: CliConfig) -> int:
    if cfg.n is None:
        raise UsageError("--n is required")
    if cfg.n < 1:
        raise UsageError("--n must be >= 1")
    return cfg.n


def _witt_record(cfg: CliConfig, alg: AlgebraDescriptor, w: WittVector) -> dict:
    rec = {"command": cfg.command, "algebra": format_descriptor(alg), "input": cfg.expression}
    rec.update(w.to_json())
    return rec


def cmd_alpha(cfg: CliConfig) -> int:
    alg = cfg.algebra()
    x = parse_element(cfg.expression, alg)
    w = alpha(x, _need_n(cfg), capped=cfg.capped)
    _emit(cfg, str(w), _witt_record(cfg, alg, w))
    return EXIT_OK


def cmd_oracle(cfg: CliConfig) -> int:
    alg = cfg.algebra()
    x = parse_element(cfg.expression, alg)
    w = canonical_map(x, _need_n(cfg))
    _emit(cfg, str(w), _witt_record(cfg, alg, w))
    return EXIT_OK


def cmd_beta(cfg: CliConfig) -> int:
    alg = cfg.algebra()
    w = parse_witt_vector(cfg.expression, alg)
    if cfg.n is not None and cfg.n != w.n:
        raise UsageError(f"--n {cfg.n} does not match vector length {w.n}")
    x = beta_n(w)
    _emit(cfg, format_element(x), {"command": "beta", "algebra": format_descriptor(alg),
                                   "p": alg.p, "n": w.n, "input": cfg.expression,
                                   "element": format_element(x)})
    return EXIT_OK


def cmd_delta(cfg: CliConfig) -> int:
    alg = cfg.algebra()
    x = parse_element(cfg.expression, alg)
    d = delta(x)
    _emit(cfg, format_element(d), {"command": "delta", "algebra": format_descriptor(alg),
                                   "p": alg.p, "input": cfg.expression,
                                   "element": format_element(d)})
    return EXIT_OK


def cmd_check(cfg: CliConfig) -> int:
    algebras = [cfg.algebra()] if (cfg.p is not None or cfg.product) else default_algebras()
    ctx = CheckContext(algebras, random.Random(cfg.seed), cfg.samples,
                       mutate=cfg.mutate, cache_dir=cfg.cache_dir)
    results = run_checks(ctx)
    ok = all(r.passed for r in results)
    report = {
        "command": "check", "seed": cfg.seed, "samples": cfg.samples, "mutate": cfg.mutate,
        "algebras": [format_descriptor(a) for a in algebras],
        "passed": ok, "properties": [r.to_json() for r in results],
    }
    if cfg.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"seed {cfg.seed}, {cfg.samples} samples per configuration"
              + (f", mutation {cfg.mutate}" if cfg.mutate else ""))
        for r in results:
            line = f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.checks} checks)"
            if not r.passed:
                line += f"\n      counterexample: {r.counterexample}"
            print(line)
        print("all properties hold" if ok else "PROPERTY FAILURE")
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_wittpoly(cfg: CliConfig) -> int:
    if cfg.p is None:
        raise UsageError("--p is required")
    polys = load_or_build(cfg.p, _need_n(cfg), cfg.cache_dir)
    text = dumps(polys)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        if cfg.json:
            print(json.dumps({"command": "wittpoly", "p": cfg.p, "n": cfg.n,
                              "output": cfg.output}, sort_keys=True))
    elif cfg.json:
        print(json.dumps({"command": "wittpoly", "p": cfg.p, "n": cfg.n, "text": text},
                         sort_keys=True))
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "alpha": cmd_alpha, "beta": cmd_beta, "delta": cmd_delta,
    "oracle": cmd_oracle, "check": cmd_check, "wittpoly": cmd_wittpoly,
}


def _fail(cfg: CliConfig | None, code: int, kind: str, message: str, offset: int | None = None) -> int:
    print(f"error: {message}", file=sys.stderr)
    if cfg is not None and cfg.json:
        rec = {"command": cfg.command, "error": kind, "message": message, "exit_code": code}
        if offset is not None:
            rec["offset"] = offset
        print(json.dumps(rec, sort_keys=True))
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ns = vars(args)
    cfg = CliConfig(**{k: v for k, v in ns.items() if k in CliConfig.__dataclass_fields__})
    if cfg.cache_dir is None:
        cfg.cache_dir = os.environ.get("WITT_CACHE_DIR") or None
    try:
        return COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        return _fail(cfg, EXIT_USAGE, "parse", str(exc), exc.offset)
    except (AlgebraError, UsageError) as exc:
        return _fail(cfg, EXIT_USAGE, "usage", str(exc))
    except (UnsupportedTruncation, WittBoundsError) as exc:
        return _fail(cfg, EXIT_UNSUPPORTED, "unsupported", str(exc))


if __name__ == "__main__":
    sys.exit(main())
