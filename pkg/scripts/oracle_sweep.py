"""Compare alpha with the Galois-ring canonical map over a grid of (R, n).

    python3 scripts/oracle_sweep.py --samples 200
    python3 scripts/oracle_sweep.py --algebra p=7 --algebra p=5,e=2 --exhaustive

Prints one row per (algebra, level): samples checked, disagreements, and
seconds spent in alpha and in the oracle.
"""
import argparse
import random
import time
from dataclasses import dataclass, field

from wittiso.checks import random_element
from wittiso.monoid_algebra import teichmuller_symbol
from wittiso.parsing import parse_descriptor
from wittiso.perfect_algebra import AlgebraDescriptor
from wittiso.witt_core import alpha, is_supported
from wittiso.witt_oracle import canonical_map

DEFAULT_ALGEBRAS = ["p=2", "p=2,e=2", "p=2,e=3", "p=3", "p=3,e=2", "p=5", "p=5,e=2", "p=7"]


@dataclass
class SweepConfig:
    algebras: list[str] = field(default_factory=lambda: list(DEFAULT_ALGEBRAS))
    max_level: int = 5
    samples: int = 1000
    support: int = 5
    bound: int = 100
    exhaustive: bool = False
    capped: bool = False
    seed: int = 20240917


def sweep(alg: AlgebraDescriptor, n: int, cfg: SweepConfig, rng: random.Random):
    if cfg.exhaustive:
        xs = (teichmuller_symbol(r).scalar_mul(k) for r in alg.enumerate()
              for k in range(-alg.p ** n, alg.p ** n + 1))
    else:
        xs = (random_element(alg, rng, max_support=cfg.support, bound=cfg.bound)
              for _ in range(cfg.samples))
    count = bad = 0
    t_alpha = t_oracle = 0.0
    for x in xs:
        t0 = time.perf_counter()
        a = alpha(x, n, capped=cfg.capped)
        t1 = time.perf_counter()
        b = canonical_map(x, n)
        t2 = time.perf_counter()
        t_alpha += t1 - t0
        t_oracle += t2 - t1
        count += 1
        if a != b:
            bad += 1
            if bad <= 3:
                print(f"  mismatch {alg}, n={n}: x = {x}: alpha {a}, oracle {b}")
    return count, bad, t_alpha, t_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--algebra", action="append", dest="algebras",
                    help="descriptor such as 'p=5,e=2' (repeatable)")
    ap.add_argument("--max-level", type=int, default=SweepConfig.max_level)
    ap.add_argument("--samples", type=int, default=SweepConfig.samples)
    ap.add_argument("--exhaustive", action="store_true", help="x = k[r], |k| <= p^n, every r")
    ap.add_argument("--capped", action="store_true", help="reduce coefficients mod p^(n-nu)")
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    cfg = SweepConfig(algebras=args.algebras or list(DEFAULT_ALGEBRAS), max_level=args.max_level,
                      samples=args.samples, exhaustive=args.exhaustive, capped=args.capped,
                      seed=args.seed)

    print(f"seed {cfg.seed}, {'exhaustive k[r]' if cfg.exhaustive else f'{cfg.samples} random'}, "
          f"{'capped' if cfg.capped else 'literal'}")
    print(f"{'R':<10} {'n':>2} {'checked':>8} {'bad':>4} {'alpha s':>8} {'oracle s':>8}")
    total_bad = 0
    for spec in cfg.algebras:
        alg = parse_descriptor(spec)
        for n in range(1, cfg.max_level + 1):
            if not is_supported(alg.p, n):
                continue
            rng = random.Random(f"{cfg.seed}:{spec}:{n}")
            count, bad, ta, to = sweep(alg, n, cfg, rng)
            total_bad += bad
            print(f"{str(alg):<10} {n:>2} {count:>8} {bad:>4} {ta:>8.2f} {to:>8.2f}")
    print("all agree" if not total_bad else f"{total_bad} disagreements")
    return 1 if total_bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
