"""How often a random subgroup of G^X is a function group, and how often it
is controllable. Prints one witness per non-controllable class."""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from sepcomp import closure_generate, make_cyclic


@dataclass
class SampleConfig:
    orders: tuple[int, ...] = (2, 3, 4)
    sizes: tuple[int, ...] = (2, 3, 4)
    samples: int = 200
    max_gens: int = 3
    seed: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=SampleConfig.samples)
    ap.add_argument("--seed", type=int, default=SampleConfig.seed)
    args = ap.parse_args()
    cfg = SampleConfig(samples=args.samples, seed=args.seed)
    rng = random.Random(cfg.seed)
    print(f"{'G':>3} {'|X|':>3} {'fn-group':>9} {'controllable':>13}  first witness")
    for m in cfg.orders:
        G = make_cyclic(m)
        for n in cfg.sizes:
            tally = Counter()
            witness = None
            for _ in range(cfg.samples):
                gens = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(rng.randint(1, cfg.max_gens))]
                A = closure_generate(G, n, gens)
                if not A.is_function_group:
                    continue
                tally["fn"] += 1
                v = A.is_controllable()
                if v:
                    tally["ctrl"] += 1
                elif witness is None:
                    f, d1, d2 = v.witness
                    witness = f"f={f} D1={sorted(d1)} D2={sorted(d2)} in <{', '.join(map(str, gens))}>"
            print(f"Z{m:<2} {n:>3} {tally['fn']:>9} {tally['ctrl']:>13}  {witness or '-'}")


if __name__ == "__main__":
    main()
