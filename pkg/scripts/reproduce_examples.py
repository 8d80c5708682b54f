"""Print the block sets, shift graph and verdict for the two worked examples."""

import argparse
from dataclasses import dataclass

from cantorunion.admissibility import build_graph, decide_self_similar, find_cycle
from cantorunion.digits import TranslationVector
from cantorunion.words import block_sets, omega, omega_hat


@dataclass(frozen=True)
class Config:
    max_N: int = 3
    max_m: int = 6


def describe(t: TranslationVector, show_sets: bool = True):
    print(f"t = {t}  tau={t.tau}  s={t.s}")
    if show_sets:
        a, a_hat, w = block_sets(t, t.tau)
        print(f"  Omega     = {omega(t, t.tau).strings()}")
        print(f"  Omega_hat = {omega_hat(t, t.tau).strings()}")
        print(f"  A         = {a.strings()}")
        print(f"  A_hat     = {a_hat.strings()}")
    g = build_graph(t)
    cyc = find_cycle(g)
    print(f"  #V = {len(g)}  cycle = {None if cyc is None else [g.label(c) for c in cyc]}")
    print(f"  verdict: {decide_self_similar(t).to_json()}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-N", type=int, default=Config.max_N)
    p.add_argument("--max-m", type=int, default=Config.max_m)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(p.parse_args()).items()})

    print("== four translates, N=1 ==")
    describe(TranslationVector.from_digits(1, [[1, 1], [1, 0, 1], [1, 0, 0, 1]]))

    print("\n== staircase t_j = 1^j ==")
    for N in range(1, cfg.max_N + 1):
        for m in range(1, cfg.max_m + 1):
            t = TranslationVector.from_digits(N, [[1] * j for j in range(1, m + 1)])
            describe(t, show_sets=False)


if __name__ == "__main__":
    main()
