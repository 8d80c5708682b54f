"""Compare acyclicity, nilpotency and covering on every small vector.

Also counts how often the conjugate lands in T and how many vectors are
admissible, per (N, m, tau_max).
"""

import argparse
import time
from dataclasses import dataclass

from cantorunion.admissibility import build_graph, covering_holds, find_cycle, is_nilpotent
from cantorunion.constructors import candidate_count, iter_candidates
from cantorunion.digits import NotInT, conjugate


@dataclass(frozen=True)
class Config:
    cases: tuple = ((1, 1, 4), (1, 2, 4), (2, 1, 3), (2, 2, 3))


def sweep(N, m, tau_max):
    stats = {"vectors": 0, "admissible": 0, "conjugate_in_T": 0, "disagreements": 0}
    for t in iter_candidates(m, N, tau_max):
        g = build_graph(t)
        acyclic = find_cycle(g) is None
        nil = is_nilpotent(g.adjacency())
        cover = covering_holds(t, t.tau + len(g))
        stats["vectors"] += 1
        stats["admissible"] += acyclic
        stats["conjugate_in_T"] += not isinstance(conjugate(t), NotInT)
        stats["disagreements"] += not (acyclic == nil == cover)
    return stats


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--case", action="append", metavar="N,m,tau_max", help="override the default cases")
    args = p.parse_args()
    cfg = Config(tuple(tuple(int(x) for x in c.split(",")) for c in args.case)) if args.case else Config()

    for N, m, tau_max in cfg.cases:
        start = time.perf_counter()
        print(f"N={N} m={m} tau_max={tau_max} ({candidate_count(m, N, tau_max)} candidates)")
        stats = sweep(N, m, tau_max)
        print(f"  {stats}  {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
