"""Exhaustive m=1 sweep: which single translates give a self-similar union."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from cantorunion.admissibility import Decision, decide_self_similar
from cantorunion.constructors import corollary_m1, digit_strings
from cantorunion.digits import DigitString, TranslationVector


@dataclass(frozen=True)
class Config:
    max_N: int = 4
    tau_max: int = 4


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-N", type=int, default=Config.max_N)
    p.add_argument("--tau-max", type=int, default=Config.tau_max)
    args = p.parse_args()
    cfg = Config(args.max_N, args.tau_max)

    for N in range(1, cfg.max_N + 1):
        start = time.perf_counter()
        tally = Counter()
        accepted = []
        for s in digit_strings(N, cfg.tau_max):
            t = TranslationVector(N, (DigitString((), N), s))
            ok = decide_self_similar(t).decision == Decision.SELF_SIMILAR
            tally[(ok, corollary_m1(s, N))] += 1
            if ok:
                accepted.append(s.text())
        agree = tally[(True, True)] + tally[(False, False)]
        print(
            f"N={N}: {sum(tally.values())} strings, {len(accepted)} self-similar, "
            f"{agree} agree with the closed form ({time.perf_counter() - start:.2f}s)"
        )
        print(f"  accepted: {accepted}")


if __name__ == "__main__":
    main()
