"""Admissible vectors: the explicit construction, the m=1 closed form, and brute force."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from cantorunion.admissibility import Decision, decide_self_similar, is_admissible
from cantorunion.digits import DigitString, NotInT, TranslationVector, conjugate, digit_key, scale


class BudgetExceeded(RuntimeError):
    """The candidate space is larger than the configured budget."""


@dataclass(frozen=True)
class EnumerationConfig:
    budget: int = 2_000_000
    jobs: int = 1
    chunksize: int = 256


def s_set(m: int) -> list[tuple[int, ...]]:
    """Binary words of length ``l+1`` (``2^l <= m < 2^(l+1)``) for ``m >= 2``.

    Every word with leading letter 0 is taken (one from each complement pair,
    ``0^(l+1)`` among them), then ``1^(l+1)``, then further words with leading
    letter 1 in ascending order until there are ``m+1``.
    """
    if m < 2:
        raise ValueError("the S-set construction needs m >= 2")
    ell = m.bit_length() - 1
    width = ell + 1
    words = [tuple((c >> (width - 1 - p)) & 1 for p in range(width)) for c in range(2**width)]
    chosen = [w for w in words if w[0] == 0]
    ones = (1,) * width
    chosen.append(ones)
    for w in words:
        if len(chosen) == m + 1:
            break
        if w[0] == 1 and w != ones:
            chosen.append(w)
    return chosen


def construct_admissible(m: int, N: int) -> TranslationVector:
    """An admissible vector with ``m+1`` entries.

    ``m = 1`` gives ``(0, [1])``.  For ``m >= 2`` the entries are the S-set
    words read as digit strings (letter ``k`` is the digit at index ``k``);
    every letterwise-complement pair meets S, which makes ``W`` full at
    length ``l+1`` and the shift graph empty.
    """
    if m < 1 or N < 1:
        raise ValueError(f"need m >= 1 and N >= 1, got m={m}, N={N}")
    if m == 1:
        return TranslationVector.from_digits(N, [[1]])
    strings = [DigitString(w, N) for w in s_set(m)]
    width = max(s.length for s in strings)
    strings.sort(key=lambda s: digit_key(s, width))
    return TranslationVector(N, tuple(strings))


def corollary_m1(t1: DigitString, N: int) -> bool:
    """Closed form for ``m = 1``: exactly one nonzero digit, and it is at most ``(N+1)//2``.

    The digit may sit at any index ``k >= 1``; the string is first scaled so
    that its lowest nonzero digit lands at index 1.
    """
    if t1.is_zero():
        raise ValueError("t1 must be nonzero")
    if t1.N != N:
        raise ValueError(f"mismatched N: {t1.N} vs {N}")
    t = TranslationVector(N, (DigitString((), N), t1))
    reduced = scale(t, t1.lowest - 1)
    assert not isinstance(reduced, NotInT)
    top = reduced.entries[1]
    return top.length == 1 and 1 <= top.digit(1) <= (N + 1) // 2


def digit_strings(N: int, tau_max: int, nonzero: bool = True) -> list[DigitString]:
    """All digit strings of length at most ``tau_max``, in increasing digit order."""
    out = []
    for digits in itertools.product(range(N + 1), repeat=tau_max):
        # product varies the last slot fastest; read it as the lowest index
        s = DigitString(tuple(reversed(digits)), N)
        if nonzero and s.is_zero():
            continue
        out.append(s)
    return out


def candidate_count(m: int, N: int, tau_max: int) -> int:
    return math.comb((N + 1) ** tau_max - 1, m)


def iter_candidates(m: int, N: int, tau_max: int) -> Iterator[TranslationVector]:
    zero = DigitString((), N)
    for combo in itertools.combinations(digit_strings(N, tau_max), m):
        yield TranslationVector(N, (zero,) + combo)


def _admissible_or_none(t: TranslationVector):
    return t if is_admissible(t) else None


def _check_budget(m, N, tau_max, config):
    count = candidate_count(m, N, tau_max)
    if count > config.budget:
        raise BudgetExceeded(f"{count} candidates for m={m}, N={N}, tau_max={tau_max} exceed budget {config.budget}")
    return count


def enumerate_admissible(
    m: int, N: int, tau_max: int, config: EnumerationConfig = EnumerationConfig()
) -> list[TranslationVector]:
    """Every admissible ``t`` with ``m+1`` entries and ``tau_t <= tau_max``.

    Output is in lexicographic order of the entry tuples under digit order,
    independent of ``config.jobs``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_budget(m, N, tau_max, config)
    candidates = iter_candidates(m, N, tau_max)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = pool.map(_admissible_or_none, candidates, chunksize=config.chunksize)
            return [t for t in results if t is not None]
    return [t for t in candidates if is_admissible(t)]


def count_self_similar(m: int, N: int, tau_max: int, config: EnumerationConfig = EnumerationConfig()) -> int:
    """Number of candidates with a SelfSimilar verdict.

    A vector and its conjugate share their verdict, so each pair inside the
    candidate space is decided once.
    """
    _check_budget(m, N, tau_max, config)
    decided: dict[TranslationVector, bool] = {}
    total = 0
    for t in iter_candidates(m, N, tau_max):
        if t in decided:
            ok = decided.pop(t)
        else:
            ok = decide_self_similar(t).decision == Decision.SELF_SIMILAR
            hat = conjugate(t)
            if not isinstance(hat, NotInT) and hat != t:
                decided[hat] = ok
        total += ok
    return total
