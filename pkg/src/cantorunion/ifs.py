"""Generating IFSs for admissible vectors and their verification.

Every map has the form ``x -> beta^n x + b`` (orientation ``+``) or
``x -> beta^n (1 - x) + b`` (orientation ``-``), where ``b`` is a finite
beta-Laurent sum: ``phi_i(0)`` for a word ``i`` of length ``n``, plus the
translate ``t_j`` that places the image in ``Gamma + t_j``.
"""

from __future__ import annotations

import bisect
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from cantorunion.admissibility import is_admissible
from cantorunion.digits import BetaLaurent, TranslationVector, check_beta
from cantorunion.words import (
    WordSet,
    block_sets,
    check_universe,
    decode,
    encode,
    omega,
    omega_hat,
    parse_word,
    universe_size,
    word_text,
)


class NotAdmissible(ValueError):
    """An IFS was requested for a vector that is not admissible."""


class NotInGamma(ValueError):
    """Greedy digit extraction found no digit at position ``index`` (1-based)."""

    def __init__(self, index: int, remainder):
        super().__init__(f"no admissible digit at position {index} (remainder {remainder})")
        self.index = index
        self.remainder = remainder


def word_offset(word: Sequence[int], N: int) -> BetaLaurent:
    """``phi_word(0)``: letter ``k`` sits at exponent ``k-1``."""
    return BetaLaurent(tuple((k, c) for k, c in enumerate(word)), N)


@dataclass(frozen=True)
class AffineMap:
    sign: int
    power: int
    offset: BetaLaurent
    word: tuple[int, ...]
    translate: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.power < 1:
            raise ValueError("power must be >= 1")

    @property
    def N(self) -> int:
        return self.offset.N

    def coefficients(self, beta: Fraction) -> tuple[Fraction, Fraction]:
        """``(r, c)`` with ``f(x) = r*x + c``."""
        r = beta**self.power
        c = self.offset.value(beta)
        if self.sign < 0:
            return -r, c + r
        return r, c

    def __call__(self, x, beta):
        r, c = self.coefficients(Fraction(beta))
        return r * x + c

    def to_json(self) -> dict:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "power": self.power,
            "offset_coeffs": self.offset.to_json(),
            "word": word_text(self.word, self.N),
            "translate": self.translate,
        }

    @classmethod
    def from_json(cls, data: dict, N: int) -> "AffineMap":
        word = parse_word(data["word"], N)
        offset = BetaLaurent.from_mapping({int(k): int(v) for k, v in data["offset_coeffs"].items()}, N)
        return cls(1 if data["sign"] == "+" else -1, int(data["power"]), offset, word, int(data.get("translate", 0)))


def base_ifs(N: int) -> list[AffineMap]:
    """``{phi_0, ..., phi_N}``, the IFS of the Cantor set itself."""
    return [AffineMap(1, 1, word_offset((i,), N), (i,)) for i in range(N + 1)]


def extract_ifs(t: TranslationVector, length: Optional[int] = None) -> list[AffineMap]:
    """Generating IFS of the union for an admissible ``t``.

    Words of ``omega(t, n)`` give maps ``phi_i(x) + t_j`` and words of
    ``omega_hat(t, n)`` give ``phi_i(1 - x) + t_j``, for ``tau <= n <= length``
    and every ``j``.  ``length`` defaults to the minimal covering length.
    """
    if t.m == 0:
        return base_ifs(t.N)
    adm = is_admissible(t)
    if not adm:
        raise NotAdmissible(f"{t} is not admissible (cycle {adm.cycle})")
    if length is None:
        length = adm.covering_length
    elif length < adm.covering_length:
        raise NotAdmissible(f"covering needs length >= {adm.covering_length}, got {length}")
    laurents = [e.to_laurent() for e in t.entries]
    maps = []
    for sign, family in ((1, omega), (-1, omega_hat)):
        for n in range(t.tau, length + 1):
            for word in family(t, n):
                base = word_offset(word, t.N)
                for j, tj in enumerate(laurents):
                    maps.append(AffineMap(sign, n, base + tj, word, j))
    return maps


def _block_word(f: AffineMap, base: BetaLaurent, tj: BetaLaurent) -> Optional[tuple[int, ...]]:
    """Word of ``f``'s image of ``Gamma + t_j`` inside the Cantor set, if it is one."""
    shifted = tj.shift(f.power)
    block = base + shifted if f.sign > 0 else base - shifted
    coeffs = block.as_dict()
    if any(not 0 <= e < f.power for e in coeffs):
        return None
    word = tuple(coeffs.get(e, 0) for e in range(f.power))
    if any(not 0 <= c <= f.N for c in word):
        return None
    return word


def verify_symbolic(t: TranslationVector, ifs: Sequence[AffineMap]) -> bool:
    """Check that ``ifs`` generates the union, exactly and at the word level.

    Each map must be ``phi_i`` or ``phi_i(1 - .)`` plus a translate, every
    image block must lie in ``A`` (resp. ``A_hat``) at the map's length, and
    for every translate the blocks must stamp out all of ``{0..N}^L``, ``L``
    the largest map power.
    """
    if not ifs:
        return False
    laurents = [e.to_laurent() for e in t.entries]
    length = max(f.power for f in ifs)
    size = check_universe(t.N, length)
    b = t.N + 1
    allowed: dict[tuple[int, int], WordSet] = {}
    covered = {j: np.zeros(size, dtype=bool) for j in range(t.m + 1)}
    for f in ifs:
        if f.N != t.N or len(f.word) != f.power or f.power < t.tau or not 0 <= f.translate <= t.m:
            return False
        base = f.offset - laurents[f.translate]
        if base != word_offset(f.word, t.N):
            return False
        key = (f.sign, f.power)
        if key not in allowed:
            a, a_hat, _ = block_sets(t, f.power)
            allowed[key] = a if f.sign > 0 else a_hat
        width = b ** (length - f.power)
        for tj in laurents:
            w = _block_word(f, base, tj)
            if w is None or w not in allowed[key]:
                return False
            start = encode(w, t.N) * width
            covered[f.translate][start : start + width] = True
    return all(c.all() for c in covered.values())


def prune_ifs(t: TranslationVector, ifs: Sequence[AffineMap]) -> tuple[list[AffineMap], list[AffineMap]]:
    """Drop maps whose blocks are already stamped by the rest (heuristic, greedy).

    Maps are tried from last to first; returns ``(kept, removed)``.
    """
    laurents = [e.to_laurent() for e in t.entries]
    length = max(f.power for f in ifs)
    b = t.N + 1
    size = universe_size(t.N, length)

    def ranges(f):
        base = f.offset - laurents[f.translate]
        for tj in laurents:
            w = _block_word(f, base, tj)
            width = b ** (length - len(w))
            start = encode(w, t.N) * width
            yield start, start + width

    counts = {j: np.zeros(size, dtype=np.int64) for j in range(t.m + 1)}
    for f in ifs:
        for lo, hi in ranges(f):
            counts[f.translate][lo:hi] += 1
    drop = [False] * len(ifs)
    for i in range(len(ifs) - 1, -1, -1):
        f = ifs[i]
        c = counts[f.translate]
        spans = list(ranges(f))
        for lo, hi in spans:
            c[lo:hi] -= 1
        if all(c[lo:hi].min() > 0 for lo, hi in spans):
            drop[i] = True
        else:
            for lo, hi in spans:
                c[lo:hi] += 1
    kept = [f for f, d in zip(ifs, drop) if not d]
    removed = [f for f, d in zip(ifs, drop) if d]
    return kept, removed


def _greedy(x: Fraction, beta: Fraction, N: int, depth: int) -> tuple[list[int], Fraction]:
    c = (1 - beta) / N
    digits = []
    r = x
    for k in range(1, depth + 1):
        d = min(N, math.floor(r / c))
        if d < 0 or r - d * c > beta:
            raise NotInGamma(k, r)
        digits.append(d)
        r = (r - d * c) / beta
    return digits, r


def greedy_coding(x, beta, N: int, depth: int) -> list[int]:
    """First ``depth`` digits of ``x`` in the Cantor set, chosen greedily.

    Raises :class:`NotInGamma` at the first position where the remainder falls
    in a gap between the ``N+1`` first-level intervals.
    """
    x = Fraction(x)
    beta = check_beta(beta, N, Fraction(1, 2 * N + 1))
    if not 0 <= x <= 1:
        raise ValueError(f"x={x} outside [0, 1]")
    return _greedy(x, beta, N, depth)[0]


@dataclass(frozen=True)
class VerifyConfig:
    samples: int = 1000
    depth: int = 12
    seed: int = 0
    mode: str = "exact"
    tolerance: float = 1e-9
    cover_limit: int = 2**16


@dataclass
class NumericReport:
    beta: str
    N: int
    maps: int
    evaluations: int
    failures: int
    max_residual: float
    exact_zero: bool
    cover_depth: int
    cylinders_checked: int
    cover_failures: int
    seed: int
    mode: str
    tolerance: float
    first_failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        if self.failures or self.cover_failures:
            return False
        if self.mode == "exact":
            return self.exact_zero
        return self.max_residual < self.tolerance

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def _float_greedy(y: float, beta: float, N: int, depth: int, slack: float) -> Optional[int]:
    """Float counterpart of ``_greedy``; returns the failing position or None.

    ``slack`` bounds the absolute error of ``y``.  It grows by ``1/beta`` per
    digit, and decoding stops once it could blur the gap between first-level
    pieces, since deeper digits are then not resolvable in double precision.
    """
    c = (1 - beta) / N
    half_gap = (c - beta) / 2
    r = y
    for k in range(1, depth + 1):
        if slack >= half_gap:
            break
        d = min(N, max(0, math.floor((r + slack) / c)))
        if r < d * c - slack or r - d * c > beta + slack:
            return k
        r = (r - d * c) / beta
        slack /= beta
    return None


def _float_error(*terms: float) -> float:
    # a few roundings per operation, relative to the largest operand
    return 64 * sys.float_info.epsilon * max(1.0, *(abs(v) for v in terms))


def verify_numeric(
    t: TranslationVector,
    ifs: Optional[Sequence[AffineMap]] = None,
    beta=Fraction(1, 4),
    config: VerifyConfig = VerifyConfig(),
) -> NumericReport:
    """Sample points of the union, push them through every map, certify membership.

    Points are ``t_j`` plus a random depth-``config.depth`` coding.  Samples are
    assigned to maps round robin, and each map gets at least one.  Each image,
    minus the map's translate, is decoded greedily; in exact mode the
    remainder after ``power + depth`` digits must be exactly 0 or 1.  Cover:
    every depth-``L`` cylinder of each ``Gamma + t_j`` (``L`` the largest power)
    must sit inside the convex hull of some image.
    """
    N = t.N
    beta = check_beta(beta, N, Fraction(1, 2 * N + 1))
    if ifs is None:
        ifs = extract_ifs(t)
    if not ifs:
        raise ValueError("empty IFS")
    if config.mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {config.mode!r}")
    rng = np.random.default_rng(config.seed)
    tvals = t.values(beta)
    coeffs = [f.coefficients(beta) for f in ifs]
    c = (1 - beta) / N
    powers = [beta**k for k in range(config.depth + 1)]
    fbeta = float(beta)

    total = max(config.samples, len(ifs))
    failures = 0
    first_failure = None
    max_res = Fraction(0)
    max_res_float = 0.0
    for s in range(total):
        i = s % len(ifs)
        f = ifs[i]
        r, off = coeffs[i]
        j = int(rng.integers(t.m + 1))
        digits = rng.integers(0, N + 1, config.depth)
        x = tvals[j] + c * sum(int(d) * powers[k] for k, d in enumerate(digits))
        y = r * x + off - tvals[f.translate]
        if config.mode == "exact":
            try:
                _, rem = _greedy(y, beta, N, f.power + config.depth)
            except NotInGamma as exc:
                failures += 1
                first_failure = first_failure or f"map {i} at x={x}: {exc}"
                continue
            res = min(abs(rem), abs(1 - rem)) * beta ** (f.power + config.depth)
            max_res = max(max_res, res)
        else:
            xf = float(tvals[j]) + float(c) * sum(int(d) * fbeta**k for k, d in enumerate(digits))
            yf = float(r) * xf + float(off) - float(tvals[f.translate])
            slack = _float_error(xf, float(off), float(tvals[f.translate]))
            bad = _float_greedy(yf, fbeta, N, f.power + config.depth, slack)
            if bad is not None:
                failures += 1
                first_failure = first_failure or f"map {i}: float greedy failed at digit {bad}"
                continue
            max_res_float = max(max_res_float, abs(yf - float(y)))

    depth, checked, cover_failures = _check_cover(t, ifs, coeffs, tvals, beta, rng, config)
    if config.mode == "exact":
        max_residual, exact_zero = float(max_res), max_res == 0
    else:
        max_residual, exact_zero = max_res_float, max_res_float == 0.0
    return NumericReport(
        beta=str(beta),
        N=N,
        maps=len(ifs),
        evaluations=total,
        failures=failures,
        max_residual=max_residual,
        exact_zero=exact_zero,
        cover_depth=depth,
        cylinders_checked=checked,
        cover_failures=cover_failures,
        seed=config.seed,
        mode=config.mode,
        tolerance=config.tolerance,
        first_failure=first_failure,
    )


def _check_cover(t, ifs, coeffs, tvals, beta, rng, config) -> tuple[int, int, int]:
    N = t.N
    depth = max(f.power for f in ifs)
    c = (1 - beta) / N
    width = beta**depth
    hulls: dict[int, tuple[list[Fraction], list[Fraction]]] = {}
    cache: dict[tuple[Fraction, Fraction], list[tuple[Fraction, Fraction]]] = {}
    grouped: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for f, (r, off) in zip(ifs, coeffs):
        grouped.setdefault(f.translate, []).append((r, off - tvals[f.translate]))
    for j in range(t.m + 1):
        spans = []
        for r, off in grouped.get(j, []):
            key = (r, off)
            if key not in cache:
                ends = [(r * tv + off, r * (tv + 1) + off) for tv in tvals]
                cache[key] = [(min(a, b), max(a, b)) for a, b in ends]
            spans.extend(cache[key])
        spans.sort()
        los = [lo for lo, _ in spans]
        reach = []
        best = None
        for _, hi in spans:
            best = hi if best is None else max(best, hi)
            reach.append(best)
        hulls[j] = (los, reach)

    b = N + 1
    count = b**depth
    if count <= config.cover_limit:
        words = [decode(code, depth, N) for code in range(count)]
    else:
        words = [tuple(int(d) for d in rng.integers(0, b, depth)) for _ in range(config.cover_limit)]
    starts = [c * sum(w[k] * beta**k for k in range(depth)) for w in words]
    checked = failures = 0
    for j in range(t.m + 1):
        los, reach = hulls[j]
        for a in starts:
            checked += 1
            pos = bisect.bisect_right(los, a)
            if pos == 0 or reach[pos - 1] < a + width:
                failures += 1
    return depth, checked, failures
