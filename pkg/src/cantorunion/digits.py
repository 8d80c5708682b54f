"""Exact digit-string arithmetic for translation values.

A translation value is ``t = ((1-beta)/N) * sum_{k=1}^{L} t_k beta^{-k}`` with
every ``t_k`` in ``{0, ..., N}``.  Digits are stored lowest index first, so
``DigitString((1, 0, 1), N=1)`` is ``(1-beta)(beta^-1 + beta^-3)``.

For ``0 < beta < 1/(N+1)`` the digit at the highest index dominates everything
below it, so ordering and equality never need a numeric value of ``beta``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union


class InvalidVector(ValueError):
    """Raised when digits or entries violate the translation-vector invariants."""


@dataclass(frozen=True)
class NotInT:
    """Witness that a derived vector leaves the digit set ``{0..N}``.

    ``j`` is the entry index and ``k`` the digit index (1-based) where the
    offending digit ``digit`` appears.
    """

    j: int
    k: int
    digit: int

    def to_json(self) -> dict:
        return {"j": self.j, "k": self.k, "digit": self.digit}


@dataclass(frozen=True)
class BetaLaurent:
    """Finite sum ``((1-beta)/N) * sum_k c_k beta^k`` with integer ``c_k``.

    ``coeffs`` is a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients.  Equality is coefficient-wise.
    """

    coeffs: tuple[tuple[int, int], ...]
    N: int

    def __post_init__(self):
        cleaned = tuple(sorted((int(e), int(c)) for e, c in self.coeffs if c != 0))
        exps = [e for e, _ in cleaned]
        if len(set(exps)) != len(exps):
            raise ValueError("duplicate exponent in BetaLaurent")
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], N: int) -> "BetaLaurent":
        return cls(tuple(mapping.items()), N)

    @classmethod
    def zero(cls, N: int) -> "BetaLaurent":
        return cls((), N)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def _check(self, other: "BetaLaurent"):
        if self.N != other.N:
            raise ValueError(f"mismatched N: {self.N} vs {other.N}")

    def __add__(self, other: "BetaLaurent") -> "BetaLaurent":
        self._check(other)
        out = self.as_dict()
        for e, c in other.coeffs:
            out[e] = out.get(e, 0) + c
        return BetaLaurent.from_mapping(out, self.N)

    def __neg__(self) -> "BetaLaurent":
        return BetaLaurent(tuple((e, -c) for e, c in self.coeffs), self.N)

    def __sub__(self, other: "BetaLaurent") -> "BetaLaurent":
        return self + (-other)

    def shift(self, q: int) -> "BetaLaurent":
        """Multiply by ``beta**q``."""
        return BetaLaurent(tuple((e + q, c) for e, c in self.coeffs), self.N)

    def is_zero(self) -> bool:
        return not self.coeffs

    def value(self, beta: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs:
            total += c * beta**e
        return (1 - beta) / self.N * total

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.coeffs}


@dataclass(frozen=True, order=False)
class DigitString:
    """Canonical digit string: trailing zeros at the high end are stripped."""

    digits: tuple[int, ...]
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise InvalidVector(f"N must be >= 1, got {self.N}")
        digits = tuple(int(d) for d in self.digits)
        for k, d in enumerate(digits, start=1):
            if not 0 <= d <= self.N:
                raise InvalidVector(f"digit {d} at index {k} outside 0..{self.N}")
        while digits and digits[-1] == 0:
            digits = digits[:-1]
        object.__setattr__(self, "digits", digits)

    @classmethod
    def parse(cls, text: str, N: int) -> "DigitString":
        """Parse the comma-separated text form, lowest index first."""
        text = text.strip()
        if not text:
            return cls((), N)
        try:
            digits = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise InvalidVector(f"cannot parse digit string {text!r}") from exc
        return cls(digits, N)

    @property
    def length(self) -> int:
        """Highest nonzero index (0 for the zero string)."""
        return len(self.digits)

    @property
    def lowest(self) -> int:
        """Lowest nonzero index (0 for the zero string)."""
        for k, d in enumerate(self.digits, start=1):
            if d:
                return k
        return 0

    def digit(self, k: int) -> int:
        if 1 <= k <= len(self.digits):
            return self.digits[k - 1]
        return 0

    def is_zero(self) -> bool:
        return not self.digits

    def to_laurent(self) -> BetaLaurent:
        return BetaLaurent(tuple((-k, d) for k, d in enumerate(self.digits, start=1)), self.N)

    def text(self) -> str:
        return ",".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return f"[{self.text()}]"


def digit_compare(a: DigitString, b: DigitString) -> int:
    """Return -1, 0 or 1 as ``a`` is below, equal to, or above ``b``.

    The highest differing digit decides; valid for every ``beta`` in
    ``(0, 1/(N+1))``.
    """
    if a.N != b.N:
        raise ValueError(f"mismatched N: {a.N} vs {b.N}")
    for k in range(max(a.length, b.length), 0, -1):
        da, db = a.digit(k), b.digit(k)
        if da != db:
            return -1 if da < db else 1
    return 0


def digit_key(s: DigitString, width: int) -> tuple[int, ...]:
    """Sort key consistent with :func:`digit_compare` for strings of length <= width."""
    return tuple(s.digit(k) for k in range(width, 0, -1))


def check_beta(beta, N: int, upper: Fraction | None = None) -> Fraction:
    beta = Fraction(beta)
    upper = Fraction(1, N + 1) if upper is None else upper
    if not 0 < beta < upper:
        raise ValueError(f"beta={beta} outside (0, {upper}) for N={N}")
    return beta


def value_at(x: Union[BetaLaurent, DigitString], beta, N: int) -> Fraction:
    """Exact rational value of ``x`` at a rational ``beta`` in ``(0, 1/(N+1))``."""
    beta = check_beta(beta, N)
    if x.N != N:
        raise ValueError(f"mismatched N: {x.N} vs {N}")
    if isinstance(x, DigitString):
        x = x.to_laurent()
    return x.value(beta)


@dataclass(frozen=True)
class TranslationVector:
    """Strictly increasing tuple ``(t_0, ..., t_m)`` of digit strings with ``t_0 = 0``."""

    N: int
    entries: tuple[DigitString, ...]
    tau: int = field(init=False)
    s: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        entries = tuple(
            e if isinstance(e, DigitString) else DigitString(tuple(e), self.N) for e in self.entries
        )
        if not entries:
            raise InvalidVector("a translation vector needs at least t_0")
        for e in entries:
            if e.N != self.N:
                raise InvalidVector(f"entry {e} has N={e.N}, vector has N={self.N}")
        if not entries[0].is_zero():
            raise InvalidVector(f"t_0 must be zero, got {entries[0]}")
        for j in range(len(entries) - 1):
            if digit_compare(entries[j], entries[j + 1]) >= 0:
                raise InvalidVector(
                    f"entries must be strictly increasing: t_{j}={entries[j]} "
                    f"is not below t_{j + 1}={entries[j + 1]}"
                )
        tau = max(e.length for e in entries)
        s = tuple(max(e.digit(k) for e in entries) for k in range(1, tau + 1))
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "s", s)

    @classmethod
    def from_digits(cls, N: int, translates: Iterable[Iterable[int]], include_zero: bool = True):
        """Build from digit lists; ``t_0 = 0`` is prepended unless ``include_zero`` is False."""
        entries = [DigitString(tuple(d), N) for d in translates]
        if include_zero:
            entries.insert(0, DigitString((), N))
        return cls(N, tuple(entries))

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "TranslationVector":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            N = int(data["N"])
            entries = data["entries"]
        except (KeyError, TypeError) as exc:
            raise InvalidVector("vector JSON needs 'N' and 'entries'") from exc
        return cls(N, tuple(DigitString(tuple(e), N) for e in entries))

    def to_json(self) -> dict:
        return {"N": self.N, "entries": [list(e.digits) for e in self.entries]}

    @property
    def m(self) -> int:
        return len(self.entries) - 1

    def digit(self, j: int, k: int) -> int:
        return self.entries[j].digit(k)

    def values(self, beta) -> list[Fraction]:
        return [value_at(e, beta, self.N) for e in self.entries]

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + f"; N={self.N})"


def conjugate(t: TranslationVector) -> Union[TranslationVector, NotInT]:
    """Conjugate vector ``hat t_j = t_m - t_{m-j}``, decided digit by digit.

    Returns :class:`NotInT` naming the first (j, k) whose digit difference
    falls outside ``{0..N}``.  Codings with digits in ``{-N..2N}`` are unique
    for ``beta < 1/(2N+1)``, so a negative digit really means ``hat t_j`` has
    no finite ``{0..N}`` expansion.
    """
    top = t.entries[-1]
    new = []
    for j in range(t.m + 1):
        other = t.entries[t.m - j]
        digits = []
        for k in range(1, t.tau + 1):
            d = top.digit(k) - other.digit(k)
            if not 0 <= d <= t.N:
                return NotInT(j, k, d)
            digits.append(d)
        new.append(DigitString(tuple(digits), t.N))
    return TranslationVector(t.N, tuple(new))


def scale(t: TranslationVector, q: int) -> Union[TranslationVector, NotInT]:
    """Return ``beta**q * t``; every digit index moves from ``k`` to ``k - q``."""
    new = []
    for j, e in enumerate(t.entries):
        if e.is_zero():
            new.append(e)
            continue
        if e.lowest - q < 1:
            return NotInT(j, e.lowest - q, e.digit(e.lowest))
        if q >= 0:
            digits = e.digits[q:]
        else:
            digits = (0,) * (-q) + e.digits
        new.append(DigitString(digits, t.N))
    return TranslationVector(t.N, tuple(new))
