"""Words over ``{0..N}`` and dense bitset word sets.

A word ``i_1 ... i_n`` is keyed by ``sum_k i_k (N+1)^(n-k)``, so ``i_1`` is the
most significant letter and position ``n+1-k`` carries weight ``(N+1)^(k-1)``.
That makes the tail conditions on ``Omega`` plain base-(N+1) digit tests and
letterwise complement ``i -> N-i`` the map ``code -> (N+1)^n - 1 - code``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from cantorunion.digits import TranslationVector

MAX_UNIVERSE_BITS = 2**28


class UniverseTooLarge(MemoryError):
    """The word universe ``(N+1)^n`` exceeds the memory guard."""


def universe_size(N: int, n: int) -> int:
    return (N + 1) ** n


def check_universe(N: int, n: int) -> int:
    size = universe_size(N, n)
    if size > MAX_UNIVERSE_BITS:
        raise UniverseTooLarge(
            f"(N+1)^n = {N + 1}^{n} = {size} exceeds the {MAX_UNIVERSE_BITS}-bit guard"
        )
    return size


def encode(word: Sequence[int], N: int) -> int:
    b = N + 1
    code = 0
    for letter in word:
        if not 0 <= letter <= N:
            raise ValueError(f"letter {letter} outside 0..{N}")
        code = code * b + letter
    return code


def decode(code: int, n: int, N: int) -> tuple[int, ...]:
    b = N + 1
    if not 0 <= code < b**n:
        raise ValueError(f"code {code} outside universe of length {n}")
    out = [0] * n
    for pos in range(n - 1, -1, -1):
        code, out[pos] = divmod(code, b)
    return tuple(out)


def word_text(word: Sequence[int], N: int) -> str:
    """Bare digit string for ``N <= 9``; comma-joined otherwise."""
    if N <= 9:
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def parse_word(text: str, N: int) -> tuple[int, ...]:
    if "," in text or N > 9:
        return tuple(int(c) for c in text.split(",") if c)
    return tuple(int(c) for c in text)


class WordSet:
    """Immutable set of words of one length ``n`` stored as a dense bitset."""

    __slots__ = ("n", "N", "bits")

    def __init__(self, n: int, N: int, bits: np.ndarray | None = None):
        size = check_universe(N, n)
        if bits is None:
            bits = np.zeros(size, dtype=bool)
        else:
            bits = np.asarray(bits, dtype=bool)
            if bits.shape != (size,):
                raise ValueError(f"bitset shape {bits.shape} != ({size},)")
            bits = bits.copy()
        bits.flags.writeable = False
        self.n = n
        self.N = N
        self.bits = bits

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], n: int, N: int) -> "WordSet":
        bits = np.zeros(check_universe(N, n), dtype=bool)
        for w in words:
            if len(w) != n:
                raise ValueError(f"word {w} does not have length {n}")
            bits[encode(w, N)] = True
        return cls(n, N, bits)

    @classmethod
    def from_strings(cls, texts: Iterable[str], N: int) -> "WordSet":
        words = [parse_word(t, N) for t in texts]
        n = len(words[0]) if words else 0
        return cls.from_words(words, n, N)

    @classmethod
    def full(cls, n: int, N: int) -> "WordSet":
        return cls(n, N, np.ones(check_universe(N, n), dtype=bool))

    @property
    def size(self) -> int:
        return self.bits.size

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __contains__(self, item) -> bool:
        if isinstance(item, (int, np.integer)):
            return 0 <= item < self.size and bool(self.bits[item])
        if len(item) != self.n:
            return False
        return bool(self.bits[encode(item, self.N)])

    def codes(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for c in self.codes():
            yield decode(int(c), self.n, self.N)

    def strings(self) -> list[str]:
        return [word_text(w, self.N) for w in self]

    def _same_universe(self, other: "WordSet"):
        if (self.n, self.N) != (other.n, other.N):
            raise ValueError(f"word sets over different universes: {(self.n, self.N)} vs {(other.n, other.N)}")

    def __or__(self, other: "WordSet") -> "WordSet":
        self._same_universe(other)
        return WordSet(self.n, self.N, self.bits | other.bits)

    def __and__(self, other: "WordSet") -> "WordSet":
        self._same_universe(other)
        return WordSet(self.n, self.N, self.bits & other.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordSet):
            return NotImplemented
        return (self.n, self.N) == (other.n, other.N) and bool(np.array_equal(self.bits, other.bits))

    __hash__ = None

    def complement(self) -> "WordSet":
        """Set complement inside ``{0..N}^n``."""
        return WordSet(self.n, self.N, ~self.bits)

    def mirror(self) -> "WordSet":
        """Letterwise complement ``i -> N - i`` of every member."""
        return WordSet(self.n, self.N, self.bits[::-1])

    def is_full(self) -> bool:
        return bool(self.bits.all())

    def extend_left(self, k: int) -> "WordSet":
        """``{0..N}^k x self``."""
        return WordSet(self.n + k, self.N, np.tile(self.bits, universe_size(self.N, k)))

    def extend_right(self, k: int) -> "WordSet":
        """``self x {0..N}^k``."""
        return WordSet(self.n + k, self.N, np.repeat(self.bits, universe_size(self.N, k)))

    def __repr__(self) -> str:
        shown = self.strings() if len(self) <= 16 else f"{len(self)} words"
        return f"WordSet(n={self.n}, N={self.N}, {shown})"


def _tail_mask(t: TranslationVector, n: int, hat: bool) -> np.ndarray:
    if n < t.tau:
        raise ValueError(f"word length n={n} must be >= tau_t={t.tau}")
    b = t.N + 1
    size = check_universe(t.N, n)
    codes = np.arange(size, dtype=np.int64)
    mask = np.ones(size, dtype=bool)
    for k in range(1, t.tau + 1):
        # position n+1-k carries weight b^(k-1)
        letter = (codes // b ** (k - 1)) % b
        sk = t.s[k - 1]
        mask &= (letter >= sk) if hat else (letter <= t.N - sk)
    return mask


def omega(t: TranslationVector, n: int) -> WordSet:
    """Words whose last ``tau`` letters leave room to add every translate's digits."""
    return WordSet(n, t.N, _tail_mask(t, n, hat=False))


def omega_hat(t: TranslationVector, n: int) -> WordSet:
    """Words whose last ``tau`` letters leave room to subtract every translate's digits."""
    return WordSet(n, t.N, _tail_mask(t, n, hat=True))


def translate_offsets(t: TranslationVector) -> list[int]:
    """Code offset of adding ``t_j``'s digits to the last ``tau`` letters, per ``j``."""
    b = t.N + 1
    return [sum(e.digit(k) * b ** (k - 1) for k in range(1, t.tau + 1)) for e in t.entries]


class ConstructionError(AssertionError):
    """A block word left the alphabet; only possible through a bug."""


def _shifted(base: WordSet, t: TranslationVector, sign: int) -> WordSet:
    b = t.N + 1
    codes = base.codes().astype(np.int64)
    out = np.zeros(base.size, dtype=bool)
    for j, off in enumerate(translate_offsets(t)):
        for k in range(1, t.tau + 1):
            letter = (codes // b ** (k - 1)) % b + sign * t.digit(j, k)
            if codes.size and (letter.min() < 0 or letter.max() > t.N):
                raise ConstructionError(f"block letter out of range for j={j}, k={k}")
        out[codes + sign * off] = True
    return WordSet(base.n, base.N, out)


def block_sets(t: TranslationVector, n: int) -> tuple[WordSet, WordSet, WordSet]:
    """Return ``(A, A_hat, W)`` at length ``n``.

    ``A`` holds the words of ``phi_i(t_j)`` for ``i`` in ``omega(t, n)``,
    ``A_hat`` those of ``phi_i(-t_j)`` for ``i`` in ``omega_hat(t, n)``, and
    ``W = A | A_hat``.
    """
    a = _shifted(omega(t, n), t, +1)
    a_hat = _shifted(omega_hat(t, n), t, -1)
    return a, a_hat, a | a_hat
