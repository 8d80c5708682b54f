"""Admissibility of translation vectors and the self-similarity verdict.

Three routes decide admissibility and must agree: a directed cycle in the
shift graph on forbidden words, nilpotency of its adjacency matrix, and the
direct covering test over ``{0..N}^l``.  Only the first runs by default.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from cantorunion.digits import NotInT, TranslationVector, conjugate
from cantorunion.words import (
    MAX_UNIVERSE_BITS,
    UniverseTooLarge,
    WordSet,
    block_sets,
    decode,
    universe_size,
    word_text,
)

log = logging.getLogger(__name__)


class OracleDisagreement(RuntimeError):
    """Cycle, nilpotency and covering routes disagreed; this is a bug."""


def w_tau(t: TranslationVector) -> WordSet:
    """``W`` at length ``tau_t``."""
    return block_sets(t, t.tau)[2]


@dataclass(frozen=True)
class WordGraph:
    """Shift graph on length-``tau`` words outside ``W``; edges are implicit."""

    tau: int
    N: int
    vertices: WordSet

    @property
    def b(self) -> int:
        return self.N + 1

    def __len__(self) -> int:
        return len(self.vertices)

    def codes(self) -> list[int]:
        return [int(c) for c in self.vertices.codes()]

    def successors(self, code: int) -> list[int]:
        """Members of V among the N+1 one-letter shifts of ``code``, ascending."""
        if self.tau == 0:
            return []
        base = (code * self.b) % self.b**self.tau
        bits = self.vertices.bits
        return [base + a for a in range(self.b) if bits[base + a]]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.codes() for v in self.successors(u)]

    def label(self, code: int) -> str:
        return word_text(decode(code, self.tau, self.N), self.N)

    def adjacency(self) -> np.ndarray:
        """Boolean adjacency matrix, rows and columns in ascending code order."""
        codes = self.codes()
        index = {c: i for i, c in enumerate(codes)}
        mat = np.zeros((len(codes), len(codes)), dtype=bool)
        for u in codes:
            for v in self.successors(u):
                mat[index[u], index[v]] = True
        return mat

    def to_dot(self, name: str = "G_t") -> str:
        lines = [f"digraph {name} {{"]
        for c in self.codes():
            lines.append(f'  "{self.label(c)}";')
        for u, v in self.edges():
            lines.append(f'  "{self.label(u)}" -> "{self.label(v)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(t: TranslationVector) -> WordGraph:
    vertices = w_tau(t).complement()
    return WordGraph(t.tau, t.N, vertices)


def find_cycle(graph: WordGraph) -> Optional[list[int]]:
    """Three-colour DFS; return one cycle (rotated to its smallest code) or None.

    Roots and successors are visited in ascending code order, so the witness
    is deterministic.
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[int, int] = {}
    for root in graph.codes():
        if color.get(root, WHITE) != WHITE:
            continue
        path = [root]
        iters = [iter(graph.successors(root))]
        color[root] = GRAY
        while path:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                iters.pop()
                continue
            state = color.get(nxt, WHITE)
            if state == GRAY:
                cycle = path[path.index(nxt):]
                i = cycle.index(min(cycle))
                return cycle[i:] + cycle[:i]
            if state == WHITE:
                color[nxt] = GRAY
                path.append(nxt)
                iters.append(iter(graph.successors(nxt)))
    return None


def has_cycle(graph: WordGraph) -> bool:
    return find_cycle(graph) is not None


def is_nilpotent(matrix: np.ndarray) -> bool:
    """True iff ``matrix**n == 0`` in boolean arithmetic, ``n`` its size.

    Repeated squaring; stops early on zero or on a nonzero fixpoint.
    """
    mat = np.asarray(matrix, dtype=bool)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix must be square, got shape {mat.shape}")
    n = mat.shape[0]
    power = 1
    while True:
        if not mat.any():
            return True
        if power >= n:
            return False
        sq = (mat.astype(np.int64) @ mat.astype(np.int64)) > 0
        if np.array_equal(sq, mat):
            return False
        mat = sq
        power *= 2


def _uncovered_dense(w: WordSet, tau: int, length: int) -> Optional[tuple[int, ...]]:
    N = w.N
    b = N + 1
    size = universe_size(N, length)
    if size > MAX_UNIVERSE_BITS:
        raise UniverseTooLarge(f"covering universe {b}^{length} exceeds the guard")
    covered = np.zeros(size, dtype=bool)
    for n in range(tau, length + 1):
        view = covered.reshape(b ** (n - tau), b**tau, b ** (length - n))
        view |= w.bits[None, :, None]
    missing = np.flatnonzero(~covered)
    if missing.size == 0:
        return None
    return decode(int(missing[0]), length, N)


def _uncovered_frontier(w: WordSet, tau: int, length: int) -> Optional[tuple[int, ...]]:
    """Scan words left to right keeping only their last ``tau-1`` letters.

    A prefix stays uncovered while every length-``tau`` factor avoids ``W``;
    whether an extension stays uncovered depends only on that suffix.
    """
    N = w.N
    b = N + 1
    states = b ** max(tau - 1, 0)
    alive = np.ones(states, dtype=bool)
    parents = []
    for _ in range(length - tau + 1):
        codes = np.flatnonzero(alive)
        if codes.size == 0:
            return None
        cand = (codes[:, None] * b + np.arange(b)[None, :]).ravel()
        words = cand[~w.bits[cand]]
        nxt = words % states
        parent = np.full(states, -1, dtype=np.int64)
        # first (smallest) predecessor wins
        order = np.argsort(nxt, kind="stable")
        nxt_sorted, word_sorted = nxt[order], words[order]
        first = np.ones(nxt_sorted.size, dtype=bool)
        first[1:] = nxt_sorted[1:] != nxt_sorted[:-1]
        parent[nxt_sorted[first]] = word_sorted[first]
        alive = np.zeros(states, dtype=bool)
        alive[nxt_sorted] = True
        parents.append(parent)
    codes = np.flatnonzero(alive)
    if codes.size == 0:
        return None
    # rebuild one witness from the recorded tau-words
    letters: list[int] = []
    state = int(codes[0])
    for parent in reversed(parents):
        word = int(parent[state])
        letters.append(word % b)
        state = word // b
    prefix = decode(state, max(tau - 1, 0), N)
    return tuple(prefix) + tuple(reversed(letters))


def find_uncovered(t: TranslationVector, length: int, method: str = "auto") -> Optional[tuple[int, ...]]:
    """Return a word of the given length containing no factor from ``W``, or None.

    ``method`` is ``"dense"`` (the literal union of stamped sets over the full
    universe), ``"frontier"`` (suffix scan, no universe), or ``"auto"`` (dense
    when it fits the memory guard).
    """
    if length < t.tau:
        raise ValueError(f"covering length {length} must be >= tau_t={t.tau}")
    w = w_tau(t)
    if method == "auto":
        method = "dense" if universe_size(t.N, length) <= MAX_UNIVERSE_BITS else "frontier"
    if method == "dense":
        return _uncovered_dense(w, t.tau, length)
    if method == "frontier":
        return _uncovered_frontier(w, t.tau, length)
    raise ValueError(f"unknown covering method {method!r}")


def covering_holds(t: TranslationVector, length: int, method: str = "auto") -> bool:
    return find_uncovered(t, length, method) is None


def minimal_covering_length(t: TranslationVector) -> Optional[int]:
    """Least ``l >= tau_t`` at which the stamps of ``W`` cover ``{0..N}^l``.

    Searched up to ``tau_t + #V_t``; None means no covering exists.
    """
    w = w_tau(t)
    b = t.N + 1
    states = b ** max(t.tau - 1, 0)
    bound = t.tau + len(w.complement())
    alive = np.ones(states, dtype=bool)
    for length in range(t.tau, bound + 1):
        codes = np.flatnonzero(alive)
        cand = (codes[:, None] * b + np.arange(b)[None, :]).ravel()
        nxt = cand[~w.bits[cand]] % states
        if nxt.size == 0:
            return length
        alive = np.zeros(states, dtype=bool)
        alive[nxt] = True
    return None


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    cycle: Optional[list[str]] = None
    covering_length: Optional[int] = None
    vertex_count: int = 0

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(t: TranslationVector, cross_check: bool = False) -> Admissibility:
    """Decide admissibility by acyclicity of the shift graph.

    With ``cross_check`` the nilpotency and covering routes also run (covering
    at ``l = tau_t + #V_t``) and any disagreement raises
    :class:`OracleDisagreement`.
    """
    graph = build_graph(t)
    cycle = find_cycle(graph)
    acyclic = cycle is None
    if cross_check:
        nil = is_nilpotent(graph.adjacency())
        cover = covering_holds(t, t.tau + len(graph))
        if not (acyclic == nil == cover):
            raise OracleDisagreement(
                f"{t}: acyclic={acyclic} nilpotent={nil} covering={cover}"
            )
    if acyclic:
        return Admissibility(True, covering_length=minimal_covering_length(t), vertex_count=len(graph))
    return Admissibility(False, cycle=[graph.label(c) for c in cycle], vertex_count=len(graph))


class Decision(str, enum.Enum):
    SELF_SIMILAR = "SelfSimilar"
    NOT_SELF_SIMILAR = "NotSelfSimilar"
    SUFFICIENT_ONLY = "SufficientOnly"


REGIMES = ("below", "between")


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    admissible_side: Optional[str] = None
    covering_length: Optional[int] = None
    cycle: Optional[list[str]] = None
    conjugate_cycle: Optional[list[str]] = None
    conjugate_not_in_T: Optional[NotInT] = None
    regime: str = "below"

    @property
    def exit_code(self) -> int:
        return {
            Decision.SELF_SIMILAR: 0,
            Decision.NOT_SELF_SIMILAR: 1,
            Decision.SUFFICIENT_ONLY: 2,
        }[self.decision]

    def to_json(self) -> dict:
        out = {
            "decision": self.decision.value,
            "admissible_side": self.admissible_side,
            "cycle": self.cycle,
            "covering_length": self.covering_length,
            "regime": self.regime,
        }
        if self.conjugate_cycle is not None:
            out["conjugate_cycle"] = self.conjugate_cycle
        if self.conjugate_not_in_T is not None:
            out["conjugate_not_in_T"] = self.conjugate_not_in_T.to_json()
        return out


def decide_self_similar(t: TranslationVector, regime: str = "below", cross_check: bool = False) -> Verdict:
    """Is the union of the Cantor set with its translates by ``t`` self-similar?

    ``regime="below"`` declares ``beta < 1/(2N+1)``: the answer is exact.
    ``regime="between"`` declares ``1/(2N+1) <= beta < 1/(N+1)``: only the
    positive direction is known, so failures come back as SufficientOnly.
    """
    if regime not in REGIMES:
        raise ValueError(f"regime must be one of {REGIMES}, got {regime!r}")
    if t.m == 0:
        return Verdict(Decision.SELF_SIMILAR, "t", covering_length=0, regime=regime)

    own = is_admissible(t, cross_check)
    if own:
        return Verdict(Decision.SELF_SIMILAR, "t", own.covering_length, regime=regime)

    hat: Union[TranslationVector, NotInT] = conjugate(t)
    if isinstance(hat, NotInT):
        other = None
    else:
        other = is_admissible(hat, cross_check)
        if other:
            return Verdict(Decision.SELF_SIMILAR, "conjugate", other.covering_length, regime=regime)

    decision = Decision.NOT_SELF_SIMILAR if regime == "below" else Decision.SUFFICIENT_ONLY
    return Verdict(
        decision,
        cycle=own.cycle,
        conjugate_cycle=None if other is None else other.cycle,
        conjugate_not_in_T=hat if isinstance(hat, NotInT) else None,
        regime=regime,
    )
