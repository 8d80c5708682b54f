"""Self-similarity of unions of a homogeneous symmetric Cantor set with its translates.

The Cantor set is the attractor of ``phi_i(x) = beta*x + i*(1-beta)/N`` for
``i = 0..N``.  Translation values are finite expansions
``((1-beta)/N) * sum_k t_k beta^{-k}`` with digits in ``{0..N}``, so every
decision below is made on digit strings and is uniform in ``beta``.
"""

from cantorunion.digits import (
    BetaLaurent,
    DigitString,
    NotInT,
    TranslationVector,
    conjugate,
    digit_compare,
    scale,
    value_at,
)
from cantorunion.words import WordSet, block_sets, omega, omega_hat
from cantorunion.admissibility import (
    Verdict,
    WordGraph,
    build_graph,
    covering_holds,
    decide_self_similar,
    find_cycle,
    has_cycle,
    is_admissible,
    is_nilpotent,
    minimal_covering_length,
)
from cantorunion.constructors import (
    construct_admissible,
    corollary_m1,
    enumerate_admissible,
)
from cantorunion.ifs import (
    AffineMap,
    extract_ifs,
    greedy_coding,
    verify_numeric,
    verify_symbolic,
)

__all__ = [
    "AffineMap",
    "BetaLaurent",
    "DigitString",
    "NotInT",
    "TranslationVector",
    "Verdict",
    "WordGraph",
    "WordSet",
    "block_sets",
    "build_graph",
    "conjugate",
    "construct_admissible",
    "corollary_m1",
    "covering_holds",
    "decide_self_similar",
    "digit_compare",
    "enumerate_admissible",
    "extract_ifs",
    "find_cycle",
    "greedy_coding",
    "has_cycle",
    "is_admissible",
    "is_nilpotent",
    "minimal_covering_length",
    "omega",
    "omega_hat",
    "scale",
    "value_at",
    "verify_numeric",
    "verify_symbolic",
]
