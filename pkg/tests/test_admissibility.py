import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cantorunion.admissibility import (
    Decision,
    OracleDisagreement,
    build_graph,
    covering_holds,
    decide_self_similar,
    find_cycle,
    find_uncovered,
    has_cycle,
    is_admissible,
    is_nilpotent,
    minimal_covering_length,
    w_tau,
)
from cantorunion.digits import NotInT, TranslationVector, conjugate, scale
from cantorunion.words import decode, encode

from conftest import four_translates, staircase, vectors

FOUR_V = ["0001", "0010", "0100", "0111", "1000", "1011", "1101", "1110"]


def alternating(m, N):
    # the two-cycle of length-m words built from 0 and N
    h = m // 2
    if m % 2:
        a = (0, N) * h + (0,)
        b = (N,) + (0, N) * h
    else:
        a = (0, N) * h
        b = (N, 0) * h
    return a, b


class TestGraph:
    def test_four_translates_vertices(self):
        g = build_graph(four_translates())
        assert [g.label(c) for c in g.codes()] == FOUR_V

    def test_four_translates_cycles(self):
        g = build_graph(four_translates())
        cyc = find_cycle(g)
        assert [g.label(c) for c in cyc] == ["0001", "0010", "0100", "1000"]
        edges = {(g.label(u), g.label(v)) for u, v in g.edges()}
        for ring in (["0001", "0010", "0100", "1000"], ["0111", "1110", "1101", "1011"]):
            for u, v in zip(ring, ring[1:] + ring[:1]):
                assert (u, v) in edges

    def test_edges_are_shift_overlaps(self):
        g = build_graph(four_translates())
        verts = set(FOUR_V)
        want = {(u, v) for u in verts for v in verts if u[1:] == v[:-1]}
        assert {(g.label(u), g.label(v)) for u, v in g.edges()} == want

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_staircase_m2_empty(self, N):
        g = build_graph(staircase(2, N))
        assert len(g) == 0 and not has_cycle(g)

    def test_single_digit_empty(self):
        assert len(build_graph(TranslationVector.from_digits(1, [[1]]))) == 0

    def test_staircase_m3_cycle(self):
        g = build_graph(staircase(3, 1))
        assert [g.label(c) for c in find_cycle(g)] == ["010", "101"]

    def test_dot(self):
        dot = build_graph(four_translates()).to_dot()
        assert dot.startswith("digraph")
        assert '"0001" -> "0010";' in dot
        assert dot.count("->") == len(build_graph(four_translates()).edges())


class TestNilpotent:
    def test_empty_and_zero(self):
        assert is_nilpotent(np.zeros((0, 0), dtype=bool))
        assert is_nilpotent(np.zeros((4, 4), dtype=bool))

    def test_upper_triangular(self):
        assert is_nilpotent(np.triu(np.ones((3, 3), dtype=bool), 1))

    def test_self_loop(self):
        m = np.zeros((3, 3), dtype=bool)
        m[1, 1] = True
        assert not is_nilpotent(m)

    def test_long_path_then_cycle(self):
        n = 9
        m = np.zeros((n, n), dtype=bool)
        for i in range(n - 1):
            m[i, i + 1] = True
        assert is_nilpotent(m)
        m[n - 1, 0] = True
        assert not is_nilpotent(m)

    def test_four_translates(self):
        assert not is_nilpotent(build_graph(four_translates()).adjacency())

    def test_non_square(self):
        with pytest.raises(ValueError):
            is_nilpotent(np.zeros((2, 3)))

    @given(st.integers(1, 7).flatmap(lambda n: st.lists(st.booleans(), min_size=n * n, max_size=n * n).map(lambda v: np.array(v).reshape(n, n))))
    def test_matches_power(self, m):
        n = m.shape[0]
        p = np.eye(n, dtype=np.int64)
        for _ in range(n):
            p = (p @ m.astype(np.int64)) > 0
        assert is_nilpotent(m) == (not p.any())


class TestCovering:
    def test_staircase_at_tau(self):
        assert covering_holds(staircase(2, 2), 2)

    def test_four_translates_witness(self):
        t = four_translates()
        w = find_uncovered(t, 12, method="dense")
        assert w == (0, 0, 0, 1) * 3
        assert not covering_holds(t, 12, method="frontier")

    def test_trivial(self):
        t = TranslationVector.from_digits(1, [])
        assert covering_holds(t, 0)

    def test_short_length(self):
        with pytest.raises(ValueError):
            covering_holds(four_translates(), 3)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            find_uncovered(four_translates(), 4, method="magic")

    @settings(max_examples=60)
    @given(vectors(max_N=2, max_m=2, max_len=3), st.integers(0, 6))
    def test_dense_matches_frontier(self, t, extra):
        length = t.tau + extra
        dense = find_uncovered(t, length, method="dense")
        front = find_uncovered(t, length, method="frontier")
        assert (dense is None) == (front is None)
        w = w_tau(t)
        for word in (dense, front):
            if word is not None:
                assert len(word) == length
                for i in range(length - t.tau + 1):
                    assert word[i : i + t.tau] not in w

    @settings(max_examples=60)
    @given(vectors(max_N=2, max_m=2, max_len=3))
    def test_monotone(self, t):
        ell = minimal_covering_length(t)
        top = t.tau + len(build_graph(t))
        for length in range(t.tau, top + 2):
            assert covering_holds(t, length) == (ell is not None and length >= ell)


class TestAdmissible:
    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_staircase(self, N):
        assert is_admissible(staircase(1, N), cross_check=True)
        assert is_admissible(staircase(2, N), cross_check=True)
        for m in (3, 4, 5):
            assert not is_admissible(staircase(m, N), cross_check=True)

    def test_four_translates(self):
        res = is_admissible(four_translates(), cross_check=True)
        assert not res
        assert res.cycle == ["0001", "0010", "0100", "1000"]
        assert res.vertex_count == 8

    @settings(max_examples=150)
    @given(vectors(max_N=2, max_m=3, max_len=3))
    def test_three_way(self, t):
        # cross_check raises on any disagreement
        is_admissible(t, cross_check=True)

    @given(vectors(max_N=2, max_m=2, max_len=3))
    def test_pigeonhole_bound(self, t):
        res = is_admissible(t)
        if res:
            assert t.tau <= res.covering_length <= t.tau + res.vertex_count
            assert covering_holds(t, t.tau + res.vertex_count)
            if res.covering_length > t.tau:
                assert not covering_holds(t, res.covering_length - 1)

    @given(vectors(max_len=3), st.integers(-2, 2))
    def test_scale_invariant(self, t, q):
        s = scale(t, q)
        if isinstance(s, NotInT):
            return
        assert bool(is_admissible(s)) == bool(is_admissible(t))

    def test_oracle_disagreement_is_raised(self, monkeypatch):
        import cantorunion.admissibility as adm

        monkeypatch.setattr(adm, "is_nilpotent", lambda m: False)
        with pytest.raises(OracleDisagreement):
            is_admissible(staircase(2, 1), cross_check=True)


class TestVerdict:
    def test_four_translates(self):
        v = decide_self_similar(four_translates())
        assert v.decision == Decision.NOT_SELF_SIMILAR
        assert v.cycle == ["0001", "0010", "0100", "1000"]
        assert v.conjugate_not_in_T == NotInT(1, 3, -1)
        assert v.exit_code == 1

    def test_single_digit(self):
        v = decide_self_similar(TranslationVector.from_digits(1, [[1]]))
        assert v.decision == Decision.SELF_SIMILAR
        assert v.admissible_side == "t" and v.covering_length == 1
        assert v.to_json() == {
            "decision": "SelfSimilar",
            "admissible_side": "t",
            "cycle": None,
            "covering_length": 1,
            "regime": "below",
        }

    def test_two_ones(self):
        v = decide_self_similar(TranslationVector.from_digits(1, [[1, 1]]))
        assert v.decision == Decision.NOT_SELF_SIMILAR
        assert v.cycle == ["01", "10"] and v.conjugate_cycle == ["01", "10"]

    def test_trivial(self):
        v = decide_self_similar(TranslationVector.from_digits(3, []))
        assert v.decision == Decision.SELF_SIMILAR and v.covering_length == 0

    def test_between_regime(self):
        v = decide_self_similar(four_translates(), regime="between")
        assert v.decision == Decision.SUFFICIENT_ONLY and v.exit_code == 2
        v = decide_self_similar(staircase(2, 1), regime="between")
        assert v.decision == Decision.SELF_SIMILAR

    def test_bad_regime(self):
        with pytest.raises(ValueError):
            decide_self_similar(four_translates(), regime="above")

    def test_conjugate_side(self, monkeypatch):
        # no small vector is cyclic with an admissible conjugate, so force the branch
        import cantorunion.admissibility as adm

        t = staircase(2, 1)
        real = adm.is_admissible
        monkeypatch.setattr(adm, "is_admissible", lambda u, cc=False: adm.Admissibility(False, cycle=["x"]) if u == t else real(u, cc))
        v = decide_self_similar(t)
        assert v.decision == Decision.SELF_SIMILAR
        assert v.admissible_side == "conjugate"

    @pytest.mark.parametrize("N,m,tau_max", [(1, 1, 4), (1, 2, 4), (2, 1, 3), (2, 2, 3)])
    def test_conjugate_admissibility_agrees(self, N, m, tau_max):
        from cantorunion.constructors import iter_candidates

        for t in iter_candidates(m, N, tau_max):
            hat = conjugate(t)
            if not isinstance(hat, NotInT):
                assert bool(is_admissible(t)) == bool(is_admissible(hat))

    @given(vectors(max_len=3))
    def test_conjugation_symmetry(self, t):
        hat = conjugate(t)
        if isinstance(hat, NotInT):
            return
        assert decide_self_similar(t).decision == decide_self_similar(hat).decision

    @pytest.mark.parametrize("N", [1, 2, 3])
    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_staircase_alternating_cycle(self, N, m):
        t = staircase(m, N)
        g = build_graph(t)
        a, b = alternating(m, N)
        ca, cb = encode(a, N), encode(b, N)
        assert ca in g.vertices and cb in g.vertices
        assert cb in g.successors(ca) and ca in g.successors(cb)
        assert decode(ca, m, N) == a
        hat = conjugate(t)
        assert build_graph(hat).vertices == g.vertices
        assert decide_self_similar(t).decision == Decision.NOT_SELF_SIMILAR
