from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cantorunion.admissibility import is_admissible
from cantorunion.constructors import construct_admissible
from cantorunion.digits import BetaLaurent, TranslationVector
from cantorunion.ifs import (
    AffineMap,
    NotAdmissible,
    NotInGamma,
    VerifyConfig,
    base_ifs,
    extract_ifs,
    greedy_coding,
    prune_ifs,
    verify_numeric,
    verify_symbolic,
    word_offset,
)
from cantorunion.words import omega, omega_hat

from conftest import four_translates, staircase, vectors

QUICK = VerifyConfig(samples=200, depth=8)


def nudge(f: AffineMap, exp=-9) -> AffineMap:
    bump = BetaLaurent.from_mapping({exp: 1}, f.N)
    return AffineMap(f.sign, f.power, f.offset + bump, f.word, f.translate)


class TestAffineMap:
    def test_phi(self):
        beta = Fraction(1, 4)
        f = base_ifs(1)[1]
        assert f(0, beta) == Fraction(3, 4) and f(1, beta) == 1

    def test_reflected(self):
        beta = Fraction(1, 5)
        f = AffineMap(-1, 1, word_offset((0,), 2), (0,))
        assert f(0, beta) == beta and f(1, beta) == 0

    def test_json_roundtrip(self):
        f = AffineMap(1, 1, word_offset((1,), 1), (1,))
        assert f.to_json() == {"sign": "+", "power": 1, "offset_coeffs": {"0": 1}, "word": "1", "translate": 0}
        for g in extract_ifs(construct_admissible(3, 2)):
            assert AffineMap.from_json(g.to_json(), 2) == g

    def test_invalid(self):
        with pytest.raises(ValueError):
            AffineMap(0, 1, word_offset((0,), 1), (0,))
        with pytest.raises(ValueError):
            AffineMap(1, 0, word_offset((), 1), ())


class TestExtract:
    def test_single_digit(self):
        t = TranslationVector.from_digits(1, [[1]])
        maps = extract_ifs(t)
        plus = [f for f in maps if f.sign > 0]
        assert {(f.word, f.translate) for f in plus} == {((0,), 0), ((0,), 1)}
        assert all(f.power == 1 for f in maps)
        assert len(maps) == 4

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_staircase_m2(self, N):
        t = staircase(2, N)
        maps = extract_ifs(t)
        assert {f.power for f in maps} == {2}
        assert len(maps) == 3 * (len(omega(t, 2)) + len(omega_hat(t, 2)))
        assert verify_symbolic(t, maps)

    def test_refuses_cyclic(self):
        with pytest.raises(NotAdmissible):
            extract_ifs(four_translates())

    def test_explicit_length(self):
        t = TranslationVector.from_digits(1, [[1]])
        maps = extract_ifs(t, length=3)
        assert {f.power for f in maps} == {1, 2, 3}
        assert verify_symbolic(t, maps)
        with pytest.raises(NotAdmissible):
            extract_ifs(staircase(2, 1), length=1)

    def test_trivial(self):
        t = TranslationVector.from_digits(2, [])
        assert extract_ifs(t) == base_ifs(2)

    @settings(max_examples=60)
    @given(vectors(max_N=2, max_m=3, max_len=3))
    def test_powers_and_symbolic(self, t):
        adm = is_admissible(t)
        if not adm:
            return
        maps = extract_ifs(t)
        assert all(t.tau <= f.power <= adm.covering_length for f in maps)
        assert verify_symbolic(t, maps)


class TestSymbolic:
    def test_single(self):
        t = TranslationVector.from_digits(1, [[1]])
        assert verify_symbolic(t, extract_ifs(t))

    def test_base(self):
        t = TranslationVector.from_digits(2, [])
        assert verify_symbolic(t, base_ifs(2))

    @pytest.mark.parametrize("m,N", [(1, 1), (2, 1), (3, 2), (5, 2)])
    def test_pruned_then_deleted(self, m, N):
        t = construct_admissible(m, N)
        kept, removed = prune_ifs(t, extract_ifs(t))
        assert verify_symbolic(t, kept)
        for i in range(len(kept)):
            assert not verify_symbolic(t, kept[:i] + kept[i + 1 :])

    def test_wrong_offset(self):
        t = construct_admissible(3, 1)
        maps = extract_ifs(t)
        assert not verify_symbolic(t, [nudge(maps[0])] + maps[1:])

    def test_empty(self):
        assert not verify_symbolic(staircase(2, 1), [])

    def test_prune_reports_removed(self):
        t = TranslationVector.from_digits(1, [[1]])
        maps = extract_ifs(t)
        kept, removed = prune_ifs(t, maps)
        assert len(kept) + len(removed) == len(maps)
        # the reflected branch is redundant here
        assert len(kept) == 2


class TestGreedy:
    def test_endpoints(self):
        beta = Fraction(1, 4)
        assert greedy_coding(0, beta, 1, 6) == [0] * 6
        assert greedy_coding(1, beta, 1, 6) == [1] * 6
        assert greedy_coding(1, Fraction(1, 8), 3, 5) == [3] * 5

    def test_single_term(self):
        assert greedy_coding(Fraction(3, 4), Fraction(1, 4), 1, 5) == [1, 0, 0, 0, 0]

    def test_gap(self):
        with pytest.raises(NotInGamma) as exc:
            greedy_coding(Fraction(1, 2), Fraction(1, 4), 1, 5)
        assert exc.value.index == 1

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            greedy_coding(2, Fraction(1, 4), 1, 3)
        with pytest.raises(ValueError):
            greedy_coding(0, Fraction(1, 3), 1, 3)

    @given(st.integers(1, 3).flatmap(lambda N: st.tuples(st.just(N), st.lists(st.integers(0, N), min_size=1, max_size=10))))
    def test_recovers_digits(self, nd):
        N, digits = nd
        beta = Fraction(1, 2 * N + 2)
        c = (1 - beta) / N
        x = sum(c * d * beta**k for k, d in enumerate(digits))
        assert greedy_coding(x, beta, N, len(digits)) == digits


class TestNumeric:
    def test_single_exact(self):
        t = TranslationVector.from_digits(1, [[1]])
        rep = verify_numeric(t, beta=Fraction(1, 4), config=VerifyConfig(samples=1000, depth=12))
        assert rep.ok and rep.exact_zero and rep.max_residual == 0.0
        assert rep.evaluations == 1000 and rep.seed == 0

    def test_base_ifs(self):
        t = TranslationVector.from_digits(2, [])
        assert verify_numeric(t, base_ifs(2), Fraction(1, 6), QUICK).ok

    def test_float(self):
        t = construct_admissible(4, 2)
        rep = verify_numeric(t, None, Fraction(1, 6), VerifyConfig(samples=300, depth=12, mode="float"))
        assert rep.ok and rep.max_residual < 1e-9

    def test_wrong_map_fails(self):
        t = construct_admissible(3, 1)
        maps = extract_ifs(t)
        bad = [nudge(f) if i == 0 else f for i, f in enumerate(maps)]
        assert not verify_numeric(t, bad, Fraction(1, 4), QUICK).ok
        assert not verify_numeric(t, bad, Fraction(1, 4), VerifyConfig(samples=200, depth=8, mode="float")).ok

    def test_missing_map_breaks_cover(self):
        t = construct_admissible(2, 1)
        kept, _ = prune_ifs(t, extract_ifs(t))
        rep = verify_numeric(t, kept[1:], Fraction(1, 4), QUICK)
        assert rep.cover_failures > 0 and not rep.ok

    def test_deterministic(self):
        t = construct_admissible(5, 1)
        a = verify_numeric(t, None, Fraction(1, 4), VerifyConfig(samples=50, seed=7))
        b = verify_numeric(t, None, Fraction(1, 4), VerifyConfig(samples=50, seed=7))
        assert a == b

    def test_refuses(self):
        with pytest.raises(NotAdmissible):
            verify_numeric(four_translates(), None, Fraction(1, 4))
        with pytest.raises(ValueError):
            verify_numeric(TranslationVector.from_digits(1, [[1]]), None, Fraction(1, 3))
        with pytest.raises(ValueError):
            verify_numeric(TranslationVector.from_digits(1, [[1]]), None, Fraction(1, 4), VerifyConfig(mode="fast"))

    @settings(max_examples=25)
    @given(vectors(max_N=2, max_m=2, max_len=3))
    def test_random_admissible(self, t):
        if not is_admissible(t):
            return
        beta = Fraction(1, 2 * t.N + 2)
        rep = verify_numeric(t, None, beta, VerifyConfig(samples=100, depth=6))
        assert rep.ok and rep.exact_zero
