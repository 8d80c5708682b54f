from fractions import Fraction

from hypothesis import settings, strategies as st

from cantorunion.digits import DigitString, TranslationVector, digit_key

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def four_translates() -> TranslationVector:
    return TranslationVector.from_digits(1, [[1, 1], [1, 0, 1], [1, 0, 0, 1]])


def staircase(m: int, N: int) -> TranslationVector:
    return TranslationVector.from_digits(N, [[1] * j for j in range(1, m + 1)])


def betas(N: int) -> list[Fraction]:
    return [Fraction(1, 2 * N + 2), Fraction(1, 3 * N)]


@st.composite
def digit_strings(draw, N=None, max_len=4, nonzero=True):
    if N is None:
        N = draw(st.integers(1, 3))
    digits = draw(st.lists(st.integers(0, N), min_size=1, max_size=max_len))
    if nonzero and not any(digits):
        digits[draw(st.integers(0, len(digits) - 1))] = draw(st.integers(1, N))
    return DigitString(tuple(digits), N)


@st.composite
def vectors(draw, max_N=3, max_m=3, max_len=4):
    N = draw(st.integers(1, max_N))
    m = draw(st.integers(1, max_m))
    raw = draw(
        st.lists(digit_strings(N=N, max_len=max_len), min_size=m, max_size=m, unique_by=lambda s: s.digits)
    )
    width = max(s.length for s in raw)
    raw.sort(key=lambda s: digit_key(s, width))
    return TranslationVector(N, (DigitString((), N),) + tuple(raw))


# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
