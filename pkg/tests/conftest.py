import pytest
from hypothesis import strategies as st

from ordercalc.words import FREE2, KLEIN, Braid, Word, parse_word

B3 = Braid(3)
B4 = Braid(4)


def raw_letters(rank: int, max_size: int = 12):
    gens = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    return st.lists(st.sampled_from(gens), max_size=max_size)


def words(tag, max_size: int = 12):
    return raw_letters(tag.rank, max_size).map(lambda ls: Word.of(tag, ls))


@pytest.fixture
def F():
    return lambda s: parse_word(s, FREE2)


@pytest.fixture
def K():
    return lambda s: parse_word(s, KLEIN)


@pytest.fixture
def S():
    return lambda s, n=3: parse_word(s, Braid(n))


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, passed, seconds, limit, detail)."""

    def record(number: int, passed: bool, seconds: float, limit: float, detail: str) -> None:
        ok = passed and seconds < limit
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {seconds:7.2f}s (limit {limit:g}s)  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
