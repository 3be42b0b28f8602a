import pytest

from narrowcomb import GENERATORS, IDENTITY, params_for
from narrowcomb.group import nf_mul_gen


@pytest.fixture(params=[1, 2, 3], ids=lambda q: f"q{q}")
def params(request):
    return params_for(request.param)


def freely_reduced_words(max_len, params=None, trivial_only=False):
    """Depth-first enumeration of freely reduced words, optionally keeping trivial ones."""
    out = []

    def rec(w, g):
        if w and (not trivial_only or g.is_identity()):
            out.append(tuple(w))
        if len(w) == max_len:
            return
        for a in GENERATORS:
            if w and w[-1] == -a:
                continue
            w.append(a)
            rec(w, nf_mul_gen(g, a, params) if trivial_only else g)
            w.pop()

    rec([], IDENTITY)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
