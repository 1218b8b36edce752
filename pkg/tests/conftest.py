from fractions import Fraction

import pytest
from hypothesis import strategies as st

from matchbox.catalog import free_dendriform_structure, rooted_prelie_structure
from matchbox.exactalg import LinComb
from matchbox.trees import enumerate_pbt, enumerate_rooted

D1 = ("a",)
OMEGA = ("alpha", "beta")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


def pbt_pool(max_vertices=3, decorations=D1, types=OMEGA):
    return [t for n in range(1, max_vertices + 1) for t in enumerate_pbt(n, decorations, types)]


def rooted_pool(max_vertices=3, decorations=D1, types=OMEGA):
    return [t for n in range(1, max_vertices + 1) for t in enumerate_rooted(n, decorations, types)]


def lincombs(keys, max_terms=3):
    """LinComb over the given keys, possibly zero."""
    return st.dictionaries(st.sampled_from(keys), nonzero_rationals, max_size=max_terms).map(LinComb)


@pytest.fixture(scope="session")
def free_dd():
    return free_dendriform_structure()


@pytest.fixture(scope="session")
def rooted():
    return rooted_prelie_structure()


@pytest.fixture
def half():
    return Fraction(1, 2)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; printed in the terminal summary."""
    state = {}

    def start(number, text):
        state["line"] = f"criterion {number:>2}: {text}"

    yield start
    failed = getattr(request.node, "rep_call", None) is None or request.node.rep_call.failed
    line = state.get("line", request.node.name)
    ACCEPTANCE_LINES.append(f"{'FAIL' if failed else 'PASS'}  {line}")
    print(ACCEPTANCE_LINES[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
