import pytest
from hypothesis import strategies as st

from flowlorentz.multigraph import Multigraph

# edges (1,2),(1,3),(2,3),(2,4),(3,4)
G0 = Multigraph(4, ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4)))

# Five-vertex graph reconstructed to be compatible with the worked example:
# T_G = {1,2,4}, M(1,5)=1, M(2,5)=2, M(4,5)=2, T_{G,3} = {4}.
PAPER_G = Multigraph(5, ((1, 2), (1, 3), (2, 3), (3, 4), (1, 5), (2, 5), (2, 5), (4, 5), (4, 5)))
PAPER_A = (2, 1, 1, 1, -5)
PAPER_D = (0, 1, 1, 0, 1)  # over S_G = (1;1),(2;1),(2;2),(4;1),(4;2)
PAPER_EFD = (0, 2, 0, 1)

PARALLEL = Multigraph(3, ((1, 2), (2, 3), (2, 3)))

K_MINUS = ((0, 0, 1), (0, 0, 1), (1, 1, 2))
K_D = (
    (0, 0, 0, 1, 1),
    (0, 0, 0, 1, 1),
    (0, 0, 0, 1, 1),
    (1, 1, 1, 2, 2),
    (1, 1, 1, 2, 2),
)
K_TILDE = ((2, 1, 1), (1, 0, 0), (1, 0, 0))


@pytest.fixture
def g0():
    return G0


@pytest.fixture
def paper_graph():
    return PAPER_G


@st.composite
def graphs(draw, max_n=3, max_extra=3):
    """Unique-sink multigraphs: one forced out-edge per vertex plus extras."""
    n = draw(st.integers(1, max_n))
    edges = [(i, draw(st.integers(i + 1, n + 1))) for i in range(1, n + 1)]
    for _ in range(draw(st.integers(0, max_extra))):
        i = draw(st.integers(1, n))
        edges.append((i, draw(st.integers(i + 1, n + 1))))
    return Multigraph(n + 1, tuple(sorted(edges)))


@st.composite
def instances(draw, max_n=3, max_extra=3, max_entry=2):
    g = draw(graphs(max_n, max_extra))
    a = [draw(st.integers(0, max_entry)) for _ in range(g.n)]
    return g, tuple(a) + (-sum(a),)


ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, ok, detail=""):
    """Register an acceptance verdict; the line is printed in the terminal summary."""
    ACCEPTANCE_RESULTS[number] = (title, bool(ok), detail)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        extra = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}{extra}")
