from pathlib import Path

import pytest
from hypothesis import strategies as st

from fanosod.hodge import HodgeDiamond

GOLDEN = Path(__file__).parent / "golden"


@st.composite
def diamonds(draw, max_dim=3, max_entry=6):
    """Diamonds with Hodge symmetry, Serre duality and h^{0,0} = 1."""
    n = draw(st.integers(0, max_dim))
    h = [[0] * (n + 1) for _ in range(n + 1)]
    for p in range(n + 1):
        for q in range(n + 1):
            orbit = {(p, q), (q, p), (n - p, n - q), (n - q, n - p)}
            if (p, q) == min(orbit):
                v = draw(st.integers(0, max_entry))
                for a, b in orbit:
                    h[a][b] = v
    h[0][0] = h[n][n] = 1
    return HodgeDiamond.from_matrix(h, connected=True)


@pytest.fixture
def golden():
    def read(name):
        return (GOLDEN / name).read_text(encoding="utf-8")

    return read


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(module.RESULTS):
            terminalreporter.write_line(module.RESULTS[n])
