import os
import tempfile

import pytest
from hypothesis import strategies as st

# keep count tables out of the user's cache
os.environ.setdefault("SCORESHEETS_CACHE", tempfile.mkdtemp(prefix="scoresheets-cache-"))

from scoresheets.sheets import ScoreSheet  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--stretch", action="store_true", default=False, help="run opt-in stretch checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--stretch"):
        return
    skip = pytest.mark.skip(reason="stretch check, run with --stretch")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@st.composite
def sheets(draw, n=st.integers(3, 5), max_entry=4):
    k = draw(n)
    entries = draw(st.lists(st.integers(0, max_entry), min_size=k * (k - 1), max_size=k * (k - 1)))
    return ScoreSheet(k, tuple(entries))


@st.composite
def ordered_sheets(draw, n=st.integers(3, 5), max_entry=4):
    S = draw(sheets(n, max_entry))
    rows = S.rows()
    sums = [sum(v for v in row if v is not None) for row in rows]
    perm = sorted(range(S.n), key=lambda i: -sums[i])
    return ScoreSheet.from_rows([[rows[a][b] for b in perm] for a in perm])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
