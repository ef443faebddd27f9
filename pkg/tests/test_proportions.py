from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from defreq.context import Dimension
from defreq.data import path as data_path
from defreq.errors import MalformedRow
from defreq.proportions import ProportionRow, read_proportions, render_report, report_proportions

HEADER = "dimension,level,B,E,O,A\n"


@pytest.fixture(scope="module")
def rows():
    return read_proportions(data_path("table6.csv"))


def row(rows, dim, level):
    return next(r for r in rows if r.dimension is Dimension(dim) and r.level == level)


def test_all_rows_present(rows):
    assert len(rows) == 24
    assert {(r.dimension, r.level) for r in rows} == {(d, l) for d in Dimension for l in range(1, 5)}
    assert row(rows, "granularity", 1).raw[0] == ".788"
    assert row(rows, "rules", 4).raw[1] == ".500"


def test_rows_off_by_rounding_are_kept_and_noted(rows):
    off = sorted((r.dimension.value, r.level) for r in rows if not r.sum_ok)
    assert off == [("granularity", 1), ("relationship", 2)]
    assert row(rows, "relationship", 2).total == Decimal("1.031")
    with pytest.raises(MalformedRow):
        read_proportions(data_path("table6.csv").read_text(), strict=True)


def test_flags(rows):
    lines = report_proportions(rows)
    flagged = {(l.row.dimension.value, l.row.level) for l in lines if l.flagged}
    assert ("items", 3) in flagged and ("items", 2) not in flagged
    assert ("activity", 2) in flagged  # the referent level is a B/E tie
    assert row(rows, "activity", 1).modal() == ("B", "E")
    text = render_report(lines)
    assert "tie(B/A)" in text and "sum 1.031 outside" in text


@pytest.mark.parametrize("body", [
    "bogus,1,.1,.2,.3,.4\n",
    "items,5,.1,.2,.3,.4\n",
    "items,1,.1,.2,x,.4\n",
    "items,1,1.5,.2,.3,.4\n",
    "items,1,.1,.2,.3,.4\nitems,1,.1,.2,.3,.4\n",
])
def test_malformed_rows(body):
    with pytest.raises(MalformedRow):
        read_proportions(HEADER + body)
    with pytest.raises(MalformedRow):
        read_proportions("dim,level,B,E,O,A\n")


fractions = st.integers(0, 1000).map(lambda n: f"{Decimal(n) / 1000:.3f}")


@given(st.tuples(fractions, fractions, fractions, fractions))
def test_modal_is_maximal(raw):
    r = ProportionRow(Dimension.ITEMS, 1, raw)
    top = r.modal()
    assert top and all(r.p[k] == max(r.p.values()) for k in top)
    assert all(r.p[k] < r.p[top[0]] for k in "BEOA" if k not in top)
    text = HEADER + "items,1," + ",".join(raw) + "\n"
    assert read_proportions(text)[0].raw == raw


def test_uniform_row_is_a_tie():
    r = read_proportions(HEADER + "items,1,.25,.25,.25,.25\n")[0]
    assert r.modal() == ("B", "E", "O", "A")
    assert "tie(B/E/O/A)" in render_report(report_proportions([r]))
