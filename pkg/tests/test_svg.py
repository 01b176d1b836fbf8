import re

import numpy as np
import pytest

from conceptspaces import (
    Ball,
    Tessellation,
    combine,
    emit_svg,
    euclidean_space,
    tessellate_2d,
)
from conceptspaces.svg import region_outline_2d, render_svg
from conceptspaces.tessellation import polygon_area

from conftest import model


def test_two_cell_tessellation(tmp_path):
    S = euclidean_space(2)
    t = Tessellation(S, ("a", "b"), (S.point(2, 5), S.point(8, 5)))
    text = emit_svg(tessellate_2d(t, (0, 0, 10, 10)), tmp_path / "t.svg")
    assert text.count("<polygon") == 2
    assert text.count('r="3"') == 2
    assert (tmp_path / "t.svg").read_text() == text


def test_polka_dot_zebra_highlight():
    m = model("polka_dot_zebra.cspace")
    a, b = m.concept("zebra"), m.concept("polka_dot_thing")
    text = render_svg([a, b], highlight=[combine(a, b)])
    assert text.count("<polygon") == 3
    assert text.count('stroke-width="2.5"') == 1
    assert "zebra&amp;polka_dot_thing" in text


def test_byte_identical(tmp_path):
    m = model("polka_dot_zebra.cspace")
    items = [m.concept("zebra"), m.concept("polka_dot_thing")]
    emit_svg(items, tmp_path / "a.svg")
    emit_svg(items, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_trajectories_and_seats():
    m = model("crossing.cspace")
    text = render_svg(m.pre + m.post)
    assert text.count("<polyline") == 4
    seats = render_svg([model("round_table.cspace").frame])
    assert seats.count('r="10"') == 3


def test_outlines_are_ccw():
    m = model("polka_dot_zebra.cspace")
    for c in m.concepts.values():
        assert polygon_area(region_outline_2d(c.region)) > 0
    inter = combine(m.concept("zebra"), m.concept("polka_dot_thing")).region
    poly = np.array(region_outline_2d(inter, n=4096))
    # exact lens area from the golden geometry
    assert polygon_area(poly) == pytest.approx(0.047426, rel=1e-3)


def test_numbers_locale_free():
    m = model("animals.cspace")
    text = render_svg(list(m.concepts.values()))
    for num in re.findall(r'="(-?[0-9][^"]*)"', text):
        if num not in ("100%",):
            float(num.split(",")[0].split(" ")[0])
    assert "," not in re.sub(r'points="[^"]*"', "", text)
