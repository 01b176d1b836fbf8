from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conceptspaces import CspaceParseError, euclidean_space, train_rbf
from conceptspaces.formats import (
    build_model,
    load_cspace,
    network_to_cspace,
    parse_cspace,
    read_exemplars_csv,
    read_trajectories_csv,
    serialize_cspace,
)

CORPUS = sorted((Path(__file__).parent / "fixtures" / "corpus").glob("*.cspace"))


def test_corpus_size():
    assert len(CORPUS) == 20


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_round_trip(path):
    spec = load_cspace(path)
    text = serialize_cspace(spec)
    again = parse_cspace(text, "<serialized>")
    assert again == spec
    assert serialize_cspace(again) == text
    build_model(again)


class TestParse:
    def test_minimal(self):
        spec = parse_cspace("dim a.x linear 0 1\nconcept c box 0..0.5\n")
        assert spec.ndim == 1 and len(spec.concepts) == 1

    def test_undefined_isa_reference(self):
        text = "dim a.x linear 0 1\nconcept dog box 0..0.5\n\nisa dog animol\n"
        with pytest.raises(CspaceParseError) as e:
            parse_cspace(text, "zoo.cspace")
        assert e.value.line == 4 and "animol" in str(e.value)
        assert str(e.value).startswith("zoo.cspace:4:")

    @pytest.mark.parametrize("text, line", [
        ("dim a.x linear 1 0\n", 1),
        ("dim a.x linear 0 1\ndim a.x linear 0 1\n", 2),
        ("dim a.x linear 0 1\nconcept c box 0..1\nconcept c box 0..1\n", 3),
        ("dim a.x linear 0 1\npoint p 0.5,0.5\n", 2),
        ("frobnicate\n", 1),
        ("dim a.x linear 0 1\nconcept c box 0..zz\n", 2),
        ("fuzzy p x 1.5\n", 1),
        ("seat circular A 0\nseat linear B 1\n", 2),
        ("conj pz z p\n", 1),
        ("dim a.x linear 0 1\ntrack pre a 1 0.5\ntrack pre a 0 0.2\n", 3),
    ])
    def test_diagnostics_have_location(self, text, line):
        with pytest.raises(CspaceParseError) as e:
            parse_cspace(text)
        assert e.value.line == line

    def test_semantic_error_located(self):
        spec = parse_cspace("dim a.x linear 0 1\n# note\nconcept c box 0..2\n")
        with pytest.raises(CspaceParseError) as e:
            build_model(spec)
        assert e.value.line == 3

    def test_comments_and_blank_lines(self):
        a = parse_cspace("dim a.x linear 0 1   # trailing\n\n   \n")
        b = parse_cspace("dim a.x linear 0 1\n")
        assert a == b


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.text(max_size=200))
def test_parser_total_on_arbitrary_text(text):
    try:
        parse_cspace(text)
    except CspaceParseError as e:
        assert e.line >= 0 and e.column >= 0


KEYWORDS = ["dim", "domain", "space", "point", "concept", "exemplar", "rbf", "isa",
            "track", "seat", "fuzzy", "conj", "a.x", "linear", "circular", "box", "hull",
            "ball", "halfspaces", "sigma", "weight", "p", "inter", "pre", "post", "0", "1",
            "-1", "0..1", "1,2", "1,0<=1", "nan", "inf", "1e400", "x"]


@settings(max_examples=500, deadline=None)
@given(st.lists(st.lists(st.sampled_from(KEYWORDS), max_size=6), max_size=6))
def test_parser_total_on_keyword_soup(lines):
    text = "\n".join(" ".join(l) for l in lines)
    try:
        spec = parse_cspace(text)
    except CspaceParseError:
        return
    try:
        build_model(spec)
    except CspaceParseError:
        pass


class TestCsv:
    def test_exemplars(self, tmp_path):
        S = euclidean_space(["x", "y"])
        f = tmp_path / "ex.csv"
        f.write_text("label,x,y\na,1,2\nb,3,4\n")
        ex = read_exemplars_csv(f, S)
        assert [(e.label, e.point.coords) for e in ex] == [("a", (1.0, 2.0)), ("b", (3.0, 4.0))]

    def test_header_required(self, tmp_path):
        S = euclidean_space(["x", "y"])
        f = tmp_path / "ex.csv"
        f.write_text("a,1,2\n")
        with pytest.raises(CspaceParseError):
            read_exemplars_csv(f, S)

    def test_bad_row_located(self, tmp_path):
        S = euclidean_space(["x", "y"])
        f = tmp_path / "ex.csv"
        f.write_text("label,x,y\na,1,2\nb,3\n")
        with pytest.raises(CspaceParseError) as e:
            read_exemplars_csv(f, S)
        assert e.value.line == 3

    def test_trajectories(self, tmp_path):
        S = euclidean_space(["x", "y"])
        f = tmp_path / "tr.csv"
        f.write_text("id,t,x,y\na,0,1,1\nb,0,5,5\na,1,2,2\n")
        trs = read_trajectories_csv(f, S)
        assert [t.object_id for t in trs] == ["a", "b"]
        assert len(trs[0]) == 2


def test_network_export_reloads():
    S = euclidean_space(["x", "y"])
    from conceptspaces import Exemplar
    net = train_rbf([Exemplar("a", S.point(1, 1)), Exemplar("b", S.point(6, 2))])
    m = build_model(parse_cspace(network_to_cspace(net, "trained")))
    assert [u.center.coords for u in m.network.units] == [u.center.coords for u in net.units]
    assert [u.width for u in m.network.units] == [u.width for u in net.units]
