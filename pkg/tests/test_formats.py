import json
import xml.etree.ElementTree as ET

import pytest
from flint import fmpq_mat
from hypothesis import given, settings
from hypothesis import strategies as st

from taufan import PairCatalog, build_categories, catalog
from taufan.algebra import build_algebra
from taufan.categories import hasse_edges
from taufan.errors import NotAdmissible, SVGUnsupportedRank
from taufan.formats import (
    SCHEMA,
    ParseError,
    category_to_dot,
    cone_from_json,
    cone_to_json,
    dumps,
    emit_algebra,
    fan_document,
    fan_to_svg,
    load_algebra_file,
    module_from_json,
    module_to_json,
    pair_from_json,
    pair_to_json,
    pairs_document,
    parse_algebra,
    svg_walls,
    table_from_json,
    table_to_json,
    tables_equal,
)
from taufan.wallchamber import Cone, walls_for_render

CATEGORIES = ["tf", "pairs", "geom", "pairquot", "tcm"]


# -- algebra files ------------------------------------------------------------------------
@pytest.mark.parametrize("name", ["running_example", "a2", "a3", "kronecker", "single_vertex"])
def test_data_files_parse(data_dir, name):
    p = load_algebra_file(str(data_dir / f"{name}.json"))
    assert build_algebra(p).n == p.quiver.n


def test_running_example_file_matches_catalog(data_dir):
    assert load_algebra_file(str(data_dir / "running_example.json")) == catalog.running_example_presentation()


def test_corrupted_file_is_not_admissible(data_dir):
    p = load_algebra_file(str(data_dir / "corrupted.json"))
    with pytest.raises(NotAdmissible):
        build_algebra(p)


@pytest.mark.parametrize(
    "make", [catalog.running_example_presentation, catalog.kronecker_presentation, lambda: catalog.linear_a_presentation(3)]
)
def test_algebra_round_trip(make):
    p = make()
    assert parse_algebra(json.loads(json.dumps(emit_algebra(p)))) == p


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ([], "JSON object"),
        ({"arrows": []}, "vertices"),
        ({"vertices": 2, "arrows": [{"name": "a", "from": 1}]}, "to"),
        ({"vertices": 2, "arrows": [], "relations": [[{"coeff": "x/y", "path": ["a", "b"]}]]}, "coefficient"),
        ({"vertices": 2, "arrows": [], "relations": [[]]}, "non-empty"),
        ({"vertices": 2, "arrows": [], "length_bound": "12"}, "length_bound"),
    ],
)
def test_parse_errors(doc, fragment):
    with pytest.raises(ParseError) as info:
        parse_algebra(doc)
    assert fragment in str(info.value)


def test_unreadable_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_algebra_file(str(bad))
    with pytest.raises(ParseError):
        load_algebra_file(str(tmp_path / "missing.json"))


def test_rational_coefficients_parse():
    doc = emit_algebra(catalog.running_example_presentation())
    doc["relations"] = [[{"coeff": "-3/6", "path": ["alpha", "beta"]}]]
    p = parse_algebra(doc)
    assert build_algebra(p).dimension == 5


# -- data round trips ---------------------------------------------------------------------
def test_module_and_pair_round_trip(running_catalog):
    A = running_catalog.algebra
    for p in running_catalog.pairs:
        for M in p.modules:
            assert module_from_json(A, json.loads(json.dumps(module_to_json(M)))) == M
        assert pair_from_json(A, json.loads(json.dumps(pair_to_json(p)))).key == p.key


@settings(max_examples=50)
@given(
    st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), max_size=3).filter(
        lambda vs: not vs or fmpq_mat([list(v) for v in vs]).rank() == len(vs)
    )
)
def test_cone_round_trip(vs):
    C = Cone.from_generators(vs, 3)
    assert cone_from_json(json.loads(json.dumps(cone_to_json(C)))) == C


@pytest.mark.parametrize("which", CATEGORIES)
def test_table_round_trip(small_bundles, which):
    for b in small_bundles.values():
        t = b.by_name(which)
        again = table_from_json(json.loads(dumps(table_to_json(t))))
        assert tables_equal(t, again)


def test_tables_equal_detects_change(running_bundle):
    t = running_bundle.geom
    other = table_from_json(table_to_json(t))
    key = next(iter(other.compose))
    other.compose[key] = "something else"
    assert not tables_equal(t, other)


def test_documents_carry_schema(running_catalog, running_bundle):
    doc = pairs_document(running_catalog)
    assert doc["schema"] == SCHEMA and doc["kind"] == "pairs"
    assert doc["counts"] == {"pairs": 13, "tau_tilting": 6}
    fan = fan_document(running_bundle.classes, walls_for_render(running_bundle.classes))
    assert fan["schema"] == SCHEMA and len(fan["rays"]) == 6


def test_output_is_deterministic(running):
    def render():
        b = build_categories(PairCatalog(running))
        walls = walls_for_render(b.classes)
        return (
            dumps(pairs_document(b.catalog)),
            dumps(fan_document(b.classes, walls)),
            fan_to_svg(b.classes, walls),
            category_to_dot(b.pairquot, b.pairs),
        )

    assert render() == render()


# -- figures ------------------------------------------------------------------------------
def test_svg_is_valid_and_labels_walls(running_bundle):
    svg = fan_to_svg(running_bundle.classes, walls_for_render(running_bundle.classes))
    root = ET.fromstring(svg.split("\n", 1)[1] if svg.startswith("<?xml") else svg)
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    walls = svg_walls(svg)
    assert sorted(w["dim"] for w in walls) == [(0, 1), (0, 1), (1, 0), (1, 0), (1, 1), (1, 1)]
    square = [w for w in walls if w["dim"] == (1, 1)]
    assert square[0]["arrows"] != square[1]["arrows"]
    assert sorted(w["label"].split(" ")[0] for w in walls) == sorted(["D(1)", "D(1)", "D(2)", "D(2)", "D(1\\2)", "D(2\\1)"])
    assert {w["ray"] for w in walls} == {(0, 1), (0, -1), (1, 0), (-1, 0), (1, -1), (-1, 1)}


def test_svg_rejects_other_ranks(small_bundles):
    for name in ("A3", "point"):
        b = small_bundles[name]
        with pytest.raises(SVGUnsupportedRank):
            fan_to_svg(b.classes, walls_for_render(b.classes))


def test_dot_groups_merged_objects(running_bundle):
    dot = category_to_dot(running_bundle.pairquot, running_bundle.pairs)
    assert dot.startswith('digraph "pairquot"')
    assert dot.count("subgraph cluster_") == 6
    assert "color=" in dot


def test_dot_of_poset_is_hasse_diagram(running_bundle):
    dot = category_to_dot(running_bundle.pairs)
    assert dot.count(" -> ") == len(hasse_edges(running_bundle.pairs))
