import json
import random

import pytest

from certify import Statement, query, saturate
from corpus import random_complex, standard_complexes, torus_facts, write_corpus
from covers import validate_cover
from errors import MalformedInputError
from fibration import BundleKind, combine_covers
from groups import AMENABLE, Answer
from schemas import ComplexFile
from workspace import (
    Workspace,
    complex_from_dict,
    complex_to_dict,
    fact_lines,
    load_facts,
    parse_model,
    presentation_from_dict,
    read_json,
)


@pytest.fixture
def corpus_dir(tmp_path):
    write_corpus(tmp_path)
    return tmp_path


def test_complex_dict_round_trip():
    for X in standard_complexes().values():
        assert complex_from_dict(complex_to_dict(X)) == X


def test_explicit_simplex_list_reports_missing_face():
    doc = {"name": "broken", "vertex_count": 2, "maximal_simplices": [[0, 1]], "simplices": [[0], [0, 1]]}
    with pytest.raises(MalformedInputError, match=r"face closure violated: \[1\] is a face of \[0, 1\]"):
        complex_from_dict(doc)


def test_parse_model_names_the_field():
    with pytest.raises(MalformedInputError, match="ComplexFile: vertex_count"):
        parse_model(ComplexFile, {"name": "X", "vertex_count": -1, "maximal_simplices": []})


def test_presentation_file():
    P = presentation_from_dict({"generators": 2, "relators": [[1, 2, -1, -2]]})
    assert P.generator_count == 2
    with pytest.raises(MalformedInputError):
        presentation_from_dict({"generators": 1, "relators": [[3]]})


def test_read_json_errors(tmp_path):
    with pytest.raises(MalformedInputError, match="cannot read"):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(MalformedInputError, match="not valid JSON"):
        read_json(bad)


def test_corpus_files_load(corpus_dir):
    ws = Workspace()
    for name in standard_complexes():
        assert ws.load_complex(corpus_dir / f"{name}.json").name == name
    f = ws.load_map(corpus_dir / "torus_projection.json")
    assert f.source.name == "torus" and f.target.name == "s1"
    cover = ws.load_cover(corpus_dir / "torus.amenable.cover.json")
    assert cover.cardinality == 2
    assert validate_cover(cover, AMENABLE).overall.answer == Answer.YES


def test_bundles_resolve_their_complexes(corpus_dir):
    ws = Workspace()
    torus = ws.load_bundle(corpus_dir / "torus.bundle.json")
    assert torus.kind == BundleKind.PRODUCT
    klein = ws.load_bundle(corpus_dir / "klein.bundle.json")
    assert klein.kind == BundleKind.MAPPING_TORUS
    assert klein.base.name == "circle"
    combined = combine_covers(
        klein,
        ws.load_cover(corpus_dir / "hexagon.amenable.cover.json"),
        ws.load_cover(corpus_dir / "circle.arcs.cover.json"),
    )
    assert combined.cardinality == 2


def test_cover_file_with_unknown_complex(tmp_path):
    path = tmp_path / "orphan.cover.json"
    path.write_text(json.dumps({"complex": "nowhere", "pieces": [[0]]}), encoding="utf-8")
    with pytest.raises(MalformedInputError, match="unknown complex 'nowhere'"):
        Workspace().load_cover(path)


def test_conflicting_names_are_rejected():
    ws = Workspace()
    ws.add_complex(standard_complexes()["s1"])
    renamed = complex_from_dict({**complex_to_dict(standard_complexes()["hexagon"]), "name": "s1"})
    with pytest.raises(MalformedInputError, match="two different complexes"):
        ws.add_complex(renamed)


def test_facts_file_reloads_and_certifies(corpus_dir):
    store = Workspace().load_facts(corpus_dir / "torus.facts")
    assert len(store) == 4
    saturate(store)
    assert query(store, Statement.parse("simvol_zero(torus)")).success


def test_fact_lines_keep_only_sources():
    store = torus_facts()
    saturate(store)
    lines = fact_lines(store)
    assert len(lines) == 4
    reloaded = load_facts(lines)
    assert [str(f.statement) for f in reloaded] == [str(f.statement) for f in torus_facts()]


def test_facts_from_several_files_share_a_store(corpus_dir):
    ws = Workspace()
    store = ws.load_facts(corpus_dir / "torus.facts")
    ws.load_facts(corpus_dir / "klein.facts", store)
    saturate(store)
    assert query(store, Statement.parse("simvol_zero(torus)")).success
    assert query(store, Statement.parse("simvol_zero(klein)")).success


@pytest.mark.parametrize(
    "line, message",
    [
        ("not json", "not valid JSON"),
        ('{"statement": {"predicate": "dimension", "args": ["X", 2]}}', "FactLine"),
        ('{"statement": {"predicate": "dimension", "args": ["X", 2]}, "provenance": {"kind": "computed"}}',
         "without witness"),
        ('{"statement": {"predicate": "dimension", "args": ["X", 2]}, "provenance": {"kind": "axiom"}}',
         "citation"),
    ],
)
def test_bad_fact_lines(line, message):
    with pytest.raises(MalformedInputError, match=message):
        load_facts([line])


def test_random_complexes_have_no_phantoms():
    rng = random.Random(7)
    for _ in range(20):
        X = random_complex(rng)
        assert {v for s in X.simplices for v in s} == set(range(X.vertex_count))
