import json
from pathlib import Path

import pytest

from twistraag.fixtures import FixtureError, load, loads, resolve, shipped, shipped_names, splitting_to_json
from twistraag.splitting import validate

DATA = Path(__file__).parent / "data"


def test_shipped_bundles_validate():
    assert shipped_names() == ["f2_pair", "f3"]
    for name in shipped_names():
        b = shipped(name)
        assert all(validate(d).adapted for d in b.splittings.values())
        for c in b.collections:
            b.collection(c)
        for f in b.sphere_families:
            b.family(f)


def test_round_trip(f2):
    again = loads(json.dumps(f2.to_json()), "again")
    assert again.splittings == f2.splittings
    assert again.collections == f2.collections
    assert again.sphere_families == f2.sphere_families


def test_splitting_json_shape(f3):
    assert splitting_to_json(f3.splitting("A")) == {
        "kind": "Amalgam", "a_generators": ["x", "y"], "b_generators": ["xyXY", "z"],
        "edge_a": "xyXY", "orientation": 1}


def test_malformed_word_names_the_field():
    with pytest.raises(FixtureError) as e:
        load(DATA / "malformed_word.json")
    assert "splittings.T.vertex_generators[1]" in str(e.value)


def test_bad_json_reports_line():
    with pytest.raises(FixtureError) as e:
        load(DATA / "bad_json.json")
    assert "bad_json.json:4:" in str(e.value)


@pytest.mark.parametrize("patch,where", [
    ({"schema": "other/1"}, "schema"),
    ({"rank": 0}, "rank"),
    ({"splittings": {"T": {"kind": "Torus"}}}, "splittings.T.kind"),
    ({"splittings": {"T": {"kind": "HNN", "vertex_generators": ["x"], "stable_letter": "y", "edge_a": "x",
                           "edge_b": "x", "orientation": 2}}}, "splittings.T.orientation"),
    ({"splittings": {"T": {"kind": "HNN", "vertex_generators": ["x"], "stable_letter": "y"}}}, "missing field 'edge_a'"),
    ({"collections": {"c": ["nope"]}}, "collections.c"),
    ({"sphere_families": {"s": ["T1"]}}, "sphere_families.s"),
])
def test_field_diagnostics(f2, patch, where):
    data = f2.to_json()
    data.update(patch)
    with pytest.raises(FixtureError) as e:
        loads(json.dumps(data), "x.json")
    assert where in str(e.value)


def test_unknown_names(f2):
    for call in (lambda: f2.splitting("T9"), lambda: f2.collection("nope"), lambda: f2.family("nope")):
        with pytest.raises(FixtureError):
            call()
    with pytest.raises(FixtureError):
        resolve("no_such_bundle")
