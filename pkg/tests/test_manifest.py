import json
from pathlib import Path

import pytest

import spunbook
from spunbook import manifest as mf

FIXTURES = sorted((Path(spunbook.__file__).parent / "fixtures").glob("*.json"))


def test_fixtures_present():
    assert len(FIXTURES) >= 10


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    text = path.read_text(encoding="utf-8")
    m = mf.loads(text)
    assert mf.dumps(m) == text
    assert mf.dumps(mf.loads(mf.dumps(m))) == text


def test_canonical_form():
    m = mf.Manifest("matrix", {"rows": [[1, 2], [3, 4]]})
    text = mf.dumps(m)
    assert text.endswith("}\n")
    obj = json.loads(text)
    assert list(obj) == ["data", "format_version", "kind"]
    assert obj["format_version"] == mf.FORMAT_VERSION


def test_unknown_top_level_rejected():
    with pytest.raises(mf.ManifestError, match="unknown top-level"):
        mf.validate({"format_version": 1, "kind": "matrix", "data": {"rows": []}, "extra": 1})


def test_unknown_data_field_rejected():
    with pytest.raises(mf.ManifestError, match="unknown fields"):
        mf.validate({"format_version": 1, "kind": "matrix", "data": {"rows": [], "colour": "red"}})


def test_nested_unknown_rejected():
    data = {
        "source": {"genus": 3, "letters": [], "bogus": 1},
        "target": "S5",
        "target_fibration": {},
        "path": [],
        "contact": True,
        "theorem_tag": "x",
    }
    with pytest.raises(mf.ManifestError, match="certificate.source"):
        mf.validate({"format_version": 1, "kind": "certificate", "data": data})


@pytest.mark.parametrize(
    "obj, msg",
    [
        ([], "JSON object"),
        ({"format_version": 2, "kind": "matrix", "data": {"rows": []}}, "format_version"),
        ({"format_version": 1, "kind": "spreadsheet", "data": {}}, "kind"),
        ({"format_version": 1, "kind": "matrix", "data": []}, "data"),
        ({"format_version": 1, "kind": "open_book", "data": {"genus": 1}}, "missing"),
    ],
)
def test_invalid_manifests(obj, msg):
    with pytest.raises(mf.ManifestError, match=msg):
        mf.validate(obj)


def test_bad_json_and_missing_file(tmp_path):
    with pytest.raises(mf.ManifestError):
        mf.loads("{not json")
    with pytest.raises(mf.ManifestError):
        mf.load(tmp_path / "absent.json")


def test_save_load(tmp_path):
    m = mf.Manifest("ledger_request", {"target": "s2s3", "genus": 2, "o": [1, -1]})
    mf.save(m, tmp_path / "x.json")
    assert mf.load(tmp_path / "x.json") == m
    with pytest.raises(mf.ManifestError):
        mf.expect(m, "matrix")
