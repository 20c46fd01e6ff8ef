from __future__ import annotations

import json

import jsonschema
import pytest

from openmf.category import load_category
from openmf.category.io import SCHEMA_PATH, DocumentError, category_to_document, object_name, parse_object
from openmf.cli import DATA_DIR

SCHEMA = json.loads(SCHEMA_PATH.read_text())
DOCS = sorted(p for p in DATA_DIR.glob("*.json") if p.name != "category.schema.json")


@pytest.mark.parametrize("path", DOCS, ids=lambda p: p.stem)
def test_bundled_documents_match_schema(path):
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)
    load_category(path)


def test_table_roundtrip(z3):
    C = load_category(DATA_DIR / "Z3.json")
    doc = category_to_document(C)
    jsonschema.validate(doc, SCHEMA)
    D = load_category({**doc, "tier": 1})
    for a in C.window:
        assert D.dual(a) == C.dual(a)
        for b in C.window:
            assert D.fuse(a, b) == C.fuse(a, b)


def test_parse_object(tl3, z2):
    assert parse_object(tl3, "V1*V1 + 2") == ((0, 3), (2, 1))
    assert parse_object(tl3, "(V1 + V0)*V1") == ((0, 1), (1, 1), (2, 1))
    assert parse_object(z2, "1 + 1") == ((1, 2),)
    assert object_name(tl3, parse_object(tl3, "V2 + 2*V0")) == "2*V0 + V2"


@pytest.mark.parametrize("expr", ["", "V1 +", "(V1", "V9x", "V1 ) V1"])
def test_parse_object_rejects(tl3, expr):
    with pytest.raises(DocumentError):
        parse_object(tl3, expr)


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(DocumentError) as err:
        load_category(p)
    assert err.value.code == "parse_error"
