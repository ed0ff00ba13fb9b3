import json
import os

import pytest

from moddeg import documents as docs
from moddeg.corpus import case_dir, corpus_root
from moddeg.documents import DocumentLoader, canonical_dumps
from moddeg.errors import DocumentError
from moddeg.fields import make_tower, rationals
from moddeg.modrep import Module


def test_corpus_documents_are_canonical():
    # parse . serialize is the identity on every shipped document
    root = corpus_root()
    count = 0
    for case in sorted(os.listdir(root)):
        for fname in sorted(os.listdir(os.path.join(root, case))):
            path = os.path.join(root, case, fname)
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            assert canonical_dumps(json.loads(text)) == text, path
            count += 1
    assert count >= 40


def test_tower_roundtrip():
    tower = make_tower("Q", [1, 0, 1], automorphism_images=[[0, 1], [0, -1]],
                       gen_name="i")
    doc = docs.tower_to_json(tower)
    loaded = DocumentLoader().from_raw(doc)
    assert loaded == tower


def test_module_roundtrip(tmp_path):
    loader = DocumentLoader()
    m = loader.load(os.path.join(case_dir("kron1"), "M.json"))
    doc = docs.module_to_json(m)
    again = DocumentLoader().from_raw(doc)
    assert again.actions == m.actions


def test_ref_resolution(tmp_path):
    tower = rationals()
    docs.write_document(str(tmp_path / "field.json"),
                        docs.tower_to_json(tower))
    alg_doc = {
        "kind": "algebra", "schema_version": 1, "name": "poly",
        "constructor": "exterior_algebra",
        "field": {"$ref": "field.json"}, "num_vars": 1,
    }
    docs.write_document(str(tmp_path / "alg.json"), alg_doc)
    loaded = DocumentLoader().load(str(tmp_path / "alg.json"))
    assert loaded.dim == 2


def test_loader_caches_algebras(tmp_path):
    loader = DocumentLoader()
    p = case_dir("kron1")
    m = loader.load(os.path.join(p, "M.json"))
    n = loader.load(os.path.join(p, "N.json"))
    assert m.algebra is n.algebra  # same object via the $ref cache


def test_unknown_kind_rejected():
    with pytest.raises(DocumentError):
        DocumentLoader().from_raw({"kind": "sonnet", "schema_version": 1})


def test_bad_schema_version():
    with pytest.raises(DocumentError):
        DocumentLoader().from_raw({"kind": "field", "schema_version": 99,
                                   "base": "Q", "min_poly": ["0", "1"]})


def test_missing_file_message(tmp_path):
    with pytest.raises(DocumentError):
        DocumentLoader().load(str(tmp_path / "nope.json"))


def test_module_dim_consistency(tmp_path):
    loader = DocumentLoader()
    p = case_dir("ext2")
    raw = json.load(open(os.path.join(p, "fsub.json")))
    raw["dim"] = 99
    # force inline algebra so the doc is self-contained
    raw["algebra"] = json.load(open(os.path.join(p, "lambda.json")))
    with pytest.raises(DocumentError):
        loader.from_raw(raw)


def test_coefficients_are_strings_everywhere():
    root = corpus_root()

    def walk(node):
        if isinstance(node, float):
            raise AssertionError("float leaked into a document")
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    for case in sorted(os.listdir(root)):
        for fname in sorted(os.listdir(os.path.join(root, case))):
            walk(json.load(open(os.path.join(root, case, fname))))
