import json
import os

import pytest

from moddeg.cli import main
from moddeg.corpus import corpus_root


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    target = tmp_path_factory.mktemp("corpus")
    assert main(["export-corpus", str(target)]) == 0
    return str(target)


def path(corpus, case, name):
    return os.path.join(corpus, case, name)


def test_validate(corpus, capsys):
    assert main(["validate", path(corpus, "kron1", "M.json")]) == 0
    out = capsys.readouterr().out
    assert "valid Module" in out


def test_validate_missing_is_input_error(corpus):
    assert main(["validate", path(corpus, "kron1", "missing.json")]) == 3


def test_usage_error_maps_to_3():
    assert main(["f-inv"]) == 3


def test_iso_exit_codes(corpus):
    m = path(corpus, "kron1", "M.json")
    n = path(corpus, "kron1", "N.json")
    assert main(["iso", m, n, "--over", "lambda"]) == 0
    assert main(["iso", m, n]) == 1


def test_hom_reports_both_dims(corpus, capsys):
    assert main(["hom", path(corpus, "threearrow", "X.json"),
                 path(corpus, "threearrow", "B.json")]) == 0
    out = capsys.readouterr().out
    assert "k_dim 4" in out and "K_dim 2" in out


def test_endo(corpus, capsys):
    assert main(["endo", path(corpus, "kronmin", "Xi.json")]) == 0
    out = capsys.readouterr().out
    assert "End dimension 2" in out
    assert "division: proved" in out


def test_induce_restrict_twist_pipeline(corpus, tmp_path, capsys):
    m = path(corpus, "kron1", "M.json")
    twisted = str(tmp_path / "tw.json")
    assert main(["twist", m, "--phi", "1", "-o", twisted]) == 0
    assert main(["iso", twisted, path(corpus, "kron1", "N.json")]) == 0
    restricted = str(tmp_path / "rm.json")
    assert main(["restrict", m, "-o", restricted]) == 0
    induced = str(tmp_path / "km.json")
    assert main(["induce", restricted, "--tower",
                 path(corpus, "kron1", "tower.json"), "-o", induced]) == 0
    assert main(["validate", induced]) == 0


def test_mu_split_and_galois(corpus, capsys):
    m = path(corpus, "kron1", "M.json")
    assert main(["mu-split", m]) == 0
    assert main(["galois-decompose", m]) == 0
    out = capsys.readouterr().out
    assert "2 twists" in out


def test_galois_decompose_refuses_non_normal(corpus, tmp_path):
    # build the regular module document for the non-normal tower case
    from moddeg.documents import DocumentLoader, write_document, module_to_json
    loader = DocumentLoader()
    gamma = loader.load(path(corpus, "cbrt2", "gamma.json"))
    from moddeg.modrep import regular_module
    reg = regular_module(gamma)
    doc = str(tmp_path / "reg.json")
    write_document(doc, module_to_json(reg))
    assert main(["galois-decompose", doc]) == 3


def test_f_inv_and_submodule(corpus, capsys):
    rr3 = path(corpus, "ext3", "rr3.json")
    assert main(["f-inv", rr3, "--i", "1", "--strategy", "symbolic"]) == 0
    out = capsys.readouterr().out
    assert "f_1 = 3" in out
    assert main(["submodule", path(corpus, "ext2", "fsub.json"),
                 "--tuple", "1,0"]) == 0
    out = capsys.readouterr().out
    assert "span dimension 2" in out


def test_riedtmann_verify_and_search(corpus, tmp_path):
    assert main(["riedtmann-verify",
                 path(corpus, "ext2", "seq_single.json")]) == 0
    out_doc = str(tmp_path / "wit.json")
    assert main(["riedtmann-search", path(corpus, "kronmin", "M.json"),
                 path(corpus, "kronmin", "N.json"),
                 "--family", path(corpus, "kronmin", "Xi.json"),
                 "--budget", "4000", "--seed", "5", "-o", out_doc]) == 0
    assert main(["riedtmann-verify", out_doc]) == 0


def test_hom_cmp_violation(corpus):
    assert main(["hom-cmp", path(corpus, "threearrow", "B.json"),
                 path(corpus, "threearrow", "A.json"),
                 "--family", path(corpus, "threearrow", "X.json")]) == 1


def test_deg_obstruct_exit_codes(corpus):
    rr3 = path(corpus, "ext3", "rr3.json")
    assert main(["deg-obstruct", rr3, rr3]) == 0
    # dimension mismatch refutes immediately
    assert main(["deg-obstruct", rr3, path(corpus, "ext3", "lr2.json")]) == 1


def test_vdeg_chain(corpus):
    assert main(["vdeg-chain", path(corpus, "ext3", "chain.json")]) == 0


def test_enumerate_with_reports(tmp_path, capsys):
    from moddeg.documents import write_document, tower_to_json, quiver_to_json
    from moddeg.fields import prime_field
    from moddeg.algebras import a2_quiver
    alg_doc = {
        "kind": "algebra", "schema_version": 1, "name": "a2f2",
        "constructor": "path_algebra",
        "field": tower_to_json(prime_field(2)),
        "quiver": quiver_to_json(a2_quiver()),
    }
    alg_path = str(tmp_path / "a2.json")
    write_document(alg_path, alg_doc)
    report = str(tmp_path / "rep")
    assert main(["enumerate", alg_path, "--dim", "2",
                 "--report-dir", report]) == 0
    assert os.path.exists(os.path.join(report, "classes_d2.csv"))
    assert os.path.exists(os.path.join(report, "hasse_d2.dot"))
    assert os.path.exists(os.path.join(report, "hasse_d2.png"))


def test_json_reports_are_deterministic(corpus, capsys):
    argv = ["iso", path(corpus, "kron1", "M.json"),
            path(corpus, "kron1", "N.json"), "--over", "lambda",
            "--json", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["kind"] == "report"
    assert doc["body"]["verdict"]["status"] == "proved"


def test_paper_suite_single_case(corpus, capsys):
    assert main(["paper-suite", "--case", "kron1"]) == 0
    out = capsys.readouterr().out
    assert "all passed" in out
    assert "FAIL" not in out
