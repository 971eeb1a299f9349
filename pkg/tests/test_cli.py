import json

import pytest

from conftest import RQ, read_golden, rmatrix
from ncdet.algebra.matrices import LabeledMatrix
from ncdet.cli import run
from ncdet.components.matrix_io import parse_matrix, parse_matrix_text, serialize_matrix
from ncdet.config.configuration import ConfigurationManager


def _write(workdir, name, A):
    path = workdir / name
    path.write_text(serialize_matrix(A))
    return str(path)


def _call(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def _json(capsys, *argv):
    code, out = _call(capsys, *argv)
    return code, json.loads(out.strip().splitlines()[-1])


@pytest.fixture
def rational2(workdir):
    return _write(workdir, "r2.json", rmatrix([[1, 2], [3, 4]]))


def test_quasidet_of_identity(capsys, workdir):
    path = _write(workdir, "id3.json", LabeledMatrix.identity(RQ, 3))
    code, payload = _json(capsys, "quasidet", "--matrix", path, "--row", 2, "--col", 2)
    assert code == 0
    assert payload["value"] == ["1", "0", "0", "0"]
    assert payload["defined"] is True


def test_quasidet_undefined(capsys, workdir):
    path = _write(workdir, "sing.json", rmatrix([[1, 1], [1, 0]]))
    code, payload = _json(capsys, "quasidet", "--matrix", path, "--row", 1, "--col", 1)
    assert code == 1
    assert payload["defined"] is False
    assert payload["reason"] == "undefined: A^{ij} not invertible"


def test_quasidet_methods_agree(capsys, rational2):
    _, block = _json(capsys, "quasidet", "--matrix", rational2, "--row", 1, "--col", 2)
    _, recursive = _json(capsys, "quasidet", "--matrix", rational2, "--row", 1, "--col", 2, "--method", "recursive")
    assert block["value"] == recursive["value"] == "2/3"


def test_predet(capsys, rational2):
    code, payload = _json(capsys, "predet", "--matrix", rational2, "--rows", "1,2", "--cols", "1,2")
    assert code == 0
    assert payload["value"] == "-2"
    assert payload["parity"] == 1
    _, swapped = _json(capsys, "predet", "--matrix", rational2, "--rows", "2,1", "--cols", "1,2")
    assert swapped["parity"] == -1
    assert swapped["value"] == "2"


def test_permanent_moore_and_norm(capsys, rational2):
    assert _json(capsys, "permanent", "--matrix", rational2, "--row", 1, "--col", 1)[1]["value"] == "24"
    moore = _json(capsys, "moore", "--matrix", rational2)[1]
    assert moore["value"] == "-2"
    assert moore["hermitian"] is False
    assert _json(capsys, "norm", "--matrix", rational2)[1]["value"] == "4"
    assert _json(capsys, "norm", "--matrix", rational2, "--method", "recursive")[1]["value"] == "4"


def test_dieudonne(capsys, rational2):
    assert _json(capsys, "dieudonne", "--matrix", rational2)[1]["squared"] == "4"
    payload = _json(capsys, "dieudonne", "--matrix", rational2, "--float")[1]
    assert payload["squared"] == 4.0
    assert payload["value"] == pytest.approx(2.0)


def test_study_needs_quaternions(capsys, rational2):
    code, payload = _json(capsys, "study", "--matrix", rational2)
    assert code == 2
    assert payload["type"] == "UnsupportedScalarError"


def test_study_of_quaternion_matrix(capsys, workdir, generic3):
    path = _write(workdir, "q3.json", generic3)
    code, payload = _json(capsys, "study", "--matrix", path)
    _, norm = _json(capsys, "norm", "--matrix", path)
    assert code == 0
    assert payload["value"] == norm["value"]


def test_expand_text_matches_golden(capsys, workdir):
    code, out = _call(capsys, "expand", "--n", 3, "--row", 1, "--col", 1, "--text")
    assert code == 0
    assert out.splitlines() == read_golden("expand_n3_11.txt")
    _, out = _call(capsys, "expand", "--n", 3, "--row", 1, "--col", 1, "--permanent", "--text")
    assert out.splitlines() == read_golden("permanent_n3_11.txt")


def test_expand_json(capsys, workdir):
    code, payload = _json(capsys, "expand", "--n", 4, "--row", 2, "--col", 3)
    assert code == 0
    assert payload["count"] == 82
    assert len(payload["terms"]) == 82


def test_expand_over_cap(capsys, workdir, monkeypatch):
    monkeypatch.delenv("NCDET_MAX_N", raising=False)
    code, payload = _json(capsys, "expand", "--n", 7, "--row", 1, "--col", 1)
    assert code == 2
    assert payload["type"] == "CapExceededError"


def test_verify_single_suite(capsys, workdir):
    code, payload = _json(capsys, "verify", "--suite", "oracle", "--n", 2, "--trials", 2, "--save-report")
    assert code == 0
    assert payload["ok"] is True
    (report,) = payload["reports"]
    assert report["passes"] == 2
    assert (workdir / "artifacts" / "verification" / "oracle_n2_rational-quaternion.json").exists()


def test_verify_all(capsys, workdir):
    code, payload = _json(capsys, "verify", "--suite", "all", "--n", 2, "--trials", 1)
    assert code == 0
    suites = {r["suite"]: r["scalar"] for r in payload["reports"]}
    assert suites["commutative"] == "rational-complex"
    assert suites["thm33"] == "rational-quaternion"
    assert "study" in suites


def test_verify_rejects_small_n(capsys, workdir):
    code, payload = _json(capsys, "verify", "--suite", "homology", "--n", 1, "--trials", 1)
    assert code == 2
    assert payload["type"] == "DimensionMismatchError"


def test_generate_to_stdout_and_file(capsys, workdir):
    code, out = _call(capsys, "generate", "--n", 2, "--seed", 3)
    assert code == 0
    A = parse_matrix_text(out)
    assert A.n == 2
    _, again = _call(capsys, "generate", "--n", 2, "--seed", 3)
    assert again == out

    target = workdir / "h.json"
    code, payload = _json(capsys, "generate", "--n", 3, "--seed", 3, "--hermitian", "--output", target)
    assert code == 0
    assert payload["path"] == str(target)
    assert parse_matrix(target).is_hermitian()


def test_bad_input_exits_2(capsys, workdir):
    assert run(["quasidet", "--row", "1"]) == 2
    code, payload = _json(capsys, "moore", "--matrix", workdir / "missing.json")
    assert code == 2
    assert payload["type"] == "MatrixFileError"
    code, payload = _json(capsys, "predet", "--matrix", _write(workdir, "a.json", rmatrix([[1]])), "--rows", "x", "--cols", "1")
    assert code == 2


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0


def test_save_report_defaults_to_configuration(capsys, workdir, monkeypatch):
    manager = ConfigurationManager.from_dicts(
        {"artifacts_root": "artifacts", "verification": {"save_report": False, "progress": False}}
    )
    monkeypatch.setattr(ConfigurationManager, "load_or_default", lambda: manager)
    report_file = workdir / "artifacts" / "verification" / "oracle_n2_rational-quaternion.json"

    code, _ = _json(capsys, "verify", "--suite", "oracle", "--n", 2, "--trials", 1)
    assert code == 0
    assert not report_file.exists()

    code, _ = _json(capsys, "verify", "--suite", "oracle", "--n", 2, "--trials", 1, "--save-report")
    assert code == 0
    assert report_file.exists()


def test_no_save_report_overrides_configuration(capsys, workdir):
    code, _ = _json(capsys, "verify", "--suite", "oracle", "--n", 2, "--trials", 1, "--no-save-report")
    assert code == 0
    assert not (workdir / "artifacts" / "verification" / "oracle_n2_rational-quaternion.json").exists()
