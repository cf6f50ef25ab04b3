import json

import jsonschema
import pytest

from ncdiff import formats
from ncdiff.cli import COMMANDS, run
from ncdiff.errors import NotAssociative, ParseError, ValidationError

from conftest import ALGEBRA_FILES, DATA, ROOT


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_dual_numbers_file():
    alg = formats.parse_algebra_file(ROOT / "algebras" / "dual-numbers.json")
    assert alg.dim == 2 and alg.labels == ("1", "x")
    assert alg["x"] * alg["x"] == alg.zero


def test_parse_non_associative_names_triple():
    with pytest.raises(NotAssociative) as exc:
        formats.parse_algebra_file(DATA / "nonassociative.json")
    assert exc.value.triple == (1, 1, 1)
    assert exc.value.location == "$.table[1][1][1]"


def test_parse_zero_denominator():
    with pytest.raises(ParseError) as exc:
        formats.parse_algebra_file(DATA / "bad-rational.json")
    assert exc.value.location == "$.table[1][1][1]"


@pytest.mark.parametrize("value", ["1.5", "1/2/3", " 3", "1e3", True, 0.5, None])
def test_parse_rational_rejects(value):
    with pytest.raises(ParseError):
        formats.parse_rational(value, "$")


@pytest.mark.parametrize("value,expected", [("3", 3), ("-3/7", formats.Fraction(-3, 7)), ("4/6", formats.Fraction(2, 3)), (5, 5)])
def test_parse_rational_accepts(value, expected):
    assert formats.parse_rational(value, "$") == expected


def test_bad_unit_is_validation_error():
    with pytest.raises(ValidationError) as exc:
        formats.parse_algebra_file(DATA / "bad-unit.json")
    assert exc.value.location == "$.unit"


@pytest.mark.parametrize("name", ALGEBRA_FILES)
def test_sample_files_match_schema_and_round_trip(name):
    doc = json.loads((ROOT / "algebras" / name).read_text())
    jsonschema.validate(doc, formats.schema("algebra"))
    alg = formats.algebra_from_document(doc)
    again = formats.algebra_from_document(formats.algebra_document(alg))
    assert again.table == alg.table and again.unit_coeffs == alg.unit_coeffs


def test_report_matrix_2(capsys):
    code, out, _ = invoke(capsys, "report", "--preset", "matrix", "--param", "2")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, formats.schema("report"))
    assert doc["dims"] == {"algebra": 4, "center": 1, "v": 3, "v_star": 3, "v_dagger": 12, "v_bidual": 3}
    assert doc["projective"] and doc["reflexive"] and doc["injective"]
    assert list(doc) == [
        "tool", "version", "schema", "command", "input_digest", "algebra", "module", "dims",
        "embedding_rank", "injective", "reflexive", "nondegenerate", "leibniz_differentials",
        "projective", "certificate_note", "ghost_covector_dim", "ghost_bidual_dim", "bases",
    ]


def test_validate_bad_file_exits_1(capsys):
    code, out, _ = invoke(capsys, "validate", "--algebra", str(DATA / "nonassociative.json"))
    assert code == 1
    doc = json.loads(out)
    jsonschema.validate(doc, formats.schema("error"))
    assert doc["error"]["type"] == "NotAssociative"
    assert doc["error"]["location"] == "$.table[1][1][1]"


def test_validate_good_file(capsys):
    code, out, _ = invoke(capsys, "validate", "--algebra", str(ROOT / "algebras" / "exterior-2.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] is True and doc["commutative"] is False


def test_missing_file_exits_1(capsys):
    code, out, _ = invoke(capsys, "validate", "--algebra", "/nonexistent/alg.json")
    assert code == 1
    assert json.loads(out)["error"]["type"] == "ParseError"


def test_derivations_dual_numbers(capsys):
    code, out, _ = invoke(capsys, "derivations", "--preset", "dual-numbers")
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 1
    assert doc["basis"] == [[["0", "0"], ["0", "1"]]]


@pytest.mark.parametrize(
    "argv",
    [
        ["report"],
        ["report", "--preset", "matrix"],
        ["report", "--preset", "octonions"],
        ["report", "--preset", "quaternions", "--param", "3"],
        ["report", "--preset", "matrix", "--param", "2", "--algebra", "x.json"],
        ["report", "--algebra", "x.json", "--param", "2"],
        ["frobnicate", "--preset", "quaternions"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 2
    assert out == ""


@pytest.mark.parametrize("command", COMMANDS)
def test_every_command_runs(capsys, command):
    code, out, _ = invoke(capsys, command, "--preset", "triangular", "--param", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == command
    assert doc["algebra"]["name"] == "triangular-2"


def test_ghosts_command(capsys):
    code, out, _ = invoke(capsys, "ghosts", "--algebra", str(ROOT / "algebras" / "square-zero-2.json"))
    doc = json.loads(out)
    assert (doc["ghost_covector_dim"], doc["ghost_bidual_dim"]) == (6, 12)
    assert len(doc["ghost_biduals"]) == 12


def test_certificate_command(capsys):
    _, out, _ = invoke(capsys, "certificate", "--preset", "dual-numbers")
    doc = json.loads(out)
    assert doc["projective"] is False and doc["certificate"] is None
    _, out, _ = invoke(capsys, "certificate", "--preset", "quaternions")
    doc = json.loads(out)
    assert doc["projective"] is True
    assert len(doc["certificate"]["cogenerators"]) == 3


def test_submodule_flag(capsys):
    alg = str(ROOT / "algebras" / "square-zero-2.json")
    code, out, _ = invoke(capsys, "report", "--algebra", alg, "--submodule", str(DATA / "square-zero-xddx.json"), "--summary")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, formats.schema("report"))
    assert doc["module"] == {"source": "submodule", "generators": 1}
    assert doc["dims"]["v"] >= 1


def test_submodule_rejects_non_derivation(capsys):
    alg = str(ROOT / "algebras" / "square-zero-2.json")
    code, out, _ = invoke(capsys, "derivations", "--algebra", alg, "--submodule", str(DATA / "square-zero-not-derivation.json"))
    assert code == 1
    err = json.loads(out)["error"]
    assert err["type"] == "NotADerivation"
    assert err["location"] == "$[1]"
    assert err["pair"] == [1, 1]


def test_output_flag(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = invoke(capsys, "report", "--preset", "quaternions", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["dims"]["v"] == 3


def test_text_format(capsys):
    code, out, _ = invoke(capsys, "report", "--preset", "dual-numbers", "--format", "text", "--summary")
    assert code == 0
    assert "projective: no" in out
    assert "reflexive: yes" in out


def test_digest_depends_on_input(capsys):
    _, a, _ = invoke(capsys, "center", "--preset", "quaternions")
    _, b, _ = invoke(capsys, "center", "--algebra", str(ROOT / "algebras" / "quaternions-halved.json"))
    assert json.loads(a)["input_digest"] != json.loads(b)["input_digest"]
