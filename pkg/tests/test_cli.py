import json
from importlib import resources

import pytest
from click.testing import CliRunner
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from g2syl.cli import cli, run


def schema(name):
    return json.loads(resources.files("g2syl").joinpath("schemas", name).read_text())


def validator(name):
    registry = Registry().with_resource(
        "cyclo.schema.json", Resource.from_contents(schema("cyclo.schema.json")))
    return Draft202012Validator(schema(name), registry=registry)


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


def test_group_order():
    res = invoke("group-order", "--q", "7")
    assert res.exit_code == 0
    assert res.output.strip() == "117649"
    assert invoke("group-order", "--p", "3", "--k", "2").output.strip() == str(9 ** 6)


def test_bad_field_options():
    assert invoke("group-order", "--q", "12").exit_code != 0
    assert invoke("group-order", "--q", "9", "--p", "5").exit_code != 0
    assert invoke("group-order").exit_code != 0


def test_character_table_rejects_p3(capsys):
    assert run(["character-table", "--q", "3"]) == 1
    err = capsys.readouterr().err
    assert "p > 3" in err


def test_chartab_suite_rejects_p3():
    res = invoke("verify", "--q", "3", "--suite", "chartab")
    assert res.exit_code == 1
    assert "p > 3" in res.output


def test_verify_all_q5():
    res = invoke("verify", "--q", "5", "--suite", "all", "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    validator("report.schema.json").validate(doc)
    assert all(c["pass"] for c in doc["checks"])


def test_verify_all_q3_skips_chartab():
    res = CliRunner().invoke(cli, ["verify", "--q", "3"])
    assert res.exit_code == 0
    assert "chartab suite skipped" in res.stderr


def test_commutators_check_extension_field():
    res = invoke("commutators-check", "--q", "9", "--format", "csv")
    assert res.exit_code == 0
    assert res.output.startswith("name,pass")


def test_budget_exceeded(capsys):
    assert run(["verify", "--q", "25", "--suite", "group"]) == 2
    assert "budget" in capsys.readouterr().err


def test_output_is_reproducible(tmp_path):
    a, b = tmp_path / "a.md", tmp_path / "b.md"
    for path in (a, b):
        assert invoke("supercharacter-table", "--q", "3", "--out", str(path)).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    first = invoke("character-table", "--q", "5", "--format", "csv").output
    assert first == invoke("character-table", "--q", "5", "--format", "csv").output


def test_character_table_json_validates():
    res = invoke("character-table", "--q", "5", "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    validator("character_table.schema.json").validate(doc)
    assert len(doc["rows"]) == 169


def test_supercharacter_table_json_validates():
    res = invoke("supercharacter-table", "--q", "3", "--format", "json")
    doc = json.loads(res.output)
    validator("supercharacter_table.schema.json").validate(doc)
    assert len(doc["rows"]) == 17


@pytest.mark.parametrize("command, count", [("classes", 169), ("superclasses", 41)])
def test_listings_validate(command, count):
    res = invoke(command, "--q", "5", "--format", "json")
    doc = json.loads(res.output)
    validator("listing.schema.json").validate(doc)
    assert doc["count"] == count == len(doc["rows"])


def test_classes_at_p3_have_no_column():
    doc = json.loads(invoke("classes", "--q", "3", "--format", "json").output)
    validator("listing.schema.json").validate(doc)
    assert "column" not in doc["rows"][0]


def test_markdown_listing():
    out = invoke("superclasses", "--q", "3").output.splitlines()
    assert out[0] == "Superclasses, q = 3 (17 superclasses)"
    assert out[2] == "| superclass | representative | size |"
