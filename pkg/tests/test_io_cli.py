"""Document parsing, report serialization, and the CLI surface."""

import json

import pytest

from transitclust.cli import main
from transitclust.docio import (
    DocumentError,
    Report,
    SystemDocument,
    TransitDocument,
    parse_document,
    parse_system_document,
    parse_transit_document,
)
from transitclust.model import GroundSet, SetSystem, make_transit_function

SYSTEM_TEXT = """\
# a comment
elements: a b c
a
b
c
a b
a b c
"""

TRANSIT_TEXT = """\
elements: a b c
a b : a b
a c : a b c
b c : b c
"""


class TestParsing:
    def test_system_document(self):
        doc = parse_system_document(SYSTEM_TEXT)
        assert doc.elements == ("a", "b", "c")
        assert doc.sets[-1] == ("a", "b", "c")
        s = doc.to_set_system()
        assert len(s) == 5

    def test_transit_document(self):
        doc = parse_transit_document(TRANSIT_TEXT)
        R = doc.to_transit_function()
        assert R.transit_set("a", "c").labels == ("a", "b", "c")

    def test_sniffing(self):
        assert isinstance(parse_document(SYSTEM_TEXT), SystemDocument)
        assert isinstance(parse_document(TRANSIT_TEXT), TransitDocument)

    def test_json_mode(self):
        payload = json.dumps({"elements": ["a", "b"],
                              "entries": [["a", "b", ["a", "b"]]]})
        doc = parse_document(payload, json_mode=True)
        assert isinstance(doc, TransitDocument)

    def test_missing_header(self):
        with pytest.raises(DocumentError):
            parse_system_document("a b\n")

    def test_unknown_label(self):
        with pytest.raises(DocumentError):
            parse_system_document("elements: a b\na c\n")

    def test_duplicate_elements_line(self):
        with pytest.raises(DocumentError):
            parse_system_document("elements: a\nelements: b\na\n")

    def test_bad_transit_entry(self):
        with pytest.raises(DocumentError):
            parse_transit_document("elements: a b\na b c : a b\n")

    def test_complete_singletons_flag(self):
        doc = parse_system_document("elements: a b\na b\n")
        assert len(doc.to_set_system()) == 1
        assert len(doc.to_set_system(complete_singletons=True)) == 3


class TestEmission:
    def test_system_round_trip(self):
        s = SetSystem.build(GroundSet(("a", "b")), ["a", "b", "ab"])
        doc = SystemDocument.from_set_system(s)
        again = parse_system_document(doc.to_text()).to_set_system()
        assert again.masks == s.masks

    def test_transit_round_trip(self):
        R = make_transit_function(GroundSet(("a", "b", "c")), {
            ("a", "b"): "ab", ("a", "c"): "abc", ("b", "c"): "bc"})
        doc = TransitDocument.from_transit_function(R)
        again = parse_transit_document(doc.to_text()).to_transit_function()
        assert again.table == R.table


class TestReport:
    def test_json_round_trip(self):
        rep = Report(subject="x", checks=({"axiom": "m", "holds": True,
                                           "witness": None},),
                     order=("a", "b"))
        again = Report.from_json(rep.to_json())
        assert again.subject == "x"
        assert again.order == ("a", "b")
        assert again.all_hold()

    def test_render_text(self):
        rep = Report(subject="f", checks=(
            {"axiom": "w", "holds": False, "witness": ["a", "b", "c"]},))
        text = rep.render_text()
        assert "w: FAILS" in text and "(a, b, c)" in text


@pytest.fixture
def system_file(tmp_path):
    p = tmp_path / "sys.txt"
    p.write_text(SYSTEM_TEXT)
    return str(p)


@pytest.fixture
def transit_file(tmp_path):
    p = tmp_path / "fn.txt"
    p.write_text(TRANSIT_TEXT)
    return str(p)


class TestCli:
    def test_check_transit(self, transit_file, capsys):
        code = main(["check", transit_file, "--axiom", "m"])
        out = capsys.readouterr().out
        assert code == 0
        assert "m: holds" in out

    def test_check_json_exit_fail(self, tmp_path, capsys):
        p = tmp_path / "tri.txt"
        p.write_text("elements: a b c\na b : a b\na c : a c\nb c : b c\n")
        code = main(["check", str(p), "--json"])
        data = json.loads(capsys.readouterr().out)
        assert code == 1  # (a') fails: no pair attains the full set
        by_tag = {c["axiom"]: c for c in data["checks"]}
        assert by_tag["m"]["holds"]
        assert not by_tag["a'"]["holds"]

    def test_classify(self, system_file, capsys):
        code = main(["classify", system_file, "--json"])
        data = json.loads(capsys.readouterr().out)
        assert code == 0
        assert data["ladder"]["hierarchy"] is True

    def test_order_and_obstruction(self, tmp_path, capsys):
        good = tmp_path / "good.txt"
        good.write_text("elements: a b c\na\nb\nc\na b\nb c\n")
        assert main(["order", str(good)]) == 0
        bad = tmp_path / "bad.txt"
        bad.write_text("elements: a b c d\na b\nb c\nc d\na d\n")
        assert main(["order", str(bad)]) == 1
        assert "obstruction" in capsys.readouterr().out

    def test_closure(self, tmp_path, capsys):
        p = tmp_path / "s.txt"
        p.write_text("elements: a b c\na b\nb c\n")
        assert main(["closure", str(p)]) == 0
        out = capsys.readouterr().out
        assert "a b c" in out

    def test_enumerate_count(self, capsys):
        assert main(["enumerate", "--n", "3", "--filter", "Tsystem",
                     "--count-only"]) == 0
        assert capsys.readouterr().out.strip() == "8"

    def test_enumerate_long_run_guard(self, capsys):
        assert main(["enumerate", "--n", "5", "--count-only"]) == 2

    def test_verify_implications(self, capsys):
        assert main(["verify-implications", "--n", "3", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert all(row["status"] in ("confirmed", "report")
                   for row in data["claims"])

    def test_custom_claims_file(self, tmp_path, capsys):
        claims = tmp_path / "claims.json"
        claims.write_text(json.dumps(
            [{"hypothesis": ["w"], "conclusion": "uc"}]))
        code = main(["verify-implications", "--n", "4",
                     "--claims", str(claims)])
        assert code == 1  # (w) does not imply (uc); claim refuted

    def test_fixtures(self, capsys):
        assert main(["fixtures"]) == 0
        out = capsys.readouterr().out
        assert "MISMATCH" not in out

    def test_missing_file_usage_error(self, capsys):
        assert main(["check", "/definitely/not/here"]) == 2

    def test_parse_error(self, tmp_path):
        p = tmp_path / "junk.txt"
        p.write_text("no header here\n")
        assert main(["check", str(p)]) == 2

    def test_bad_subcommand(self):
        assert main(["frobnicate"]) == 2
