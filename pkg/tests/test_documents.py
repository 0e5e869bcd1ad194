"""Evidence-document parsing, serialization, and builtins."""

import pytest

from credfuse import (
    BUILTIN_DOCUMENTS,
    builtin_document,
    dump_evidence_document,
    parse_evidence_document,
)
from credfuse.documents import DocumentError, format_table, matrix_table

DOC = """
{
  "frame": ["A1", "A2", "A3"],
  "evidence": [
    {"name": "m1", "masses": {"A1": 0.7, "A2": 0.1, "A1,A2,A3": 0.2}},
    {"name": "m2", "masses": {"A1": 0.7, "A1,A2,A3": 0.3}}
  ],
  "tau": 100.0
}
"""


class TestParsing:
    def test_parse_document(self):
        doc = parse_evidence_document(DOC)
        assert doc.frame.events == ("A1", "A2", "A3")
        assert doc.names == ["m1", "m2"]
        assert doc.mass_functions[0].mass("A1,A2,A3") == pytest.approx(0.2)
        assert doc.overrides == {"tau": 100.0}

    def test_round_trip_identity(self):
        doc = parse_evidence_document(DOC)
        again = parse_evidence_document(dump_evidence_document(doc))
        assert again.frame == doc.frame
        assert again.names == doc.names
        for a, b in zip(again.mass_functions, doc.mass_functions):
            assert a == b
        assert again.overrides == doc.overrides

    def test_round_trip_all_builtins(self):
        for name in BUILTIN_DOCUMENTS:
            doc = builtin_document(name)
            again = parse_evidence_document(dump_evidence_document(doc))
            assert [m for _, m in again.evidence] == [m for _, m in doc.evidence]

    def test_unknown_label_rejected(self):
        bad = DOC.replace('"A1": 0.7, "A2": 0.1', '"A9": 0.7, "A2": 0.1')
        with pytest.raises(DocumentError):
            parse_evidence_document(bad)

    def test_invalid_masses_rejected(self):
        bad = DOC.replace("0.2}", "0.9}")
        with pytest.raises(DocumentError):
            parse_evidence_document(bad)

    def test_not_json(self):
        with pytest.raises(DocumentError):
            parse_evidence_document("frame: [A1]")

    def test_missing_frame(self):
        with pytest.raises(DocumentError):
            parse_evidence_document('{"evidence": []}')

    def test_empty_evidence(self):
        with pytest.raises(DocumentError):
            parse_evidence_document('{"frame": ["A"], "evidence": []}')

    def test_default_names(self):
        doc = parse_evidence_document(
            '{"frame": ["A"], "evidence": [{"masses": {"A": 1.0}}]}'
        )
        assert doc.names == ["m1"]


class TestBuiltins:
    def test_known_names(self):
        assert set(BUILTIN_DOCUMENTS) == {"close-pair", "conflict-sensors", "fault-sensors"}

    def test_aliases(self):
        assert builtin_document("example1").names == builtin_document("fault-sensors").names
        pair = builtin_document("example6")
        assert len(pair.evidence) == 2

    def test_unknown(self):
        with pytest.raises(KeyError):
            builtin_document("mystery")

    def test_fault_sensors_shape(self, fault_case):
        doc = builtin_document("fault-sensors")
        assert doc.mass_functions == fault_case


class TestTables:
    def test_format_precision(self):
        text = format_table(["a", "b"], [[1, 0.123456]], precision=4)
        assert text == "a\tb\n1\t0.1235\n"

    def test_full_precision(self):
        text = format_table(["x"], [[0.123456789]], precision=None)
        assert "0.123456789" in text

    def test_matrix_layout(self):
        text = matrix_table([[0.0, 1.0], [1.0, 0.0]], ["r1", "r2"], ["c1", "c2"],
                            corner="name")
        lines = text.strip().split("\n")
        assert lines[0] == "name\tc1\tc2"
        assert lines[1] == "r1\t0.0000\t1.0000"
