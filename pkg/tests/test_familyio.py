import pytest

from sawkit.familyio import (
    FamilyDocument,
    FamilyParseError,
    JSON_FORMAT,
    TEXT_FORMAT,
    document_from_family,
    emit_family,
    emit_family_json,
    emit_family_text,
    parse_family,
    parse_family_json,
    parse_family_text,
)
from sawkit.families import mask_of
from sawkit.sampling import random_family, stream


def test_parse_text_example():
    doc = parse_family_text("n=3\n1,2\n3\n")
    assert doc.n == 3
    assert doc.masks == (mask_of([1, 2]), mask_of([3]))


def test_parse_text_empty_set_token():
    doc = parse_family_text("n=3\n-\n")
    assert doc.masks == (0,)


def test_parse_text_comments_and_blanks():
    doc = parse_family_text("# a comment\n\nn=2\n# another\n1\n1,2\n")
    assert doc.masks == (mask_of([1]), mask_of([1, 2]))


def test_parse_text_errors_carry_line_numbers():
    with pytest.raises(FamilyParseError, match="line 2.*out of range"):
        parse_family_text("n=2\n1,3\n")
    with pytest.raises(FamilyParseError, match="line 3.*duplicate"):
        parse_family_text("n=3\n1,2\n1,2\n")
    with pytest.raises(FamilyParseError, match="header"):
        parse_family_text("1,2\n")
    with pytest.raises(FamilyParseError, match="missing header"):
        parse_family_text("# nothing\n")
    with pytest.raises(FamilyParseError, match="line 2.*ascending"):
        parse_family_text("n=3\n2,1\n")
    with pytest.raises(FamilyParseError, match="line 2.*malformed"):
        parse_family_text("n=3\n1,x\n")
    with pytest.raises(FamilyParseError, match="ground size"):
        parse_family_text("n=99\n")


def test_parse_json_example():
    doc = parse_family_json('{"n": 3, "sets": [[1, 2], [], [3]]}')
    assert doc.n == 3
    assert doc.masks == (mask_of([1, 2]), 0, mask_of([3]))
    assert doc.fmt == JSON_FORMAT


def test_parse_json_errors():
    with pytest.raises(FamilyParseError, match="sets\\[1\\].*duplicate"):
        parse_family_json('{"n": 3, "sets": [[1], [1]]}')
    with pytest.raises(FamilyParseError, match="keys"):
        parse_family_json('{"n": 3}')
    with pytest.raises(FamilyParseError, match="invalid json"):
        parse_family_json("{")
    with pytest.raises(FamilyParseError, match="out of range"):
        parse_family_json('{"n": 2, "sets": [[5]]}')


def test_sniffing_dispatch():
    assert parse_family('  {"n": 1, "sets": []}').fmt == JSON_FORMAT
    assert parse_family("n=1\n1\n").fmt == TEXT_FORMAT


def test_emit_formats():
    doc = FamilyDocument(n=3, masks=(0, mask_of([1, 3])), fmt=TEXT_FORMAT)
    assert emit_family_text(doc) == "n=3\n-\n1,3\n"
    assert emit_family_json(doc) == '{"n": 3, "sets": [[], [1, 3]]}\n'


@pytest.mark.parametrize("fmt", [TEXT_FORMAT, JSON_FORMAT])
def test_parse_emit_roundtrip_on_random_documents(fmt):
    for case in range(60):
        n = 1 + case % 9
        fam = random_family(n, stream(81, case), max_size=25)
        doc = document_from_family(fam, fmt)
        assert parse_family(emit_family(doc)) == doc


def test_document_to_family_checks_dense_cap():
    doc = FamilyDocument(n=40, masks=(1,))
    with pytest.raises(ValueError, match="dense"):
        doc.to_family()
