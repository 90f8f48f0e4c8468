from fractions import Fraction

import pytest

from numsign.errors import ManifestParseError
from numsign.harness import EvalResult, parse_manifest, summarize


def results(set_name, valid_correct, valid_total, invalid_correct, invalid_total):
    out = []
    for i in range(valid_total):
        out.append(EvalResult(set_name, 4, 4 if i < valid_correct else None))
    for i in range(invalid_total):
        out.append(EvalResult(set_name, None, None if i < invalid_correct else 2))
    return out


def test_single_set_rate():
    report = summarize(results("A", 76, 100, 16, 20))
    name, valid, invalid = report.rows()[0]
    assert (name, str(valid), str(invalid)) == ("A", "76.00", "80.00")


def test_overall_is_unweighted_mean():
    report = summarize(results("A", 1, 1, 0, 0) + results("B", 0, 3, 0, 0))
    # pooled would be 25%; the unweighted mean of 100% and 0% is 50%
    assert report.overall_valid == Fraction(50)
    assert report.overall_invalid is None
    assert "n/a" in report.format_table()


def test_wrong_digit_counts_as_failure():
    report = summarize([EvalResult("A", 3, 5), EvalResult("A", 3, 3)])
    assert report.sets[0].valid_correct == 1


def test_records_format():
    report = summarize(results("A", 3, 4, 1, 2))
    lines = report.format_records().splitlines()
    assert len(lines) == 2
    assert '"valid_rate": 75.0' in lines[0] and '"set": "Overall"' in lines[1]


def test_manifest_parsing(tmp_path):
    (tmp_path / "a.bmp").write_bytes(b"x")
    text = "# frames\na.bmp,4,A\n\na.bmp,invalid\n"
    entries = parse_manifest(text, tmp_path)
    assert [(e.label, e.set) for e in entries] == [(4, "A"), (None, "all")]
    assert entries[0].path == tmp_path / "a.bmp"


@pytest.mark.parametrize("text, line", [
    ("a.bmp,11\n", 1),
    ("a.bmp\n", 1),
    ("a.bmp,1\nmissing.bmp,2\n", 2),
    ("a.bmp,1,A,extra\n", 1),
])
def test_manifest_errors_carry_line(tmp_path, text, line):
    (tmp_path / "a.bmp").write_bytes(b"x")
    with pytest.raises(ManifestParseError) as info:
        parse_manifest(text, tmp_path)
    assert info.value.line == line
