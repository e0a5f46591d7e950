"""Ring-definition parsing and the command-line surface."""

import json

import pytest

from sring import MalformedExpressionError, parse_ring_data, parse_ring_file
from sring.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


Z24_DOC = {"ring": {"type": "zmod", "n": 24}, "mult_set": {"generators": [2]}}


def test_parse_ring_data_examples():
    ring, S = parse_ring_data(Z24_DOC)
    assert ring.size == 24 and S.members == (1, 2, 4, 8, 16)
    ring, S = parse_ring_data({"ring": {"type": "zmod", "n": 6}})
    assert S.members == (1,)  # missing mult_set defaults to the unit set


def test_parse_structured_document():
    doc = {"ring": {"type": "idealization",
                    "base": {"type": "zmod", "n": 4},
                    "module": {"cyclic": [[2]]}},
           "mult_set": {"generators": [[3, [0]]]}}
    ring, S = parse_ring_data(doc)
    assert ring.size == 8
    assert len(S.members) == 2


def test_parse_error_paths():
    with pytest.raises(MalformedExpressionError, match=r"ring\.n"):
        parse_ring_data({"ring": {"type": "zmod", "n": "x"}})
    with pytest.raises(MalformedExpressionError, match=r"factors\[1\]"):
        parse_ring_data({"ring": {"type": "product",
                                  "factors": [{"type": "zmod", "n": 2}, 7]}})
    with pytest.raises(MalformedExpressionError, match="unknown key"):
        parse_ring_data({"ring": {"type": "zmod", "n": 4}, "extra": 1})
    with pytest.raises(MalformedExpressionError, match="generators"):
        parse_ring_data({"ring": {"type": "zmod", "n": 4},
                         "mult_set": {"generators": []}})


def test_parse_ring_file_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"ring": {"type": "zmod", \n "n":}}')
    with pytest.raises(MalformedExpressionError, match="line 2"):
        parse_ring_file(str(path))


def test_cli_check_s_reduced(tmp_path, capsys):
    path = write(tmp_path, "z24.json", Z24_DOC)
    assert main(["check", "s-reduced", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["predicate"] == "s-reduced"
    assert doc["verdict"] is True
    assert doc["witnesses"]["uniform_witness"] == 4


def test_cli_exit_codes(tmp_path, capsys):
    zero_doc = {"ring": {"type": "zmod", "n": 4}, "mult_set": {"generators": [2]}}
    path = write(tmp_path, "z4.json", zero_doc)
    assert main(["check", "s-reduced", path]) == 3

    bad = write(tmp_path, "bad.json", {"ring": {"type": "zmod", "n": 1}})
    assert main(["describe", bad]) == 2

    big = write(tmp_path, "big.json", {"ring": {"type": "zmod", "n": 5000}})
    assert main(["describe", big]) == 4
    assert main(["describe", big, "--cap", "8192"]) == 0
    capsys.readouterr()

    assert main(["check", "no-such-predicate", big]) == 2
    assert main(["verify", "--statement", "NOT_A_STATEMENT"]) == 2


def test_cli_spectrum_golden(tmp_path, capsys):
    path = write(tmp_path, "z24.json", Z24_DOC)
    assert main(["spectrum", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    three = list(range(0, 24, 3))
    assert doc["spectrum"] == [
        {"ideal": [0], "witness_s": 8, "colon_prime": three},
        {"ideal": [0, 12], "witness_s": 4, "colon_prime": three},
        {"ideal": [0, 6, 12, 18], "witness_s": 2, "colon_prime": three},
        {"ideal": three, "witness_s": 1, "colon_prime": three},
    ]
    assert doc["intersection"] == [0]


def test_cli_localize_and_describe(tmp_path, capsys):
    path = write(tmp_path, "z24.json", Z24_DOC)
    assert main(["localize", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    loc = doc["localization"]
    assert loc["localized_size"] == 3
    assert loc["localized_reduced"] and loc["localized_is_field"]
    assert loc["torsion_kernel"] == list(range(0, 24, 3))

    assert main(["describe", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ring"]["nilpotents"] == [0, 6, 12, 18]
    assert not doc["ring"]["reduced"]
    assert doc["mult_set"]["members"] == [1, 2, 4, 8, 16]


def test_cli_check_armendariz_mode_block(tmp_path, capsys):
    path = write(tmp_path, "z24.json", Z24_DOC)
    # degree 1 keeps the pair space enumerable, so auto picks exhaustive
    assert main(["check", "u-s-armendariz", path, "--max-degree", "1",
                 "--budget", "2000", "--seed", "7"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mode"] == {"degree": 1, "search": "exhaustive", "seed": None,
                           "budget": 2000}
    assert doc["verdict"] is True
    # degree 2 blows past the exhaustive budget and falls back to sampling
    assert main(["check", "u-s-armendariz", path, "--max-degree", "2",
                 "--budget", "2000", "--seed", "7"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mode"] == {"degree": 2, "search": "sampled", "seed": 7,
                           "budget": 2000}
    assert doc["witnesses"]["pairs_checked"] == 2000


def test_cli_verify_single_statement_and_corpus_dir(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    (corpus_dir / "a-z24.json").write_text(json.dumps(Z24_DOC))
    (corpus_dir / "b-z6.json").write_text(json.dumps(
        {"ring": {"type": "zmod", "n": 6}, "mult_set": {"generators": [2]}}))
    out = tmp_path / "report.jsonl"
    code = main(["verify", "--statement", "SPECTRUM_S_ZERO",
                 "--corpus", str(corpus_dir), "--jsonl", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    docs = [json.loads(line) for line in lines]
    assert "manifest" in docs[0]
    reports = docs[1:]
    assert [r["instance"] for r in reports] == ["a-z24.json", "b-z6.json"]
    assert all(r["verdict"] == "holds" for r in reports)
    summary = capsys.readouterr().out
    assert "SPECTRUM_S_ZERO" in summary


def test_cli_search_drop_hypothesis(capsys):
    code = main(["search", "--statement", "S_RADICAL_QUOTIENT",
                 "--variant", "drop-hypothesis", "--count", "0"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["found"] is True
    assert doc["payload"]["quotient_s_reduced"] is True


def test_cli_reports_are_byte_stable(tmp_path, capsys):
    path = write(tmp_path, "z24.json", Z24_DOC)
    outputs = []
    for _ in range(2):
        assert main(["spectrum", path]) == 0
        first = capsys.readouterr().out
        assert main(["check", "s-reduced", path]) == 0
        second = capsys.readouterr().out
        outputs.append((first, second))
    assert outputs[0] == outputs[1]
