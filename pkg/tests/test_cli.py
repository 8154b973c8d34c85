from __future__ import annotations

import json
from pathlib import Path

import pytest
from loguru import logger

from src.main import build_parser, main

from .conftest import PILOT_REFERENCE, PILOT_SOURCE

SOURCES = [PILOT_SOURCE, "the pilot project in Nevada", "nothing to see here"]
REFERENCES = [
    PILOT_REFERENCE,
    "das Pilot@@ projekt in Nevada",
    "nichts zu sehen",
]


@pytest.fixture(autouse=True)
def detach_logging():
    yield
    # sinks added by main() point at the captured stderr of the finished test
    logger.remove()


def write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def read_lines(path: Path) -> list[str]:
    return path.read_text(encoding="utf-8").splitlines()


@pytest.fixture
def corpus(tmp_path, pilot_dictionary_file, bpe_codes_file):
    source = write_lines(tmp_path / "source.txt", SOURCES)
    refs = write_lines(tmp_path / "refs.txt", REFERENCES)
    constraints = tmp_path / "constraints.jsonl"
    code = main(
        [
            "extract",
            "--source", str(source),
            "--dict", str(pilot_dictionary_file),
            "--bpe-codes", str(bpe_codes_file),
            "--output", str(constraints),
        ]
    )  # fmt: skip
    assert code == 0
    return {"source": source, "refs": refs, "constraints": constraints, "dir": tmp_path}


def test_parser_lists_every_subcommand():
    parser = build_parser()

    for command in ("extract", "decode", "eval", "bench"):
        assert parser.parse_args(_minimal(command)).command == command


def _minimal(command: str) -> list[str]:
    required = {
        "extract": ["--source", "s", "--output", "o"],
        "decode": ["--source", "s", "--policy", "identity", "--output", "o"],
        "eval": ["--hyps", "h", "--refs", "r"],
        "bench": [],
    }
    return [command, *required[command]]


def test_extract_writes_constraints_and_summary(corpus, pilot_dictionary_file, capsys):
    records = [json.loads(line) for line in read_lines(corpus["constraints"])]
    capsys.readouterr()

    code = main(
        [
            "extract",
            "--source", str(corpus["source"]),
            "--dict", str(pilot_dictionary_file),
            "--output", str(corpus["dir"] / "again.jsonl"),
        ]
    )  # fmt: skip

    assert code == 0
    assert [record["id"] for record in records] == [0, 1, 2]
    assert [constraint["target"] for constraint in records[0]["constraints"]] == [["Nevada"], ["Pilot@@", "projekt"]]
    assert [constraint["source"] for constraint in records[1]["constraints"]] == [["pilot", "project"], ["Nevada"]]
    assert records[2]["constraints"] == []
    assert "sentences with constraints: 2" in capsys.readouterr().out


def test_extract_with_an_empty_dictionary(tmp_path):
    source = write_lines(tmp_path / "source.txt", SOURCES)
    dictionary = write_lines(tmp_path / "empty.tsv", [])
    output = tmp_path / "constraints.jsonl"

    assert main(["extract", "--source", str(source), "--dict", str(dictionary), "--output", str(output)]) == 0
    assert [json.loads(line)["constraints"] for line in read_lines(output)] == [[], [], []]


def test_extract_in_reference_mode(tmp_path, pilot_dictionary_file):
    source = write_lines(tmp_path / "source.txt", SOURCES[:2])
    refs = write_lines(tmp_path / "refs.txt", ["In Nevada ist ein Pilotprojekt abgeschlossen .", "nur Nevada"])
    output = tmp_path / "constraints.jsonl"

    code = main(
        [
            "extract",
            "--source", str(source),
            "--reference", str(refs),
            "--dict", str(pilot_dictionary_file),
            "--output", str(output),
        ]
    )  # fmt: skip

    records = [json.loads(line) for line in read_lines(output)]
    assert code == 0
    assert [c["target"] for c in records[0]["constraints"]] == [["Nevada"], ["Pilotprojekt"]]
    assert [c["target"] for c in records[1]["constraints"]] == [["Nevada"]]


def test_extract_needs_a_dictionary(tmp_path):
    source = write_lines(tmp_path / "source.txt", SOURCES)

    assert main(["extract", "--source", str(source), "--output", str(tmp_path / "out.jsonl")]) == 1


def test_extract_reports_a_bad_dictionary_line(tmp_path):
    source = write_lines(tmp_path / "source.txt", SOURCES)
    dictionary = write_lines(tmp_path / "bad.tsv", ["Nevada\tNevada", "no tab here"])

    code = main(["extract", "--source", str(source), "--dict", str(dictionary), "--output", str(tmp_path / "o.jsonl")])

    assert code == 1


def test_oracle_decode_reproduces_references(corpus):
    output = corpus["dir"] / "hyps.txt"

    code = main(
        [
            "decode",
            "--source", str(corpus["source"]),
            "--constraints", str(corpus["constraints"]),
            "--policy", f"oracle:{corpus['refs']}",
            "--output", str(output),
        ]
    )  # fmt: skip

    assert code == 0
    assert read_lines(output) == REFERENCES


def test_baseline_decode_ignores_constraints(corpus):
    with_constraints = corpus["dir"] / "with.txt"
    without = corpus["dir"] / "without.txt"
    common = ["decode", "--source", str(corpus["source"]), "--policy", "random:3", "--mode", "baseline"]

    assert main([*common, "--constraints", str(corpus["constraints"]), "--output", str(with_constraints)]) == 0
    assert main([*common, "--output", str(without)]) == 0
    assert read_lines(with_constraints) == read_lines(without)


def test_decode_rejects_mismatched_constraints(corpus, tmp_path):
    short_source = write_lines(tmp_path / "short.txt", SOURCES[:2])

    code = main(
        [
            "decode",
            "--source", str(short_source),
            "--constraints", str(corpus["constraints"]),
            "--policy", "identity",
            "--output", str(tmp_path / "hyps.txt"),
        ]
    )  # fmt: skip

    assert code == 1


def test_decode_reports_unknown_policy_and_missing_files(corpus, tmp_path):
    common = ["decode", "--source", str(corpus["source"]), "--output", str(tmp_path / "hyps.txt")]

    assert main([*common, "--policy", "beam:4"]) == 1
    assert main([*common, "--policy", f"oracle:{tmp_path / 'missing.txt'}"]) == 1
    assert main(["decode", "--source", str(tmp_path / "missing.txt"), "--policy", "identity", "--output", "x"]) == 1


def test_random_decode_in_no_insert_mode_keeps_every_term(corpus, capsys):
    hyps = corpus["dir"] / "hyps.txt"
    report = corpus["dir"] / "report.json"
    # fillers never spell a term, so every term is found where it was placed
    vocab = write_lines(corpus["dir"] / "vocab.txt", ["ein", "der", "ist", "und"])

    decoded = main(
        [
            "decode",
            "--source", str(corpus["source"]),
            "--constraints", str(corpus["constraints"]),
            "--policy", "random:11",
            "--mode", "no-ins",
            "--vocab", str(vocab),
            "--output", str(hyps),
        ]
    )  # fmt: skip
    evaluated = main(
        [
            "eval",
            "--hyps", str(hyps),
            "--refs", str(corpus["refs"]),
            "--constraints", str(corpus["constraints"]),
            "--system", "random",
            "--json", str(report),
        ]
    )  # fmt: skip

    payload = json.loads(report.read_text(encoding="utf-8"))
    assert decoded == 0 and evaluated == 0
    assert payload["term_usage"] == 1.0
    assert payload["order_rate"] == 1.0
    assert payload["system"] == "random"
    assert payload["constrained_sentences"] == 2
    assert "order rate: 100.00%" in capsys.readouterr().out


def test_eval_of_references_scores_100(corpus, capsys):
    capsys.readouterr()
    code = main(["eval", "--hyps", str(corpus["refs"]), "--refs", str(corpus["refs"])])

    row = capsys.readouterr().out.splitlines()[2].split()
    assert code == 0
    assert row[:4] == ["system", "100.00", "100.00", "-"]


def test_eval_bootstrap_is_deterministic(corpus, capsys):
    worse = write_lines(corpus["dir"] / "worse.txt", ["x " + line for line in REFERENCES])
    args = [
        "eval",
        "--hyps", str(corpus["refs"]),
        "--refs", str(corpus["refs"]),
        "--bootstrap", str(corpus["refs"]), str(worse),
        "--bootstrap-samples", "200",
        "--seed", "5",
    ]  # fmt: skip
    capsys.readouterr()

    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out

    assert "bootstrap p-value: " in first
    assert first == second


def test_eval_rejects_mismatched_files(corpus):
    short_refs = write_lines(corpus["dir"] / "short_refs.txt", REFERENCES[:2])

    code = main(["eval", "--hyps", str(corpus["refs"]), "--refs", str(short_refs)])

    assert code == 1


def test_decode_writes_a_trace(corpus):
    trace = corpus["dir"] / "trace.jsonl"

    code = main(
        [
            "decode",
            "--source", str(corpus["source"]),
            "--constraints", str(corpus["constraints"]),
            "--policy", f"oracle:{corpus['refs']}",
            "--trace", str(trace),
            "--output", str(corpus["dir"] / "hyps.txt"),
        ]
    )  # fmt: skip

    records = [json.loads(line) for line in read_lines(trace)]
    first = records[0]
    assert code == 0
    assert first["sentence"] == 0 and first["iteration"] == 0
    assert first["tokens"] == ["<s>", "Nevada", "Pilot@@", "projekt", "</s>"]
    assert first["mask"] == {"1": [0, 0], "2": [1, 0], "3": [1, 1]}
    assert {record["sentence"] for record in records} == {0, 1, 2}


def test_bench_on_a_small_synthetic_corpus(tmp_path, capsys):
    report_path = tmp_path / "bench.json"

    code = main(["bench", "--synthetic", "30", "--policy", "random:1", "--repetitions", "3", "--json", str(report_path)])

    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert code == 0
    assert [row["mode"] for row in report["modes"]] == ["baseline", "insert", "no-del", "no-ins"]
    assert report["sentences"] == 30 and report["repetitions"] == 3
    assert "Overhead%" in capsys.readouterr().out


def test_bench_selected_modes_on_a_source_file(corpus):
    report_path = corpus["dir"] / "bench.json"

    code = main(
        [
            "bench",
            "--source", str(corpus["source"]),
            "--constraints", str(corpus["constraints"]),
            "--modes", "no-del", "no-ins",
            "--json", str(report_path),
        ]
    )  # fmt: skip

    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert code == 0
    assert [row["mode"] for row in report["modes"]] == ["no-del", "no-ins"]
    assert report["policy"] == "identity"


def test_bench_ablation(tmp_path, capsys):
    report_path = tmp_path / "ablation.json"

    code = main(["bench", "--ablation", "--synthetic", "40", "--json", str(report_path)])

    rows = json.loads(report_path.read_text(encoding="utf-8"))
    assert code == 0
    assert [row["system"] for row in rows] == ["Baseline LevT", "+ Constr. Ins.", "+ No Del.", "+ No Ins."]
    assert rows[3]["term_usage"] == 1.0
    assert "BLEU Constr." in capsys.readouterr().out


def test_bench_rejects_a_bad_corpus_size():
    assert main(["bench", "--synthetic", "0"]) == 1
