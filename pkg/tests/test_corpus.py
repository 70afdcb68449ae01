import json

import pytest

from tokeq.corpus import (
    ParallelCorpus,
    char_counts,
    load_documents,
    load_parallel,
    save_parallel,
)
from tokeq.errors import (
    AlignmentError,
    CorpusEncodingError,
    ParseError,
    ValidationError,
)


def write_corpus(root, files, manifest=None):
    for name, body in files.items():
        (root / name).write_bytes(body if isinstance(body, bytes) else body.encode())
    if manifest is None:
        manifest = {
            "pivot": sorted(files)[0].removesuffix(".txt"),
            "languages": {n.removesuffix(".txt"): n for n in files},
            "format_version": 1,
        }
    (root / "manifest.json").write_text(json.dumps(manifest))
    return root


def test_load_two_aligned_files(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": "x\ny\nz\n", "bbb.txt": "1\n2\n3\n"})
    corpus = load_parallel(tmp_path)
    assert corpus.n_sentences == 3
    assert corpus.codes == ("aaa", "bbb")
    assert corpus.sentences("aaa") == ("x", "y", "z")


def test_trailing_newline_optional(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": "x\ny", "bbb.txt": "1\n2\n"})
    assert load_parallel(tmp_path).n_sentences == 2


def test_alignment_error_names_both_languages(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": "x\ny\nz\n", "bbb.txt": "1\n2\n"})
    with pytest.raises(AlignmentError, match=r"aaa has 3 lines but bbb has 2"):
        load_parallel(tmp_path)


def test_invalid_utf8_reports_byte_offset(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": b"ok\n\xff\n", "bbb.txt": "1\n2\n"})
    with pytest.raises(CorpusEncodingError) as info:
        load_parallel(tmp_path)
    assert info.value.byte_offset == 3


def test_duplicate_language_code_rejected(tmp_path):
    (tmp_path / "aaa.txt").write_text("x\n")
    (tmp_path / "manifest.json").write_text(
        '{"pivot": "aaa", "languages": {"aaa": "aaa.txt", "aaa": "aaa.txt"}}'
    )
    with pytest.raises(ValidationError, match="duplicate"):
        load_parallel(tmp_path)


def test_crlf_rejected(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": "x\r\ny\r\n", "bbb.txt": "1\n2\n"})
    with pytest.raises(ValidationError, match="CR"):
        load_parallel(tmp_path)


def test_single_language_manifest_rejected(tmp_path):
    write_corpus(
        tmp_path,
        {"aaa.txt": "x\n"},
        manifest={"pivot": "aaa", "languages": {"aaa": "aaa.txt"}},
    )
    with pytest.raises(ValidationError):
        load_parallel(tmp_path)


def test_bad_manifest_json(tmp_path):
    (tmp_path / "manifest.json").write_text("{")
    with pytest.raises(ParseError):
        load_parallel(tmp_path)


def test_pivot_must_be_declared(tmp_path):
    write_corpus(
        tmp_path,
        {"aaa.txt": "x\n", "bbb.txt": "y\n"},
        manifest={"pivot": "zzz", "languages": {"aaa": "aaa.txt", "bbb": "bbb.txt"}},
    )
    with pytest.raises(ValidationError, match="pivot"):
        load_parallel(tmp_path)


def test_empty_lines_retained_but_counted(tmp_path):
    write_corpus(tmp_path, {"aaa.txt": "x\n\nz\n", "bbb.txt": "1\n2\n3\n"})
    corpus = load_parallel(tmp_path)
    assert corpus.n_sentences == 3
    assert corpus.kept_indices == (0, 2)
    assert corpus.dropped_pairs == 1


def test_order_independent(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    write_corpus(a, {"aaa.txt": "x\n", "bbb.txt": "y\n"})
    write_corpus(
        b,
        {"aaa.txt": "x\n", "bbb.txt": "y\n"},
        manifest={
            "pivot": "aaa",
            "languages": {"bbb": "bbb.txt", "aaa": "aaa.txt"},
        },
    )
    assert load_parallel(a) == load_parallel(b)


def test_load_is_idempotent(toy2_dir):
    assert load_parallel(toy2_dir) == load_parallel(toy2_dir)


def test_save_then_reload_identical(tmp_path, toy2_dir):
    corpus = load_parallel(toy2_dir)
    save_parallel(corpus, tmp_path / "out", pivot="aaa_Latn")
    assert load_parallel(tmp_path / "out") == corpus


def test_nfc_flag(tmp_path):
    decomposed = "é"  # e + combining acute
    write_corpus(tmp_path, {"aaa.txt": decomposed + "\n", "bbb.txt": "e\n"})
    raw = load_parallel(tmp_path)
    assert raw.sentences("aaa") == (decomposed,)
    normalized = load_parallel(tmp_path, nfc=True)
    assert normalized.sentences("aaa") == ("é",)


def test_char_counts():
    corpus = ParallelCorpus({"aaa": ["ab", "c"], "bbb": ["защо", ""]})
    counts = char_counts(corpus)
    assert counts["aaa"] == 3
    assert counts["bbb"] == 4


def test_char_counts_empty_language():
    corpus = ParallelCorpus({"aaa": [], "bbb": []})
    assert char_counts(corpus) == {"aaa": 0, "bbb": 0}


def test_constructor_rejects_line_terminators():
    with pytest.raises(ValidationError):
        ParallelCorpus({"aaa": ["bad\nline"], "bbb": ["ok"]})


def test_constructor_rejects_whitespace_code():
    with pytest.raises(ValidationError):
        ParallelCorpus({"a b": ["x"], "c": ["y"]})


def test_load_documents_file_and_dir(tmp_path):
    (tmp_path / "one.txt").write_text("a\nb\n")
    (tmp_path / "two.txt").write_text("c\n")
    assert load_documents(tmp_path / "one.txt") == ["a", "b"]
    assert load_documents(tmp_path) == ["a", "b", "c"]
