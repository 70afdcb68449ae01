import pytest

from tokeq.errors import InvalidArgumentError, ParseError, ValidationError
from tokeq.fairmerge import FairTokenizer
from tokeq.model_io import (
    load_fair_tokenizer,
    load_model,
    resolve_tokenizer,
    save_fair_tokenizer,
    save_model,
)
from tokeq.tokenizers import (
    BpeTokenizer,
    ByteTokenizer,
    CodepointTokenizer,
    Vocabulary,
    bpe_train,
)


def test_roundtrip_classic_model(tmp_path):
    model = bpe_train(["aaabdaaabac"], 259, "none")
    save_model(model, tmp_path / "m")
    assert load_model(tmp_path / "m") == model


def test_roundtrip_byte_only(tmp_path):
    model = bpe_train([""], 256)
    save_model(model, tmp_path / "m")
    loaded = load_model(tmp_path / "m")
    assert len(loaded.vocab) == 256
    assert loaded.merges == ()


def test_save_is_deterministic(tmp_path):
    model = bpe_train(["the cat sat on the mat"], 280)
    save_model(model, tmp_path / "a")
    save_model(model, tmp_path / "b")
    for name in ("vocab.tsv", "merges.tsv", "meta.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_vocab_file_format(tmp_path):
    model = bpe_train(["aaabdaaabac"], 257, "none")
    save_model(model, tmp_path / "m")
    lines = (tmp_path / "m" / "vocab.tsv").read_text().splitlines()
    assert lines[0] == "0\t00"
    assert lines[255] == "255\tff"
    assert lines[256] == "256\t6161"  # "aa"
    merge_lines = (tmp_path / "m" / "merges.tsv").read_text().splitlines()
    assert merge_lines[0] == "0\t97\t97\t256"


def test_duplicate_rank_rejected(tmp_path):
    model = bpe_train(["aaab"], 258, "none")
    save_model(model, tmp_path / "m")
    merges = tmp_path / "m" / "merges.tsv"
    rows = merges.read_text().splitlines()
    rows[1] = rows[0]
    merges.write_text("\n".join(rows) + "\n")
    with pytest.raises(ValidationError):
        load_model(tmp_path / "m")


def test_rank_gap_rejected(tmp_path):
    model = bpe_train(["aaab"], 258, "none")
    save_model(model, tmp_path / "m")
    merges = tmp_path / "m" / "merges.tsv"
    rows = merges.read_text().splitlines()
    merges.write_text(rows[1] + "\n")
    with pytest.raises(ValidationError):
        load_model(tmp_path / "m")


def test_parse_error_reports_line(tmp_path):
    model = bpe_train(["ab"], 257, "none")
    save_model(model, tmp_path / "m")
    vocab = tmp_path / "m" / "vocab.tsv"
    rows = vocab.read_text().splitlines()
    rows[3] = "3 not-tabbed"
    vocab.write_text("\n".join(rows) + "\n")
    with pytest.raises(ParseError, match="vocab.tsv:4"):
        load_model(tmp_path / "m")


def test_non_canonical_hex_rejected(tmp_path):
    model = bpe_train([""], 256)
    save_model(model, tmp_path / "m")
    vocab = tmp_path / "m" / "vocab.tsv"
    rows = vocab.read_text().splitlines()
    rows[255] = "255\tFF"
    vocab.write_text("\n".join(rows) + "\n")
    with pytest.raises(ParseError):
        load_model(tmp_path / "m")


def test_missing_id_rejected(tmp_path):
    model = bpe_train([""], 256)
    save_model(model, tmp_path / "m")
    vocab = tmp_path / "m" / "vocab.tsv"
    rows = vocab.read_text().splitlines()
    vocab.write_text("\n".join(rows[:-1]) + "\n" + "999\tee\n")
    with pytest.raises(ValidationError):
        load_model(tmp_path / "m")


def test_fair_tokenizer_roundtrip(tmp_path):
    vocab = Vocabulary.byte_base().extended(b"ab").extended(b"kumba")
    fair = FairTokenizer(vocab=vocab, provenance={256: "aaa_Latn", 257: "zzz_Latn"})
    save_fair_tokenizer(fair, tmp_path / "f")
    assert not (tmp_path / "f" / "merges.tsv").exists()
    loaded = load_fair_tokenizer(tmp_path / "f")
    assert loaded.vocab == vocab
    assert loaded.provenance == fair.provenance


def test_fair_provenance_must_cover_added_tokens(tmp_path):
    vocab = Vocabulary.byte_base().extended(b"ab")
    fair = FairTokenizer(vocab=vocab, provenance={256: "aaa_Latn"})
    save_fair_tokenizer(fair, tmp_path / "f")
    (tmp_path / "f" / "provenance.tsv").write_text("")
    with pytest.raises(ValidationError):
        load_fair_tokenizer(tmp_path / "f")


def test_provenance_file_format(tmp_path):
    vocab = Vocabulary.byte_base().extended(b"ab")
    fair = FairTokenizer(vocab=vocab, provenance={256: "xxx_Latn"})
    save_fair_tokenizer(fair, tmp_path / "f")
    assert (tmp_path / "f" / "provenance.tsv").read_text() == "256\t6162\txxx_Latn\n"


def test_resolve_tokenizer(tmp_path):
    assert isinstance(resolve_tokenizer("byte"), ByteTokenizer)
    assert isinstance(resolve_tokenizer("codepoint"), CodepointTokenizer)
    model = bpe_train(["abab"], 257, "none")
    save_model(model, tmp_path / "m")
    bpe = resolve_tokenizer(f"bpe:{tmp_path / 'm'}")
    assert isinstance(bpe, BpeTokenizer)
    assert bpe.model == model
    fair = FairTokenizer(vocab=Vocabulary.byte_base(), provenance={})
    save_fair_tokenizer(fair, tmp_path / "f")
    assert isinstance(resolve_tokenizer(f"fair:{tmp_path / 'f'}"), FairTokenizer)
    with pytest.raises(InvalidArgumentError):
        resolve_tokenizer("word")
