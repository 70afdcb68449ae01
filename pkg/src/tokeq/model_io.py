"""Bit-exact text serialization of tokenizer models.

A model directory holds UTF-8, LF-terminated files:

* ``vocab.tsv``: lines ``id<TAB>hex`` with lowercase hex token bytes; ids
  0-255 are always present as the two-digit byte values.
* ``merges.tsv``: lines ``rank<TAB>left_id<TAB>right_id<TAB>result_id``
  with ranks ascending from 0 (BPE models only).
* ``provenance.tsv``: lines ``id<TAB>hex<TAB>source_lang`` (merged fair
  tokenizers only, which carry no merges.tsv).
* ``meta.json``: boundary mode and format version.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidArgumentError, ParseError, ValidationError
from .fairmerge import FairTokenizer
from .tokenizers import (
    BpeModel,
    BpeTokenizer,
    ByteTokenizer,
    CodepointTokenizer,
    MergeRule,
    Vocabulary,
)

VOCAB_FILE = "vocab.tsv"
MERGES_FILE = "merges.tsv"
PROVENANCE_FILE = "provenance.tsv"
META_FILE = "meta.json"
FORMAT_VERSION = 1


def _write_lines(path: Path, lines) -> None:
    path.write_bytes("".join(line + "\n" for line in lines).encode("utf-8"))


def _write_meta(directory: Path, boundary_mode: str) -> None:
    meta = {"boundary_mode": boundary_mode, "format_version": FORMAT_VERSION}
    (directory / META_FILE).write_bytes(
        (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode("utf-8")
    )


def _vocab_lines(vocab: Vocabulary):
    return (f"{i}\t{tok.hex()}" for i, tok in enumerate(vocab.tokens))


def save_model(model: BpeModel, directory) -> Path:
    """Write a BPE model directory; saving the same model twice is bit-identical."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    _write_lines(directory / VOCAB_FILE, _vocab_lines(model.vocab))
    _write_lines(
        directory / MERGES_FILE,
        (f"{r.rank}\t{r.left}\t{r.right}\t{r.result}" for r in model.merges),
    )
    _write_meta(directory, model.boundary_mode)
    return directory


def _parse_tsv(path: Path, n_fields: int):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read: {exc}", path=path) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}", path=path) from exc
    if text.endswith("\n"):
        text = text[:-1]
    if text == "":
        return []
    rows = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        fields = line.split("\t")
        if len(fields) != n_fields:
            raise ParseError(
                f"expected {n_fields} tab-separated fields, got {len(fields)}",
                path=path,
                line=lineno,
            )
        rows.append((lineno, fields))
    return rows


def _load_vocab(path: Path) -> Vocabulary:
    entries: dict[int, bytes] = {}
    for lineno, (id_text, hex_text) in _parse_tsv(path, 2):
        try:
            token_id = int(id_text)
            token = bytes.fromhex(hex_text)
        except ValueError as exc:
            raise ParseError(str(exc), path=path, line=lineno) from exc
        if hex_text != token.hex():
            raise ParseError(
                f"hex {hex_text!r} is not canonical lowercase", path=path, line=lineno
            )
        if token_id in entries:
            raise ValidationError(f"{path}: duplicate token id {token_id}")
        entries[token_id] = token
    if not entries or sorted(entries) != list(range(len(entries))):
        raise ValidationError(f"{path}: token ids must be exactly 0..{len(entries) - 1}")
    return Vocabulary(entries[i] for i in range(len(entries)))


def _load_meta(directory: Path) -> dict:
    path = directory / META_FILE
    try:
        meta = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read: {exc}", path=path) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    if meta.get("format_version") != FORMAT_VERSION:
        raise ValidationError(
            f"{path}: unsupported format_version {meta.get('format_version')!r}"
        )
    return meta


def load_model(directory) -> BpeModel:
    """Read a BPE model directory back; inverse of :func:`save_model`."""
    directory = Path(directory)
    vocab = _load_vocab(directory / VOCAB_FILE)
    merges_path = directory / MERGES_FILE
    merges: list[MergeRule] = []
    for lineno, fields in _parse_tsv(merges_path, 4):
        try:
            rank, left, right, result = (int(f) for f in fields)
        except ValueError as exc:
            raise ParseError(str(exc), path=merges_path, line=lineno) from exc
        if rank != len(merges):
            raise ValidationError(
                f"{merges_path}: rank {rank} at line {lineno}; "
                f"expected {len(merges)} (ranks must ascend from 0 with no gaps)"
            )
        merges.append(MergeRule(rank, left, right, result))
    meta = _load_meta(directory)
    return BpeModel(vocab, tuple(merges), meta["boundary_mode"])


def save_fair_tokenizer(tokenizer: FairTokenizer, directory) -> Path:
    """Write a merged-tokenizer directory: vocab + provenance, no merges."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    _write_lines(directory / VOCAB_FILE, _vocab_lines(tokenizer.vocab))
    _write_lines(
        directory / PROVENANCE_FILE,
        (
            f"{tid}\t{tokenizer.vocab.token_bytes(tid).hex()}\t{lang}"
            for tid, lang in sorted(tokenizer.provenance.items())
        ),
    )
    _write_meta(directory, "none")
    return directory


def load_fair_tokenizer(directory) -> FairTokenizer:
    directory = Path(directory)
    vocab = _load_vocab(directory / VOCAB_FILE)
    prov_path = directory / PROVENANCE_FILE
    provenance: dict[int, str] = {}
    for lineno, (id_text, hex_text, lang) in _parse_tsv(prov_path, 3):
        try:
            token_id = int(id_text)
        except ValueError as exc:
            raise ParseError(str(exc), path=prov_path, line=lineno) from exc
        if not 0 <= token_id < len(vocab):
            raise ValidationError(f"{prov_path}: token id {token_id} not in vocabulary")
        if vocab.token_bytes(token_id).hex() != hex_text:
            raise ValidationError(
                f"{prov_path}: line {lineno} hex does not match vocab id {token_id}"
            )
        if token_id in provenance:
            raise ValidationError(f"{prov_path}: duplicate token id {token_id}")
        provenance[token_id] = lang
    missing = [tid for tid in range(256, len(vocab)) if tid not in provenance]
    if missing:
        raise ValidationError(
            f"{prov_path}: added token ids without provenance: {missing[:5]}"
        )
    _load_meta(directory)
    return FairTokenizer(vocab=vocab, provenance=provenance)


def resolve_tokenizer(selector: str):
    """Build a tokenizer from a selector string.

    Accepted forms: ``byte``, ``codepoint``, ``bpe:<model-dir>`` and
    ``fair:<model-dir>``.
    """
    if selector == "byte":
        return ByteTokenizer()
    if selector == "codepoint":
        return CodepointTokenizer()
    if selector.startswith("bpe:"):
        return BpeTokenizer(load_model(selector[len("bpe:") :]))
    if selector.startswith("fair:"):
        return load_fair_tokenizer(selector[len("fair:") :])
    raise InvalidArgumentError(
        f"unknown tokenizer selector {selector!r}; "
        f"expected byte, codepoint, bpe:<dir> or fair:<dir>"
    )
