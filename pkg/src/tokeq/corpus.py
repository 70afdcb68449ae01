"""Line-aligned parallel corpora and monolingual document ingestion.

On-disk layout: a directory with one ``<code>.txt`` file per language and a
``manifest.json`` declaring the pivot and the file names.  Files are UTF-8
with LF newlines and no BOM; line i of every file is a translation of line
i of every other.
"""

from __future__ import annotations

import json
import unicodedata
from pathlib import Path
from types import MappingProxyType

from .errors import (
    AlignmentError,
    CorpusEncodingError,
    InvalidArgumentError,
    ParseError,
    ValidationError,
)

MANIFEST_NAME = "manifest.json"
FORMAT_VERSION = 1


def _check_code(code: str) -> str:
    if not isinstance(code, str) or not code:
        raise ValidationError(f"language code must be a non-empty string, got {code!r}")
    if any(ch.isspace() for ch in code):
        raise ValidationError(f"language code {code!r} contains whitespace")
    return code


class ParallelCorpus:
    """Immutable mapping from language code to an aligned sentence tuple."""

    __slots__ = ("_languages", "_n", "_utf8_cache", "_kept")

    def __init__(self, languages):
        if not languages:
            raise ValidationError("corpus must contain at least one language")
        store: dict[str, tuple[str, ...]] = {}
        n = None
        first_code = None
        for code, sentences in languages.items():
            _check_code(code)
            lines = tuple(sentences)
            for i, line in enumerate(lines):
                if "\n" in line or "\r" in line:
                    raise ValidationError(
                        f"{code} line {i + 1} contains a line terminator"
                    )
            if n is None:
                n = len(lines)
                first_code = code
            elif len(lines) != n:
                raise AlignmentError(
                    f"{first_code} has {n} lines but {code} has {len(lines)}"
                )
            store[code] = lines
        self._languages = store
        self._n = n or 0
        self._utf8_cache: dict[str, tuple[bytes, ...]] = {}
        self._kept: tuple[int, ...] | None = None

    @property
    def languages(self):
        return MappingProxyType(self._languages)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(sorted(self._languages))

    @property
    def n_sentences(self) -> int:
        return self._n

    def sentences(self, code: str) -> tuple[str, ...]:
        try:
            return self._languages[code]
        except KeyError:
            raise ValidationError(f"language {code!r} not in corpus") from None

    def utf8_lines(self, code: str) -> tuple[bytes, ...]:
        cached = self._utf8_cache.get(code)
        if cached is None:
            cached = tuple(s.encode("utf-8") for s in self.sentences(code))
            self._utf8_cache[code] = cached
        return cached

    @property
    def kept_indices(self) -> tuple[int, ...]:
        """Line numbers where every language is non-empty.

        A line that is empty in any language is dropped from premium sums in
        all languages, keeping every per-language total over the same index
        set.
        """
        if self._kept is None:
            self._kept = tuple(
                i
                for i in range(self._n)
                if all(lines[i] for lines in self._languages.values())
            )
        return self._kept

    @property
    def dropped_pairs(self) -> int:
        return self._n - len(self.kept_indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParallelCorpus):
            return NotImplemented
        return self._languages == other._languages

    def __repr__(self) -> str:
        return f"ParallelCorpus({len(self._languages)} languages x {self._n} sentences)"


def _read_utf8(path: Path) -> str:
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusEncodingError(path, exc.start, exc.reason) from exc
    if text.startswith("﻿"):
        raise ValidationError(f"{path} starts with a BOM")
    if "\r" in text:
        raise ValidationError(f"{path} contains CR; only LF newlines are supported")
    return text


def _split_lines(text: str) -> list[str]:
    if text == "":
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def read_manifest(path) -> dict:
    """Parse and structurally validate a corpus manifest.

    ``path`` may be the manifest file or the directory containing it.
    """
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME

    def reject_duplicates(pairs):
        seen = {}
        for key, value in pairs:
            if key in seen:
                raise ValidationError(f"{path}: duplicate key {key!r}")
            seen[key] = value
        return seen

    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read manifest: {exc}", path=path) from exc
    try:
        manifest = json.loads(raw, object_pairs_hook=reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    if not isinstance(manifest, dict):
        raise ParseError("manifest must be a JSON object", path=path)
    languages = manifest.get("languages")
    if not isinstance(languages, dict) or not languages:
        raise ParseError("manifest must map language codes to files", path=path)
    for code in languages:
        _check_code(code)
    pivot = manifest.get("pivot")
    if pivot is not None and pivot not in languages:
        raise ValidationError(f"{path}: pivot {pivot!r} is not a declared language")
    manifest["_dir"] = path.parent
    return manifest


def load_parallel(manifest_path, nfc: bool = False) -> ParallelCorpus:
    """Load and validate the parallel corpus a manifest describes."""
    manifest = read_manifest(manifest_path)
    languages = manifest["languages"]
    if len(languages) < 2:
        raise ValidationError("a parallel corpus needs at least two languages")
    base: Path = manifest["_dir"]
    loaded: dict[str, list[str]] = {}
    for code in languages:
        lines = _split_lines(_read_utf8(base / languages[code]))
        if nfc:
            lines = [unicodedata.normalize("NFC", line) for line in lines]
        loaded[code] = lines
    return ParallelCorpus(loaded)


def save_parallel(corpus: ParallelCorpus, out_dir, pivot: str) -> Path:
    """Write the canonical on-disk layout; returns the manifest path."""
    if pivot not in corpus.languages:
        raise ValidationError(f"pivot {pivot!r} not in corpus")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    for code in corpus.codes:
        name = f"{code}.txt"
        body = "".join(line + "\n" for line in corpus.sentences(code))
        (out / name).write_bytes(body.encode("utf-8"))
        files[code] = name
    manifest = {"pivot": pivot, "languages": files, "format_version": FORMAT_VERSION}
    path = out / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def char_counts(corpus: ParallelCorpus) -> dict[str, int]:
    """Per-language codepoint totals over all sentences."""
    return {
        code: sum(len(line) for line in corpus.sentences(code))
        for code in corpus.codes
    }


def load_documents(path) -> list[str]:
    """Training documents from a text file (one per line) or a directory of .txt files."""
    path = Path(path)
    if path.is_dir():
        docs: list[str] = []
        files = sorted(path.glob("*.txt"))
        if not files:
            raise InvalidArgumentError(f"{path} contains no .txt files")
        for f in files:
            docs.extend(_split_lines(_read_utf8(f)))
        return docs
    return _split_lines(_read_utf8(path))
