"""Domain types, text normalization, and TSV/JSONL ingestion for parallel corpora.

A corpus is an ordered collection of sentence pairs. All text is NFC-normalized
with whitespace collapsed at ingestion time, so every downstream exact-match
operation (dedup, overlap verification) compares canonical forms.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

from .errors import IngestError, ValidationError

logger = logging.getLogger(__name__)

_LANG_TAG_RE = re.compile(r"^[a-z]{3}_[A-Z][a-z]{3}$")
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class LanguageTag:
    """BCP-47-style language + script tag, e.g. ``eng_Latn`` or ``trp_Latn``."""

    code: str

    def __post_init__(self) -> None:
        if not _LANG_TAG_RE.match(self.code):
            raise ValidationError(
                f"bad language tag {self.code!r}: expected 3 lowercase letters, "
                "underscore, title-case 4-letter script (e.g. 'eng_Latn')"
            )

    def __str__(self) -> str:
        return self.code


ENG_LATN = LanguageTag("eng_Latn")
TRP_LATN = LanguageTag("trp_Latn")


_KNOWN_ORIGIN_LABELS = ("smoldoc", "gatitos", "smolsent", "wmtbible", "synthetic")


@dataclass(frozen=True)
class Origin:
    """Provenance label for a sentence pair.

    The well-known labels are exposed as module constants (SMOLDOC, GATITOS,
    SMOLSENT, WMTBIBLE, SYNTHETIC); any other non-empty label is treated as a
    custom source.
    """

    label: str

    def __post_init__(self) -> None:
        if not self.label or _WS_RE.search(self.label):
            raise ValidationError(f"bad origin label {self.label!r}: must be non-empty, no whitespace")
        object.__setattr__(self, "label", self.label.lower())

    @property
    def is_known(self) -> bool:
        return self.label in _KNOWN_ORIGIN_LABELS

    def __str__(self) -> str:
        return self.label


SMOLDOC = Origin("smoldoc")
GATITOS = Origin("gatitos")
SMOLSENT = Origin("smolsent")
WMTBIBLE = Origin("wmtbible")
SYNTHETIC = Origin("synthetic")


def normalize_text(raw: str) -> str:
    """Canonicalize a sentence: NFC form, trimmed, inner whitespace runs collapsed.

    Case is preserved. Idempotent.
    """
    return _WS_RE.sub(" ", unicodedata.normalize("NFC", raw)).strip()


@dataclass(frozen=True)
class SentencePair:
    """One aligned source/target sentence with language tags and provenance."""

    id: str
    source_text: str
    target_text: str
    source_lang: LanguageTag
    target_lang: LanguageTag
    origin: Origin
    score: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("sentence pair id must be non-empty")
        for side, text in (("source", self.source_text), ("target", self.target_text)):
            if not text.strip():
                raise ValidationError(f"pair {self.id}: {side} text empty after trimming")
            if "\t" in text or "\n" in text or "\r" in text:
                raise ValidationError(f"pair {self.id}: {side} text contains raw tab/newline")
        if self.source_lang == self.target_lang:
            raise ValidationError(f"pair {self.id}: source and target language tags are equal")
        if self.score is not None and not -1.0 <= self.score <= 1.0:
            raise ValidationError(f"pair {self.id}: score {self.score} outside [-1, 1]")

    def with_score(self, score: float) -> "SentencePair":
        return replace(self, score=score)


@dataclass(frozen=True)
class Corpus:
    """Ordered sentence pairs plus source-composition metadata.

    ``composition`` is recomputed and cross-checked on construction, so it can
    never drift from the actual pair list.
    """

    pairs: tuple[SentencePair, ...]
    name: str = "corpus"
    composition: Mapping[Origin, int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        counts: dict[Origin, int] = {}
        seen: set[str] = set()
        for pair in self.pairs:
            if pair.id in seen:
                raise ValidationError(f"corpus {self.name!r}: duplicate pair id {pair.id!r}")
            seen.add(pair.id)
            counts[pair.origin] = counts.get(pair.origin, 0) + 1
        if self.composition is None:
            object.__setattr__(self, "composition", counts)
        elif dict(self.composition) != counts:
            raise ValidationError(f"corpus {self.name!r}: composition map disagrees with recount")

    @classmethod
    def from_pairs(cls, pairs: Iterable[SentencePair], name: str = "corpus") -> "Corpus":
        return cls(pairs=tuple(pairs), name=name)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[SentencePair]:
        return iter(self.pairs)

    def ids(self) -> set[str]:
        return {p.id for p in self.pairs}

    def with_pairs(self, pairs: Iterable[SentencePair], name: str | None = None) -> "Corpus":
        return Corpus.from_pairs(pairs, name=self.name if name is None else name)


# TSV field escaping. Backslash must be escaped first so that text containing
# literal "\t" (backslash + t) survives a round trip.

def escape_field(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "t":
                out.append("\t")
                i += 2
                continue
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _decode_utf8(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from exc


def ingest(
    path: str | Path,
    format: str,
    source_lang: LanguageTag,
    target_lang: LanguageTag,
    origin: Origin,
    header: bool = False,
    name: str | None = None,
) -> Corpus:
    """Read a TSV or JSONL file into a Corpus.

    Every row is normalized via :func:`normalize_text`. Malformed rows are
    logged and skipped; more than 10% malformed rows is treated as a wrong
    format and raises. Ids are assigned as ``<origin>:<0-based row index>``
    unless a JSONL row supplies its own ``id``.
    """
    path = Path(path)
    if format not in ("tsv", "jsonl"):
        raise IngestError(f"unknown format {format!r}: expected 'tsv' or 'jsonl'")
    if not path.exists():
        raise IngestError(f"{path}: no such file")

    text = _decode_utf8(path)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if header and lines:
        lines = lines[1:]

    pairs: list[SentencePair] = []
    malformed: list[tuple[int, str]] = []
    seen_rows = 0

    for row_index, line in enumerate(lines):
        line = line.rstrip("\r")
        if not line.strip():
            continue  # blank lines are skipped, not counted as rows
        seen_rows += 1
        try:
            pair = _parse_row(line, format, row_index, source_lang, target_lang, origin)
        except (_RowError, ValidationError) as exc:
            malformed.append((row_index, str(exc)))
            logger.warning("%s row %d malformed: %s", path, row_index, exc)
            continue
        pairs.append(pair)

    if seen_rows and len(malformed) * 10 > seen_rows:
        raise IngestError(
            f"{path}: {len(malformed)}/{seen_rows} rows malformed (>10%), "
            "likely the wrong format"
        )
    if malformed:
        logger.warning("%s: skipped %d malformed rows", path, len(malformed))
    return Corpus.from_pairs(pairs, name=name or path.stem)


class _RowError(Exception):
    pass


def _parse_row(
    line: str,
    format: str,
    row_index: int,
    source_lang: LanguageTag,
    target_lang: LanguageTag,
    origin: Origin,
) -> SentencePair:
    pair_id = f"{origin.label}:{row_index}"
    score: Optional[float] = None
    if format == "tsv":
        cols = line.split("\t")
        if len(cols) < 2:
            raise _RowError(f"expected >=2 tab-separated columns, got {len(cols)}")
        src = normalize_text(unescape_field(cols[0]))
        tgt = normalize_text(unescape_field(cols[1]))
    else:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise _RowError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise _RowError("row is not a JSON object")
        if not isinstance(obj.get("source"), str) or not isinstance(obj.get("target"), str):
            raise _RowError("missing 'source'/'target' string fields")
        src = normalize_text(obj["source"])
        tgt = normalize_text(obj["target"])
        if obj.get("origin"):
            origin = Origin(str(obj["origin"]))
        if isinstance(obj.get("id"), str) and obj["id"]:
            pair_id = obj["id"]
        else:
            pair_id = f"{origin.label}:{row_index}"
        if obj.get("score") is not None:
            try:
                score = float(obj["score"])
            except (TypeError, ValueError) as exc:
                raise _RowError(f"bad score value {obj['score']!r}") from exc
        if isinstance(obj.get("source_lang"), str):
            source_lang = LanguageTag(obj["source_lang"])
        if isinstance(obj.get("target_lang"), str):
            target_lang = LanguageTag(obj["target_lang"])
    if not src or not tgt:
        raise _RowError("empty source or target after normalization")
    try:
        return SentencePair(
            id=pair_id,
            source_text=src,
            target_text=tgt,
            source_lang=source_lang,
            target_lang=target_lang,
            origin=origin,
            score=score,
        )
    except ValidationError as exc:
        raise _RowError(str(exc)) from exc


def write(corpus: Corpus, path: str | Path, format: str) -> None:
    """Serialize a corpus to TSV or JSONL.

    JSONL carries per-pair id, language tags, origin and score, so it is the
    lossless interchange format; TSV keeps only the two text columns.
    """
    path = Path(path)
    if format not in ("tsv", "jsonl"):
        raise IngestError(f"unknown format {format!r}: expected 'tsv' or 'jsonl'")
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for pair in corpus.pairs:
            if format == "tsv":
                fh.write(f"{escape_field(pair.source_text)}\t{escape_field(pair.target_text)}\n")
            else:
                obj: dict[str, object] = {
                    "id": pair.id,
                    "source": pair.source_text,
                    "target": pair.target_text,
                    "source_lang": pair.source_lang.code,
                    "target_lang": pair.target_lang.code,
                    "origin": pair.origin.label,
                }
                if pair.score is not None:
                    obj["score"] = pair.score
                fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def infer_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".tsv":
        return "tsv"
    if suffix == ".jsonl":
        return "jsonl"
    raise IngestError(f"cannot infer format from {path!r}; pass --format")


def load_corpus(
    path: str | Path,
    format: str | None = None,
    source_lang: LanguageTag = ENG_LATN,
    target_lang: LanguageTag = TRP_LATN,
    origin: Origin = Origin("other"),
    header: bool = False,
    name: str | None = None,
) -> Corpus:
    """Convenience wrapper: ingest with the format inferred from the suffix."""
    return ingest(
        path,
        format or infer_format(path),
        source_lang=source_lang,
        target_lang=target_lang,
        origin=origin,
        header=header,
        name=name,
    )
