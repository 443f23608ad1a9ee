"""Deterministic corpus transforms.

Dedup, word-count length filter, swapped-column detection and repair, seeded
hash-sort splitting, train/eval overlap verification, and bidirectional
flip-and-concatenate export. Every transform is a pure function of its inputs;
splitting derives membership from SHA-256 over (seed, source text), so results
are identical across platforms and runs.
"""

from __future__ import annotations

import hashlib
import json
import string
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import Corpus, Origin, SentencePair
from .errors import ValidationError

DEDUP_KEYS = ("source", "target", "both")

_EDGE_PUNCT = string.punctuation


def sample_key(seed: str, source_text: str) -> bytes:
    """Stable 32-byte sampling key: SHA-256 of seed and text joined by a NUL byte."""
    h = hashlib.sha256()
    h.update(seed.encode("utf-8"))
    h.update(b"\x00")
    h.update(source_text.encode("utf-8"))
    return h.digest()


def dedup(corpus: Corpus, key: str = "both") -> tuple[Corpus, int]:
    """Drop exact duplicates, keeping the first occurrence.

    ``key`` selects which side(s) define identity: "source", "target", or
    "both" (the (source, target) tuple). Returns the deduplicated corpus and
    the number of pairs removed.
    """
    if key not in DEDUP_KEYS:
        raise ValidationError(f"dedup key must be one of {DEDUP_KEYS}, got {key!r}")
    seen: set = set()
    kept: list[SentencePair] = []
    for pair in corpus:
        if key == "source":
            k = pair.source_text
        elif key == "target":
            k = pair.target_text
        else:
            k = (pair.source_text, pair.target_text)
        if k in seen:
            continue
        seen.add(k)
        kept.append(pair)
    return corpus.with_pairs(kept), len(corpus) - len(kept)


def word_count(text: str) -> int:
    # word = maximal non-whitespace run
    return len(text.split())


def filter_length(corpus: Corpus, min_words: int, max_words: int, side: str = "source") -> Corpus:
    """Keep pairs whose chosen side has a word count in [min_words, max_words]."""
    if not 1 <= min_words <= max_words:
        raise ValidationError(f"need 1 <= min_words <= max_words, got {min_words}..{max_words}")
    if side not in ("source", "target"):
        raise ValidationError(f"side must be 'source' or 'target', got {side!r}")
    kept = []
    for pair in corpus:
        n = word_count(pair.source_text if side == "source" else pair.target_text)
        if min_words <= n <= max_words:
            kept.append(pair)
    return corpus.with_pairs(kept)


def load_stopwords() -> frozenset[str]:
    """The bundled high-frequency English function-word list."""
    text = resources.files("lrmt.data").joinpath("stopwords_en.txt").read_text("utf-8")
    words = [ln.strip() for ln in text.splitlines()]
    return frozenset(w for w in words if w and not w.startswith("#"))


def stopword_ratio(text: str, stopwords: frozenset[str]) -> float:
    """Fraction of whitespace tokens that are stopwords, after lowercasing and
    stripping edge punctuation."""
    tokens = [t.strip(_EDGE_PUNCT) for t in text.lower().split()]
    tokens = [t for t in tokens if t]
    if not tokens:
        return 0.0
    return sum(1 for t in tokens if t in stopwords) / len(tokens)


def detect_swapped_rows(
    corpus: Corpus, reference_stopwords: Optional[frozenset[str]] = None
) -> list[str]:
    """Ids of pairs whose columns look reversed.

    A pair is flagged when the target side beats the source side on
    stopword-hit ratio while the source side itself looks non-English
    (ratio below 0.05). Detection only; repair is :func:`swap_rows`.
    """
    stopwords = reference_stopwords if reference_stopwords is not None else load_stopwords()
    if not stopwords:
        raise ValidationError("reference stopword set is empty")
    flagged = []
    for pair in corpus:
        src_ratio = stopword_ratio(pair.source_text, stopwords)
        tgt_ratio = stopword_ratio(pair.target_text, stopwords)
        if tgt_ratio > src_ratio and src_ratio < 0.05:
            flagged.append(pair.id)
    return flagged


def swap_rows(corpus: Corpus, ids: Iterable[str]) -> Corpus:
    """Exchange source/target texts for the listed ids.

    Language tags stay put: the columns held the right languages' slots but the
    wrong texts. Applying the same id list twice is the identity.
    """
    wanted = set(ids)
    unknown = wanted - corpus.ids()
    if unknown:
        raise ValidationError(f"unknown ids in swap list: {sorted(unknown)}")
    out = []
    for pair in corpus:
        if pair.id in wanted:
            pair = replace(pair, source_text=pair.target_text, target_text=pair.source_text)
        out.append(pair)
    return corpus.with_pairs(out)


@dataclass(frozen=True)
class SplitEntry:
    name: str
    size: int
    origin: Optional[Origin] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("split name must be non-empty")
        if self.size < 0:
            raise ValidationError(f"split {self.name!r}: negative size")


@dataclass(frozen=True)
class SplitSpec:
    """Ordered split declarations plus the sampling seed.

    Membership is decided per entry, in declaration order, by sorting the
    still-unassigned candidates on sample_key(seed, source_text) ascending
    (ties broken by id) and taking the first `size`. Whatever remains becomes
    the "train" split.
    """

    seed: str
    entries: tuple[SplitEntry, ...]

    def __post_init__(self) -> None:
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate split names: {names}")
        if "train" in names:
            raise ValidationError("'train' is reserved for the remainder split")

    @classmethod
    def from_json_file(cls, path: str | Path) -> "SplitSpec":
        obj = json.loads(Path(path).read_text("utf-8"))
        if not isinstance(obj, dict) or "seed" not in obj or "splits" not in obj:
            raise ValidationError(f"{path}: expected object with 'seed' and 'splits'")
        entries = []
        for e in obj["splits"]:
            origin = Origin(e["origin"]) if e.get("origin") else None
            entries.append(SplitEntry(name=e["name"], size=int(e["size"]), origin=origin))
        return cls(seed=str(obj["seed"]), entries=tuple(entries))


def split(pool: Corpus, spec: SplitSpec) -> dict[str, Corpus]:
    """Partition a pool into the declared splits plus a "train" remainder.

    Deterministic in (pool membership, spec): reordering the pool does not
    change who lands where. Raises when an entry's candidate pool (after its
    origin restriction) is too small.
    """
    remaining: dict[str, SentencePair] = {p.id: p for p in pool}
    result: dict[str, Corpus] = {}
    for entry in spec.entries:
        candidates = [
            p
            for p in remaining.values()
            if entry.origin is None or p.origin == entry.origin
        ]
        if len(candidates) < entry.size:
            raise ValidationError(
                f"split {entry.name!r} wants {entry.size} pairs but only "
                f"{len(candidates)} candidates remain"
                + (f" with origin {entry.origin}" if entry.origin else "")
            )
        candidates.sort(key=lambda p: (sample_key(spec.seed, p.source_text), p.id))
        chosen = candidates[: entry.size]
        for p in chosen:
            del remaining[p.id]
        result[entry.name] = Corpus.from_pairs(chosen, name=entry.name)
    train = [p for p in pool if p.id in remaining]
    result["train"] = Corpus.from_pairs(train, name="train")
    return result


@dataclass(frozen=True)
class OverlapReport:
    """Outcome of train/eval exact-match overlap verification."""

    checked_pairs: int
    collisions: tuple[tuple[str, str, str], ...]  # (train_id, eval_id, shared text)

    @property
    def passed(self) -> bool:
        return not self.collisions

    def to_json(self) -> str:
        return json.dumps(
            {
                "checked_pairs": self.checked_pairs,
                "passed": self.passed,
                "collisions": [
                    {"train_id": t, "eval_id": e, "text": s} for t, e, s in self.collisions
                ],
            },
            ensure_ascii=False,
            indent=2,
        )

    def render(self) -> str:
        lines = [f"checked {self.checked_pairs} train/eval pair combinations"]
        if self.passed:
            lines.append("no overlap found")
        else:
            lines.append(f"{len(self.collisions)} collisions:")
            for t, e, s in self.collisions:
                lines.append(f"  {t} <-> {e}: {s!r}")
        return "\n".join(lines)


def verify_overlap(train: Corpus, eval_sets: Sequence[Corpus], side: str = "source") -> OverlapReport:
    """Report every train/eval pair sharing identical text on the chosen side.

    Only train-vs-eval is checked; eval-vs-eval sharing is out of scope.
    """
    if side != "source":
        raise ValidationError(f"overlap check supports side='source', got {side!r}")
    train_by_text: dict[str, list[str]] = {}
    for p in train:
        train_by_text.setdefault(p.source_text, []).append(p.id)
    collisions: list[tuple[str, str, str]] = []
    checked = 0
    for ev in eval_sets:
        for p in ev:
            checked += 1
            for train_id in train_by_text.get(p.source_text, ()):
                collisions.append((train_id, p.id, p.source_text))
    return OverlapReport(checked_pairs=checked, collisions=tuple(collisions))


def _trailing_rev_run(pair_id: str) -> int:
    n = 0
    while pair_id.endswith(":rev"):
        pair_id = pair_id[: -len(":rev")]
        n += 1
    return n


def flip_concat(corpus: Corpus) -> Corpus:
    """Original pairs followed by direction-flipped copies (ids suffixed :rev).

    The suffix is repeated one more time than the longest trailing :rev run
    already present, so re-flipping an already-flipped corpus still yields
    globally unique ids.
    """
    reps = 1 + max((_trailing_rev_run(p.id) for p in corpus), default=0)
    suffix = ":rev" * reps
    flipped = [
        replace(
            p,
            id=f"{p.id}{suffix}",
            source_text=p.target_text,
            target_text=p.source_text,
            source_lang=p.target_lang,
            target_lang=p.source_lang,
        )
        for p in corpus
    ]
    return corpus.with_pairs(list(corpus.pairs) + flipped)


def concat(corpora: Sequence[Corpus], name: str = "concat") -> Corpus:
    """Concatenate corpora in order. Pair ids must stay globally unique."""
    pairs: list[SentencePair] = []
    for c in corpora:
        pairs.extend(c.pairs)
    return Corpus.from_pairs(pairs, name=name)
