"""Reference tokenizer shared by all metrics.

A small, frozen rule set ("13a-lite"): pad punctuation with spaces, keep
decimal/thousands separators and in-abbreviation periods attached, split on
whitespace. The rules are locked by a golden-file test; changing them changes
every metric, so don't.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

_ASCII_PUNCT = set("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~")


@dataclass(frozen=True)
class TokenizedSentence:
    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"bad token {tok!r}: empty or contains whitespace")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _is_ascii_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _is_ascii_alpha(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


def tokenize_13a(text: str) -> TokenizedSentence:
    """Tokenize normalized text.

    Rules, applied per character against its original neighbors:
      1. non-ASCII punctuation (Unicode category P*) is padded with spaces;
      2. ASCII punctuation is padded, except '.'/',' between two digits
         (3.14, 1,000) and '.' after a letter with a non-space following
         (U.S.A. style abbreviations mid-token);
      3. the result splits on whitespace.
    """
    out: list[str] = []
    n = len(text)
    for k, ch in enumerate(text):
        prev = text[k - 1] if k > 0 else " "
        nxt = text[k + 1] if k + 1 < n else " "
        if ord(ch) < 128:
            if ch in _ASCII_PUNCT:
                if ch in ".," and _is_ascii_digit(prev) and _is_ascii_digit(nxt):
                    out.append(ch)
                elif ch == "." and _is_ascii_alpha(prev) and not nxt.isspace():
                    out.append(ch)
                else:
                    out.append(f" {ch} ")
            else:
                out.append(ch)
        elif unicodedata.category(ch).startswith("P"):
            out.append(f" {ch} ")
        else:
            out.append(ch)
    return TokenizedSentence(tokens=tuple("".join(out).split()))
