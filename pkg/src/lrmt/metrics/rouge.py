"""ROUGE-L: longest-common-subsequence F1."""

from __future__ import annotations

from ..errors import ValidationError
from ._kernels import lcs_length
from .tokenizer import TokenizedSentence


def rouge_l_sentence(hyp: TokenizedSentence, ref: TokenizedSentence) -> float:
    if len(hyp) == 0 or len(ref) == 0:
        return 0.0
    lcs = lcs_length(hyp.tokens, ref.tokens)
    if lcs == 0:
        return 0.0
    p = lcs / len(hyp)
    r = lcs / len(ref)
    return 2 * p * r / (p + r)


def rouge_l_corpus(hyps: list[TokenizedSentence], refs: list[TokenizedSentence]) -> float:
    """Unweighted mean of sentence F1 scores."""
    if len(hyps) != len(refs):
        raise ValidationError(f"hyp/ref length mismatch: {len(hyps)} vs {len(refs)}")
    if not hyps:
        raise ValidationError("empty corpus")
    return sum(rouge_l_sentence(h, r) for h, r in zip(hyps, refs)) / len(hyps)
