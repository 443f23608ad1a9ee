"""Aggregate evaluation report: every metric over one hyp/ref corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import ValidationError
from .bleu import SIGNATURE, BleuStats, bleu_from_stats, sentence_stats
from .chrf import DEFAULT_BETA, DEFAULT_CHAR_ORDER, chrf
from .meteor import SynonymTable, StemTable, meteor_corpus
from .rouge import rouge_l_corpus
from .ter import ter_corpus
from .tokenizer import tokenize_13a


@dataclass(frozen=True)
class MetricReport:
    """Corpus-level scores. BLEU/chrF/TER are on a 0-100 scale (TER may
    exceed 100), ROUGE-L/METEOR on 0-1. cos_sim/comet stay None unless
    per-sentence scores were supplied."""

    bleu: float
    precisions: tuple[float, float, float, float]
    bp: float
    chrf: float
    ter: float
    rouge_l: float
    meteor: float
    signature: str
    cos_sim: Optional[float] = None
    comet: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "precisions": list(self.precisions),
            "bp": self.bp,
            "chrf": self.chrf,
            "ter": self.ter,
            "rouge_l": self.rouge_l,
            "meteor": self.meteor,
            "signature": self.signature,
            "cos_sim": self.cos_sim,
            "comet": self.comet,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render_markdown(self) -> str:
        """One-row table in the standard column order; absent columns show an
        em dash placeholder."""
        def fmt(v, digits=2):
            return "—" if v is None else f"{v:.{digits}f}"

        header = "| BLEU | chrF | ROUGE-L | METEOR | TER | Cos Sim | COMET |"
        rule = "|---|---|---|---|---|---|---|"
        row = (
            f"| {fmt(self.bleu)} | {fmt(self.chrf)} | {fmt(self.rouge_l, 3)} "
            f"| {fmt(self.meteor, 3)} | {fmt(self.ter)} | {fmt(self.cos_sim, 3)} "
            f"| {fmt(self.comet, 3)} |"
        )
        return "\n".join([header, rule, row])


def report_from_bleu_stats(
    stats: BleuStats,
    chrf_score: float = 0.0,
    ter_rate: float = 0.0,
    rouge: float = 0.0,
    meteor: float = 0.0,
) -> MetricReport:
    """Build a report directly from BLEU sufficient statistics.

    Lets a stored stats block be re-scored without the sentences that
    produced it; the other metric slots default to zero.
    """
    score, precisions, bp = bleu_from_stats(stats)
    return MetricReport(
        bleu=score,
        precisions=precisions,
        bp=bp,
        chrf=chrf_score,
        ter=ter_rate * 100.0,
        rouge_l=rouge,
        meteor=meteor,
        signature=SIGNATURE,
    )


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def evaluate_corpus(
    hyps: list[str],
    refs: list[str],
    embedding_scores: Optional[Sequence[float]] = None,
    comet_scores: Optional[Sequence[float]] = None,
    stem_table: Optional[StemTable] = None,
    synonym_table: Optional[SynonymTable] = None,
    char_order: int = DEFAULT_CHAR_ORDER,
    beta: float = DEFAULT_BETA,
) -> MetricReport:
    if len(hyps) != len(refs):
        raise ValidationError(f"hyp/ref length mismatch: {len(hyps)} vs {len(refs)}")
    if not hyps:
        raise ValidationError("empty corpus")
    for name, scores in (("embedding", embedding_scores), ("comet", comet_scores)):
        if scores is not None and len(scores) != len(hyps):
            raise ValidationError(f"{name} scores length {len(scores)} != corpus size {len(hyps)}")

    hyp_tok = [tokenize_13a(h) for h in hyps]
    ref_tok = [tokenize_13a(r) for r in refs]

    stats = BleuStats.zero()
    for h, r in zip(hyp_tok, ref_tok):
        stats = stats + sentence_stats(h, r)
    bleu, precisions, bp = bleu_from_stats(stats)

    _, _, ter_rate = ter_corpus(hyp_tok, ref_tok)

    return MetricReport(
        bleu=bleu,
        precisions=precisions,
        bp=bp,
        chrf=chrf(hyps, refs, char_order=char_order, beta=beta),
        ter=ter_rate * 100.0,
        rouge_l=rouge_l_corpus(hyp_tok, ref_tok),
        meteor=meteor_corpus(hyp_tok, ref_tok, stem_table, synonym_table),
        signature=SIGNATURE,
        cos_sim=None if embedding_scores is None else _mean(embedding_scores),
        comet=None if comet_scores is None else _mean(comet_scores),
    )
