"""Character n-gram F-score over whitespace-removed text, corpus-level."""

from __future__ import annotations

from collections import Counter

from ..errors import ValidationError

DEFAULT_CHAR_ORDER = 6
DEFAULT_BETA = 2.0


def char_ngrams(text: str, order: int) -> Counter:
    s = "".join(text.split())
    return Counter(s[i : i + order] for i in range(len(s) - order + 1))


def chrf(
    hyps: list[str],
    refs: list[str],
    char_order: int = DEFAULT_CHAR_ORDER,
    beta: float = DEFAULT_BETA,
) -> float:
    """Mean F_beta over char n-gram orders 1..char_order, scaled to 0..100.

    Statistics are summed across the corpus before the F computation. Orders
    where neither side produced any n-grams are left out of the mean; an order
    with grams on one side only contributes an F of 0.
    """
    if len(hyps) != len(refs):
        raise ValidationError(f"hyp/ref length mismatch: {len(hyps)} vs {len(refs)}")
    if not hyps:
        raise ValidationError("empty corpus")
    matched = [0] * char_order
    hyp_total = [0] * char_order
    ref_total = [0] * char_order
    for hyp, ref in zip(hyps, refs):
        for n in range(1, char_order + 1):
            h = char_ngrams(hyp, n)
            r = char_ngrams(ref, n)
            matched[n - 1] += sum(min(c, r[g]) for g, c in h.items())
            hyp_total[n - 1] += sum(h.values())
            ref_total[n - 1] += sum(r.values())

    f_sum = 0.0
    active_orders = 0
    b2 = beta * beta
    for n in range(char_order):
        if hyp_total[n] == 0 and ref_total[n] == 0:
            continue
        active_orders += 1
        p = matched[n] / hyp_total[n] if hyp_total[n] else 0.0
        r = matched[n] / ref_total[n] if ref_total[n] else 0.0
        if b2 * p + r > 0:
            f_sum += (1 + b2) * p * r / (b2 * p + r)
    if active_orders == 0:
        return 0.0
    return 100.0 * f_sum / active_orders
