"""Temperature sampling over the per-language corpus distribution.

Raising the temperature flattens a skewed language distribution: each
language's share is exponentiated to 1/T and renormalized,

    p_l = (n_l / N)^(1/T) / sum_k (n_k / N)^(1/T)

so T=1 reproduces the raw proportions and large T approaches uniform.
Target counts for a fixed budget are allocated by largest-remainder
rounding, which preserves the budget exactly and is independent of input
order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace
from pathlib import Path
from typing import Mapping

from .corpus import CorpusStats, ParallelCorpus, SentencePair, accounting_language
from .errors import PlanError
from .lang import LanguageTag
from .rng import derive_rng


@dataclass(frozen=True)
class SamplingPlan:
    """Per-language probabilities and (once allocated) target counts."""

    temperature: float
    raw_counts: Mapping[LanguageTag, int]
    probabilities: Mapping[LanguageTag, float]
    counts: Mapping[LanguageTag, int] | None = None
    budget: int | None = None
    seed: int | None = None

    def languages(self) -> list[LanguageTag]:
        return sorted(self.probabilities, key=str)


def distribution(stats: CorpusStats, temperature: float, seed: int | None = None) -> SamplingPlan:
    """Build the temperature-flattened distribution from exact counts."""
    if temperature <= 0:
        raise PlanError(f"temperature must be positive, got {temperature}")
    counts = dict(stats.counts)
    if not counts:
        raise PlanError("empty stats: no languages to sample")
    for tag, count in counts.items():
        if count <= 0:
            raise PlanError(f"count for {tag} must be positive, got {count}")
    total = sum(counts.values())
    inv_t = 1.0 / temperature
    weights = {tag: (count / total) ** inv_t for tag, count in counts.items()}
    norm = sum(weights.values())
    probabilities = {tag: weight / norm for tag, weight in weights.items()}
    return SamplingPlan(temperature, counts, probabilities, seed=seed)


def largest_remainder(shares: Mapping[LanguageTag, float], budget: int) -> dict[LanguageTag, int]:
    """Integer allocation of ``budget`` proportional to ``shares``.

    Floors every quota, then hands the leftover units to the largest
    fractional remainders; ties break on rendered tag so the result does
    not depend on mapping order.
    """
    if budget < 0:
        raise PlanError(f"budget must be non-negative, got {budget}")
    quotas = {tag: budget * share for tag, share in shares.items()}
    alloc = {tag: int(quota) for tag, quota in quotas.items()}
    leftover = budget - sum(alloc.values())
    remainders = sorted(
        shares, key=lambda tag: (-(quotas[tag] - alloc[tag]), str(tag))
    )
    for tag in remainders[:leftover]:
        alloc[tag] += 1
    return alloc


def allocate(plan: SamplingPlan, budget: int) -> SamplingPlan:
    """Fix target counts for ``budget`` via largest-remainder rounding."""
    if budget <= 0:
        raise PlanError(f"budget must be positive, got {budget}")
    counts = largest_remainder(plan.probabilities, budget)
    return dc_replace(plan, counts=counts, budget=budget)


def materialize(
    plan: SamplingPlan,
    corpus: ParallelCorpus,
    budget: int | None = None,
    seed: int | None = None,
) -> ParallelCorpus:
    """Draw the planned number of pairs per language from ``corpus``.

    Languages whose target count is at most their supply are downsampled
    without replacement (survivors keep corpus order); languages needing
    more are repeated whole plus a seeded remainder sample, with the
    ``repeat`` field marking each extra copy. Output is grouped by
    rendered tag, so it depends only on (plan, corpus, seed).
    """
    if budget is None:
        budget = plan.budget if plan.budget is not None else len(corpus)
    if seed is None:
        seed = plan.seed if plan.seed is not None else 0
    if plan.counts is None or plan.budget != budget:
        plan = allocate(plan, budget)
    assert plan.counts is not None

    groups: dict[LanguageTag, list[SentencePair]] = {}
    for pair in corpus:
        groups.setdefault(accounting_language(pair), []).append(pair)

    missing_in_plan = sorted(str(t) for t in groups if t not in plan.probabilities)
    if missing_in_plan:
        raise PlanError(f"corpus languages missing from plan: {', '.join(missing_in_plan)}")
    unsupplied = sorted(
        str(t) for t, c in plan.counts.items() if c > 0 and t not in groups
    )
    if unsupplied:
        raise PlanError(f"plan wants pairs for languages absent from corpus: {', '.join(unsupplied)}")

    out: list[SentencePair] = []
    for tag in plan.languages():
        want = plan.counts.get(tag, 0)
        if want == 0:
            continue
        pool = groups[tag]
        n = len(pool)
        full, remainder = divmod(want, n)
        rng = derive_rng(seed, "materialize", str(tag))
        extra = sorted(rng.sample(range(n), remainder))
        for copy in range(full):
            if copy == 0:
                out.extend(pool)
            else:
                out.extend(dc_replace(pair, repeat=copy) for pair in pool)
        out.extend(
            dc_replace(pool[i], repeat=full) if full else pool[i] for i in extra
        )
    return ParallelCorpus(tuple(out))


def write_plan_tsv(plan: SamplingPlan, path: str | Path) -> None:
    """Serialize the plan as ``lang<TAB>n<TAB>p<TAB>c`` rows."""
    lines = ["lang\tn\tp\tc"]
    for tag in plan.languages():
        n = plan.raw_counts.get(tag, 0)
        p = plan.probabilities[tag]
        c = plan.counts.get(tag, 0) if plan.counts is not None else 0
        lines.append(f"{tag}\t{n}\t{p:.10f}\t{c}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_plot_tsv(plan: SamplingPlan, path: str | Path) -> None:
    """Raw vs sampled series (counts and shares) for external plotting."""
    total_raw = sum(plan.raw_counts.values())
    counts = plan.counts or {}
    total_sampled = sum(counts.values())
    lines = ["lang\traw_count\traw_share\tsampled_count\tsampled_share"]
    for tag in plan.languages():
        n = plan.raw_counts.get(tag, 0)
        raw_share = n / total_raw if total_raw else 0.0
        c = counts.get(tag, 0)
        sampled_share = c / total_sampled if total_sampled else plan.probabilities[tag]
        lines.append(f"{tag}\t{n}\t{raw_share:.10f}\t{c}\t{sampled_share:.10f}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
