"""Parallel corpus ingestion, statistics, reduction, and reversal.

Two representations are used. Library operations work on in-memory
:class:`ParallelCorpus` values. The CLI additionally streams raw TSV rows
(tuples of strings) through :func:`iter_tsv_rows` / :func:`write_tsv_rows`
so that ingestion and augmentation run in constant memory regardless of
corpus size.

Wire format (one sentence pair per line)::

    src_lang<TAB>tgt_lang<TAB>source<TAB>target<TAB>subset[<TAB>origin]

The optional sixth column tags mixture provenance (``orig``, ``rev``,
``aug``, ``seed:<subset>``) and is ignored when a plain corpus is read.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Collection, Iterable, Iterator, Mapping

from .errors import CorpusError
from .lang import ENGLISH, LANGUAGE_NAMES, LanguageTag, parse_tag
from .rng import derive_rng

DEFAULT_SUBSET = "general"

# Languages with more parallel sentences than this are thinned at reduce
# time; the bound is strict ("over", not "at or over").
HIGH_RESOURCE_THRESHOLD = 10_000_000
HIGH_RESOURCE_FACTOR = 0.5


def clean_text(text: str) -> str:
    """Normalize whitespace: strip the ends, collapse inner runs to one space.

    Keeps every sentence TSV-safe (no tabs or newlines survive).
    """
    return " ".join(text.split())


@dataclass(frozen=True, slots=True)
class SentencePair:
    """One aligned bitext record with direction and provenance metadata.

    ``repeat`` marks which whole-corpus copy a pair belongs to after
    upsampling (0 for the original draw).
    """

    source: str
    target: str
    src_lang: LanguageTag
    tgt_lang: LanguageTag
    subset: str = DEFAULT_SUBSET
    repeat: int = 0

    def __post_init__(self) -> None:
        if self.src_lang == self.tgt_lang:
            raise CorpusError(f"source and target language are both {self.src_lang}")
        for name, value in (("source", self.source), ("target", self.target)):
            if not value.strip():
                raise CorpusError(f"{name} text is empty")
            if "\t" in value or "\n" in value:
                raise CorpusError(f"{name} text contains a tab or newline")
        if "\t" in self.subset or "\n" in self.subset:
            raise CorpusError("subset label contains a tab or newline")


@dataclass(frozen=True, slots=True)
class ParallelCorpus:
    """An ordered, immutable sequence of sentence pairs."""

    pairs: tuple[SentencePair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[SentencePair]:
        return iter(self.pairs)

    def __getitem__(self, index: int) -> SentencePair:
        return self.pairs[index]

    @property
    def direction(self) -> tuple[LanguageTag, LanguageTag] | None:
        """The single (src, tgt) direction, or None if mixed or empty."""
        if not self.pairs:
            return None
        first = (self.pairs[0].src_lang, self.pairs[0].tgt_lang)
        for pair in self.pairs:
            if (pair.src_lang, pair.tgt_lang) != first:
                return None
        return first


@dataclass(frozen=True)
class CorpusStats:
    """Exact per-language pair counts keyed by accounting language."""

    counts: Mapping[LanguageTag, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rows(self) -> list[tuple[LanguageTag, int]]:
        """(tag, count) rows ordered by rendered tag."""
        return sorted(self.counts.items(), key=lambda item: str(item[0]))


@dataclass(frozen=True)
class IngestReport:
    """Pairs kept and (line number, reason) records for dropped lines."""

    kept: int
    skipped: tuple[tuple[int, str], ...] = ()

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)


def accounting_language(pair: SentencePair) -> LanguageTag:
    """The language a pair is counted and grouped under.

    For English-centric pairs this is the non-English side; for pairs
    without an English side the target side is used.
    """
    if pair.src_lang == ENGLISH:
        return pair.tgt_lang
    if pair.tgt_lang == ENGLISH:
        return pair.src_lang
    return pair.tgt_lang


def iter_lines(path: str | Path) -> Iterator[str]:
    """Yield lines without trailing newlines, reporting bad UTF-8 by line.

    Lines are split in binary so a decoding error is attributed to the
    exact line it occurs on.
    """
    try:
        with open(path, "rb") as handle:
            for lineno, raw in enumerate(handle, start=1):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as exc:
                    raise CorpusError(
                        f"{path}: invalid UTF-8 at line {lineno}: {exc}"
                    ) from exc
                yield line.rstrip("\r\n")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc


def ingest(
    source_path: str | Path,
    target_path: str | Path,
    src_lang: LanguageTag,
    tgt_lang: LanguageTag,
    subset: str = DEFAULT_SUBSET,
) -> tuple[ParallelCorpus, IngestReport]:
    """Build a corpus from two line-aligned text files.

    Lines that are empty after trimming on either side drop the pair; the
    drops are recorded in the returned report. Unequal line counts raise.
    """
    pairs: list[SentencePair] = []
    skipped: list[tuple[int, str]] = []
    for lineno, src, tgt in iter_paired_lines(source_path, target_path):
        src = clean_text(src)
        tgt = clean_text(tgt)
        if not src and not tgt:
            skipped.append((lineno, "both sides empty"))
        elif not src:
            skipped.append((lineno, "empty source"))
        elif not tgt:
            skipped.append((lineno, "empty target"))
        else:
            pairs.append(SentencePair(src, tgt, src_lang, tgt_lang, subset))
    return ParallelCorpus(tuple(pairs)), IngestReport(len(pairs), tuple(skipped))


def iter_paired_lines(
    source_path: str | Path, target_path: str | Path
) -> Iterator[tuple[int, str, str]]:
    """Yield (line number, source line, target line); raise on misalignment."""
    src_iter = iter_lines(source_path)
    tgt_iter = iter_lines(target_path)
    lineno = 0
    while True:
        src = next(src_iter, None)
        tgt = next(tgt_iter, None)
        if src is None and tgt is None:
            return
        lineno += 1
        if src is None or tgt is None:
            longer = target_path if src is None else source_path
            raise CorpusError(
                f"line-count mismatch: {longer} has more than {lineno - 1} lines "
                f"but the other file ended"
            )
        yield lineno, src, tgt


def stats(corpus: ParallelCorpus) -> CorpusStats:
    """Count pairs per accounting language."""
    counts: dict[LanguageTag, int] = {}
    for pair in corpus:
        tag = accounting_language(pair)
        counts[tag] = counts.get(tag, 0) + 1
    return CorpusStats(counts)


def stats_from_counts(counts: Mapping[LanguageTag, int]) -> CorpusStats:
    """Wrap externally counted totals (e.g. a manifest of shard counts)."""
    for tag, count in counts.items():
        if count < 0:
            raise CorpusError(f"negative count for {tag}")
    return CorpusStats(dict(counts))


def reduce_highresource(
    corpus: ParallelCorpus,
    threshold: int = HIGH_RESOURCE_THRESHOLD,
    factor: float = HIGH_RESOURCE_FACTOR,
    seed: int = 0,
) -> ParallelCorpus:
    """Thin every language whose pair count strictly exceeds ``threshold``.

    Over-threshold languages keep ``ceil(factor * n)`` pairs chosen by
    seeded uniform sampling without replacement; survivors stay in their
    original order. Languages at or below the threshold pass through
    untouched. Deterministic given (corpus, seed).
    """
    if not 0.0 < factor <= 1.0:
        raise CorpusError(f"factor must be in (0, 1], got {factor}")
    if threshold <= 0:
        raise CorpusError(f"threshold must be positive, got {threshold}")

    groups: dict[LanguageTag, list[int]] = {}
    for index, pair in enumerate(corpus):
        groups.setdefault(accounting_language(pair), []).append(index)

    drop: set[int] = set()
    for tag in sorted(groups, key=str):
        indices = groups[tag]
        n = len(indices)
        if n <= threshold:
            continue
        keep = math.ceil(factor * n)
        rng = derive_rng(seed, "reduce", str(tag))
        chosen = set(rng.sample(range(n), keep))
        drop.update(indices[i] for i in range(n) if i not in chosen)

    if not drop:
        return corpus
    pairs = tuple(pair for i, pair in enumerate(corpus) if i not in drop)
    return ParallelCorpus(pairs)


def reverse(corpus: ParallelCorpus) -> ParallelCorpus:
    """Swap source/target text and tags for every pair, preserving order."""
    return ParallelCorpus(tuple(reverse_pair(pair) for pair in corpus))


def reverse_pair(pair: SentencePair) -> SentencePair:
    return replace(
        pair,
        source=pair.target,
        target=pair.source,
        src_lang=pair.tgt_lang,
        tgt_lang=pair.src_lang,
    )


# ---------------------------------------------------------------------------
# TSV wire format


def format_tsv_row(pair: SentencePair, origin: str | None = None) -> str:
    fields = [str(pair.src_lang), str(pair.tgt_lang), pair.source, pair.target, pair.subset]
    if origin is not None:
        fields.append(origin)
    return "\t".join(fields)


def iter_tsv_rows(
    path: str | Path, extra_tags: Collection[LanguageTag] = ()
) -> Iterator[tuple[int, SentencePair]]:
    """Stream (line number, pair) from a corpus TSV, validating tags."""
    for lineno, line in enumerate(iter_lines(path), start=1):
        fields = line.split("\t")
        if len(fields) not in (5, 6):
            raise CorpusError(
                f"{path}:{lineno}: expected 5 or 6 tab-separated fields, got {len(fields)}"
            )
        src_lang = parse_tag(fields[0], extra_tags)
        tgt_lang = parse_tag(fields[1], extra_tags)
        try:
            pair = SentencePair(fields[2], fields[3], src_lang, tgt_lang, fields[4])
        except CorpusError as exc:
            raise CorpusError(f"{path}:{lineno}: {exc}") from exc
        yield lineno, pair


def read_tsv(path: str | Path, extra_tags: Collection[LanguageTag] = ()) -> ParallelCorpus:
    return ParallelCorpus(tuple(pair for _, pair in iter_tsv_rows(path, extra_tags)))


def write_tsv(
    corpus: Iterable[SentencePair],
    path: str | Path,
    origins: Iterable[str] | None = None,
) -> int:
    """Write pairs to TSV, optionally with a sixth origin column.

    Returns the number of rows written. The write is atomic: output lands
    in a temp file renamed into place on success.
    """
    if origins is None:
        rows = (format_tsv_row(pair) for pair in corpus)
    else:
        rows = (
            format_tsv_row(pair, origin)
            for pair, origin in zip(corpus, origins, strict=True)
        )
    return write_tsv_rows(rows, path)


def write_tsv_rows(rows: Iterable[str], path: str | Path) -> int:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    count = 0
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as handle:
            for row in rows:
                handle.write(row)
                handle.write("\n")
                count += 1
    except Exception:
        tmp.unlink(missing_ok=True)
        raise
    tmp.replace(path)
    return count


def write_skip_report(report: IngestReport, path: str | Path) -> None:
    """Plain-text sidecar: one ``<line>\\t<reason>`` row per dropped pair."""
    lines = [f"{lineno}\t{reason}" for lineno, reason in report.skipped]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def format_stats_table(stats_value: CorpusStats) -> str:
    """Aligned Language / Script / pairs table with a total row."""
    rows = []
    for tag, count in stats_value.rows():
        name = LANGUAGE_NAMES.get(tag.code, tag.code)
        rows.append((name, tag.script, count))
    name_w = max([len(r[0]) for r in rows] + [len("Language")])
    script_w = max([len(r[1]) for r in rows] + [len("Script")])
    count_w = max([len(f"{r[2]:,}") for r in rows] + [len("pairs"), len(f"{stats_value.total:,}")])
    out = [f"{'Language':<{name_w}}  {'Script':<{script_w}}  {'pairs':>{count_w}}"]
    for name, script, count in rows:
        out.append(f"{name:<{name_w}}  {script:<{script_w}}  {count:>{count_w},}")
    out.append(f"{'Total':<{name_w}}  {'':<{script_w}}  {stats_value.total:>{count_w},}")
    return "\n".join(out)
