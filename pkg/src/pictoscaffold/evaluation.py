"""Coverage, latency and audit-rating reports.

Conventions: keyword occurrences (not unique types) are the coverage
denominator; zero-keyword sentences land in the zero bucket and count in
the per-sentence means; p95 is nearest-rank (index ceil(0.95 n), 1-based,
on the ascending sort); sd is the sample standard deviation (n-1, zero
for a single sample); median averages the two central order statistics.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptySamples, NoSentences
from .pipeline import PipelineSettings, ScaffoldedSentence, Scaffolder

RATINGS = ("C", "A", "I")
ITEM_KINDS = ("keyword", "pictogram")

AUDIT_CSV_HEADER = ["reviewer_id", "language", "sentence_id", "item_kind", "item_ref", "rating"]


# --------------------------------------------------------------------------
# coverage


@dataclass(frozen=True)
class CoverageReport:
    language: str
    mean_keywords_per_sentence: float
    k2p_coverage: float
    mean_pictograms_per_sentence: float
    pct_zero: float
    pct_partial: float
    pct_full: float
    total_sentences: int
    total_keywords: int
    mapped_keywords: int

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "mean_keywords_per_sentence": self.mean_keywords_per_sentence,
            "k2p_coverage": self.k2p_coverage,
            "mean_pictograms_per_sentence": self.mean_pictograms_per_sentence,
            "pct_zero": self.pct_zero,
            "pct_partial": self.pct_partial,
            "pct_full": self.pct_full,
            "totals": {
                "sentences": self.total_sentences,
                "keywords": self.total_keywords,
                "mapped_keywords": self.mapped_keywords,
            },
        }


def coverage_report(scaffolded: list[ScaffoldedSentence], lang: str) -> CoverageReport:
    if not scaffolded:
        raise NoSentences("no scaffolded sentences to report on")
    n = len(scaffolded)
    total_keywords = sum(len(s.keywords) for s in scaffolded)
    mapped = sum(len(s.matches) for s in scaffolded)
    zero = sum(1 for s in scaffolded if not s.matches)
    full = sum(1 for s in scaffolded if s.keywords and len(s.matches) == len(s.keywords))
    partial = n - zero - full
    k2p = 100.0 * mapped / total_keywords if total_keywords else 0.0
    return CoverageReport(
        language=lang,
        mean_keywords_per_sentence=total_keywords / n,
        k2p_coverage=k2p,
        mean_pictograms_per_sentence=mapped / n,
        pct_zero=100.0 * zero / n,
        pct_partial=100.0 * partial / n,
        pct_full=100.0 * full / n,
        total_sentences=n,
        total_keywords=total_keywords,
        mapped_keywords=mapped,
    )


def render_coverage_table(reports: list[CoverageReport]) -> str:
    rows = [
        ("Metric", *[r.language.upper() for r in reports]),
        ("Mean keywords/sentence", *[f"{r.mean_keywords_per_sentence:.2f}" for r in reports]),
        ("K2P coverage (%)", *[f"{r.k2p_coverage:.1f}" for r in reports]),
        ("Mean pictograms/sentence", *[f"{r.mean_pictograms_per_sentence:.2f}" for r in reports]),
        ("Sentences: 0 pictograms (%)", *[f"{r.pct_zero:.1f}" for r in reports]),
        ("Sentences: partial (%)", *[f"{r.pct_partial:.1f}" for r in reports]),
        ("Sentences: full (%)", *[f"{r.pct_full:.1f}" for r in reports]),
    ]
    return _render_aligned(rows)


# --------------------------------------------------------------------------
# latency


@dataclass(frozen=True)
class LatencyReport:
    language: str
    mean: float
    median: float
    sd: float
    p95: float
    min: float
    max: float
    n: int

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "mean": self.mean,
            "median": self.median,
            "sd": self.sd,
            "p95": self.p95,
            "min": self.min,
            "max": self.max,
            "n": self.n,
        }


def latency_stats(samples_ms: list[float], lang: str = "") -> LatencyReport:
    if not samples_ms:
        raise EmptySamples("latency_stats requires at least one sample")
    ordered = sorted(samples_ms)
    n = len(ordered)
    mean = statistics.fmean(ordered)
    median = statistics.median(ordered)
    sd = statistics.stdev(ordered) if n > 1 else 0.0
    p95 = ordered[math.ceil(0.95 * n) - 1]
    return LatencyReport(
        language=lang,
        mean=mean,
        median=median,
        sd=sd,
        p95=p95,
        min=ordered[0],
        max=ordered[-1],
        n=n,
    )


def render_latency_table(reports: list[LatencyReport]) -> str:
    rows = [("Language", "Mean", "Median", "SD", "95th perc.", "Min", "Max", "n")]
    for r in reports:
        rows.append(
            (
                r.language.upper(),
                f"{r.mean:.2f}",
                f"{r.median:.2f}",
                f"{r.sd:.2f}",
                f"{r.p95:.2f}",
                f"{r.min:.2f}",
                f"{r.max:.2f}",
                str(r.n),
            )
        )
    return _render_aligned(rows)


def bench_pipeline(
    corpus_path: Path | str,
    scaffolder: Scaffolder,
    settings: PipelineSettings,
    warmup: int,
    lang: str,
) -> tuple[LatencyReport, list[float]]:
    """Scaffold the corpus, drop `warmup` leading sentences, report totals."""
    text = Path(corpus_path).read_text(encoding="utf-8")
    scaffolded = scaffolder.scaffold_document(text, settings)
    samples = [s.timing.total for s in scaffolded[warmup:]]
    return latency_stats(samples, lang), samples


# --------------------------------------------------------------------------
# audits


@dataclass(frozen=True)
class AuditRecord:
    reviewer_id: str
    language: str
    sentence_id: int
    item_kind: str
    item_ref: str
    rating: str

    def __post_init__(self):
        if self.rating not in RATINGS:
            raise ValueError(f"rating must be one of {RATINGS}, got {self.rating!r}")
        if self.item_kind not in ITEM_KINDS:
            raise ValueError(f"item_kind must be one of {ITEM_KINDS}, got {self.item_kind!r}")

    def to_dict(self) -> dict:
        return {
            "reviewer_id": self.reviewer_id,
            "language": self.language,
            "sentence_id": self.sentence_id,
            "item_kind": self.item_kind,
            "item_ref": self.item_ref,
            "rating": self.rating,
        }


@dataclass(frozen=True)
class KindStats:
    rated: int
    pct_c: float
    pct_a: float
    pct_i: float

    def to_dict(self) -> dict:
        return {"rated": self.rated, "pct_c": self.pct_c, "pct_a": self.pct_a, "pct_i": self.pct_i}


@dataclass(frozen=True)
class AuditRow:
    label: str  # reviewer id, or language code for average rows
    language: str
    keywords: KindStats
    pictograms: KindStats

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "language": self.language,
            "keywords": self.keywords.to_dict(),
            "pictograms": self.pictograms.to_dict(),
        }


@dataclass(frozen=True)
class AuditReport:
    reviewer_rows: list[AuditRow]
    language_rows: list[AuditRow]

    def to_dict(self) -> dict:
        return {
            "reviewers": [r.to_dict() for r in self.reviewer_rows],
            "language_averages": [r.to_dict() for r in self.language_rows],
        }


def _kind_stats(records: list[AuditRecord]) -> KindStats:
    rated = len(records)
    if rated == 0:
        return KindStats(0, 0.0, 0.0, 0.0)
    counts = {r: 0 for r in RATINGS}
    for record in records:
        counts[record.rating] += 1
    return KindStats(
        rated=rated,
        pct_c=100.0 * counts["C"] / rated,
        pct_a=100.0 * counts["A"] / rated,
        pct_i=100.0 * counts["I"] / rated,
    )


def audit_aggregate(records: list[AuditRecord]) -> AuditReport:
    """Per-reviewer C/A/I percentages plus unweighted per-language averages."""
    by_reviewer: dict[tuple[str, str], list[AuditRecord]] = {}
    for record in records:
        by_reviewer.setdefault((record.language, record.reviewer_id), []).append(record)

    reviewer_rows = []
    for (language, reviewer_id) in sorted(by_reviewer):
        recs = by_reviewer[(language, reviewer_id)]
        reviewer_rows.append(
            AuditRow(
                label=reviewer_id,
                language=language,
                keywords=_kind_stats([r for r in recs if r.item_kind == "keyword"]),
                pictograms=_kind_stats([r for r in recs if r.item_kind == "pictogram"]),
            )
        )

    language_rows = []
    for language in sorted({row.language for row in reviewer_rows}):
        rows = [r for r in reviewer_rows if r.language == language]
        language_rows.append(
            AuditRow(
                label=language,
                language=language,
                keywords=_average_stats([r.keywords for r in rows]),
                pictograms=_average_stats([r.pictograms for r in rows]),
            )
        )
    return AuditReport(reviewer_rows=reviewer_rows, language_rows=language_rows)


def _average_stats(stats: list[KindStats]) -> KindStats:
    n = len(stats)
    return KindStats(
        rated=round(sum(s.rated for s in stats) / n),
        pct_c=sum(s.pct_c for s in stats) / n,
        pct_a=sum(s.pct_a for s in stats) / n,
        pct_i=sum(s.pct_i for s in stats) / n,
    )


def render_audit_table(report: AuditReport) -> str:
    rows = [
        (
            "Reviewer",
            "Keywords rated",
            "Pictograms rated",
            "Kw C (%)",
            "Kw A (%)",
            "Kw I (%)",
            "Pic C (%)",
            "Pic A (%)",
            "Pic I (%)",
        )
    ]

    def fmt(row: AuditRow, label: str) -> tuple:
        return (
            label,
            str(row.keywords.rated),
            str(row.pictograms.rated),
            f"{row.keywords.pct_c:.1f}",
            f"{row.keywords.pct_a:.1f}",
            f"{row.keywords.pct_i:.1f}",
            f"{row.pictograms.pct_c:.1f}",
            f"{row.pictograms.pct_a:.1f}",
            f"{row.pictograms.pct_i:.1f}",
        )

    for row in report.reviewer_rows:
        rows.append(fmt(row, row.label))
    rows.append(("Averages per language",) + ("",) * 8)
    for row in report.language_rows:
        rows.append(fmt(row, row.language.upper()))
    return _render_aligned(rows)


# --------------------------------------------------------------------------
# audit CSV io


def audit_records_to_csv(records: list[AuditRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(AUDIT_CSV_HEADER)
    for r in records:
        writer.writerow(
            [r.reviewer_id, r.language, r.sentence_id, r.item_kind, r.item_ref, r.rating]
        )
    return buffer.getvalue()


def parse_audit_csv(content: str) -> list[AuditRecord]:
    reader = csv.reader(io.StringIO(content))
    rows = [row for row in reader if row]
    if not rows:
        return []
    if rows[0] == AUDIT_CSV_HEADER:
        rows = rows[1:]
    records = []
    for row in rows:
        if len(row) != len(AUDIT_CSV_HEADER):
            raise ValueError(f"expected {len(AUDIT_CSV_HEADER)} columns, got {row!r}")
        records.append(
            AuditRecord(
                reviewer_id=row[0],
                language=row[1],
                sentence_id=int(row[2]),
                item_kind=row[3],
                item_ref=row[4],
                rating=row[5],
            )
        )
    return records


def read_audit_csv(path: Path | str) -> list[AuditRecord]:
    return parse_audit_csv(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------


def _render_aligned(rows: list[tuple]) -> str:
    widths = [0] * max(len(r) for r in rows)
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)
