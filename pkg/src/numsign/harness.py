"""Batch evaluation: manifests of labelled frames and success-rate reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from .errors import ManifestParseError

INVALID = "invalid"
DEFAULT_SET = "all"


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    label: int | None  # None marks a sign outside the vocabulary
    set: str = DEFAULT_SET


def parse_manifest(text: str, base_dir: str | Path = ".", check_paths: bool = True) -> list[ManifestEntry]:
    """Parse ``path,label[,set]`` lines; relative paths resolve against ``base_dir``."""
    base_dir = Path(base_dir)
    entries = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        row = [cell.strip() for cell in row]
        if len(row) not in (2, 3) or not row[0]:
            raise ManifestParseError(f"expected 'path,label[,set]', got {','.join(row)!r}", lineno)
        raw_path, raw_label = row[0], row[1].lower()
        if raw_label == INVALID:
            label = None
        elif raw_label.isdigit() and 0 <= int(raw_label) <= 9:
            label = int(raw_label)
        else:
            raise ManifestParseError(f"label must be 0-9 or 'invalid', got {row[1]!r}", lineno)
        path = Path(raw_path)
        if not path.is_absolute():
            path = base_dir / path
        if check_paths and not path.is_file():
            raise ManifestParseError(f"frame {raw_path!r} is not a readable file", lineno)
        entries.append(ManifestEntry(path, label, row[2] if len(row) == 3 and row[2] else DEFAULT_SET))
    return entries


def load_manifest(path: str | Path) -> list[ManifestEntry]:
    path = Path(path)
    return parse_manifest(path.read_text(), path.parent)


@dataclass(frozen=True)
class EvalResult:
    set: str
    label: int | None
    predicted: int | None

    @property
    def correct(self) -> bool:
        return self.label == self.predicted


def _percent(rate: Fraction | None) -> Decimal | None:
    if rate is None:
        return None
    return (Decimal(rate.numerator) / Decimal(rate.denominator)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class SetScore:
    name: str
    valid_correct: int
    valid_total: int
    invalid_correct: int
    invalid_total: int

    @property
    def valid_rate(self) -> Fraction | None:
        return Fraction(100 * self.valid_correct, self.valid_total) if self.valid_total else None

    @property
    def invalid_rate(self) -> Fraction | None:
        return Fraction(100 * self.invalid_correct, self.invalid_total) if self.invalid_total else None


def _mean(rates: Iterable[Fraction | None]) -> Fraction | None:
    rates = [r for r in rates if r is not None]
    return sum(rates, Fraction(0)) / len(rates) if rates else None


@dataclass(frozen=True)
class EvalReport:
    sets: tuple[SetScore, ...]

    @property
    def overall_valid(self) -> Fraction | None:
        """Unweighted mean of the per-set valid rates."""
        return _mean(s.valid_rate for s in self.sets)

    @property
    def overall_invalid(self) -> Fraction | None:
        return _mean(s.invalid_rate for s in self.sets)

    def rows(self) -> list[tuple[str, Decimal | None, Decimal | None]]:
        rows = [(s.name, _percent(s.valid_rate), _percent(s.invalid_rate)) for s in self.sets]
        rows.append(("Overall", _percent(self.overall_valid), _percent(self.overall_invalid)))
        return rows

    def format_table(self) -> str:
        def cell(v):
            return "n/a" if v is None else f"{v}%"

        rows = self.rows()
        width = max(len("Set"), *(len(name) for name, _, _ in rows))
        header = f"{'Set':<{width}}  {'Valid':>8}  {'Invalid':>8}"
        lines = [header, "-" * len(header)]
        lines += [f"{name:<{width}}  {cell(v):>8}  {cell(i):>8}" for name, v, i in rows]
        return "\n".join(lines) + "\n"

    def format_records(self) -> str:
        def num(v):
            return None if v is None else float(v)

        out = []
        for s in self.sets:
            out.append({
                "set": s.name,
                "valid_correct": s.valid_correct, "valid_total": s.valid_total,
                "invalid_correct": s.invalid_correct, "invalid_total": s.invalid_total,
                "valid_rate": num(_percent(s.valid_rate)),
                "invalid_rate": num(_percent(s.invalid_rate)),
            })
        out.append({
            "set": "Overall",
            "valid_rate": num(_percent(self.overall_valid)),
            "invalid_rate": num(_percent(self.overall_invalid)),
        })
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in out)


def summarize(results: Iterable[EvalResult]) -> EvalReport:
    """Per-set success rates; sets keep their first-appearance order."""
    tallies: dict[str, list[int]] = {}
    for r in results:
        t = tallies.setdefault(r.set, [0, 0, 0, 0])
        if r.label is None:
            t[3] += 1
            t[2] += r.correct
        else:
            t[1] += 1
            t[0] += r.correct
    return EvalReport(tuple(SetScore(name, *t) for name, t in tallies.items()))


def evaluate(entries: Iterable[ManifestEntry], predict: Callable[[Path], int | None]) -> EvalReport:
    return summarize(EvalResult(e.set, e.label, predict(e.path)) for e in entries)
