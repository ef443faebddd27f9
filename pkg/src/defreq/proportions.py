"""Answer proportions per dimension level, read from CSV and summarised.

Values are kept as the decimal strings found in the file so that reports
reproduce the source exactly; arithmetic uses ``Decimal``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .context import Dimension
from .errors import MalformedRow

ANSWERS = ("B", "E", "O", "A")
ANSWER_NAMES = {"B": "Benchmark", "E": "Exception", "O": "Other", "A": "Abstention"}
SUM_TOLERANCE = Decimal("0.005")
REFERENT_LEVEL = 1


@dataclass(frozen=True)
class ProportionRow:
    dimension: Dimension
    level: int
    raw: tuple[str, str, str, str]  # B, E, O, A exactly as written

    @property
    def p(self) -> dict[str, Decimal]:
        return {k: Decimal(v) for k, v in zip(ANSWERS, self.raw)}

    @property
    def total(self) -> Decimal:
        return sum(self.p.values(), Decimal(0))

    @property
    def sum_ok(self) -> bool:
        return abs(self.total - 1) <= SUM_TOLERANCE

    def modal(self) -> tuple[str, ...]:
        """Answers sharing the largest proportion; more than one means a tie."""
        p = self.p
        top = max(p.values())
        return tuple(k for k in ANSWERS if p[k] == top)


def _row(record: dict, where: str) -> ProportionRow:
    try:
        dim = Dimension(record["dimension"].strip().lower())
    except (KeyError, ValueError):
        raise MalformedRow(f"{where}: unknown dimension {record.get('dimension')!r}") from None
    try:
        level = int(record["level"])
    except (KeyError, TypeError, ValueError):
        raise MalformedRow(f"{where}: level must be an integer") from None
    if not 1 <= level <= 4:
        raise MalformedRow(f"{where}: level {level} outside 1..4")
    raw = []
    for k in ANSWERS:
        value = (record.get(k) or "").strip()
        try:
            d = Decimal(value)
        except InvalidOperation:
            raise MalformedRow(f"{where}: {k} is not a decimal fraction: {value!r}") from None
        if not (0 <= d <= 1):
            raise MalformedRow(f"{where}: {k}={value} outside [0, 1]")
        raw.append(value)
    return ProportionRow(dim, level, tuple(raw))


def read_proportions(source: str | Path, *, strict: bool = False) -> list[ProportionRow]:
    """Parse the ``dimension,level,B,E,O,A`` CSV.

    With ``strict`` a row whose fractions do not sum to 1 within the rounding
    tolerance is rejected; otherwise it is kept and flagged in the report.
    """
    text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
    reader = csv.DictReader(io.StringIO(text))
    header = [h.strip() for h in (reader.fieldnames or [])]
    if header != ["dimension", "level", *ANSWERS]:
        raise MalformedRow(f"header must be dimension,level,B,E,O,A; got {','.join(header)}")
    rows = []
    seen = set()
    for n, record in enumerate(reader, start=2):
        row = _row(record, f"line {n}")
        if (row.dimension, row.level) in seen:
            raise MalformedRow(f"line {n}: duplicate row for {row.dimension.value} level {row.level}")
        seen.add((row.dimension, row.level))
        if strict and not row.sum_ok:
            raise MalformedRow(f"line {n}: fractions sum to {row.total}, not 1 ± {SUM_TOLERANCE}")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ProportionLine:
    row: ProportionRow
    modal: tuple[str, ...]
    referent_modal: tuple[str, ...] | None
    flagged: bool


def report_proportions(rows: list[ProportionRow]) -> list[ProportionLine]:
    """Modal answer per row, flagging rows whose modal differs from their referent level's."""
    referent = {r.dimension: r.modal() for r in rows if r.level == REFERENT_LEVEL}
    order = list(Dimension)
    out = []
    for r in sorted(rows, key=lambda r: (order.index(r.dimension), r.level)):
        ref = referent.get(r.dimension)
        modal = r.modal()
        flagged = ref is not None and r.level != REFERENT_LEVEL and modal != ref
        out.append(ProportionLine(r, modal, ref, flagged))
    return out


def _modal_text(modal: tuple[str, ...]) -> str:
    if len(modal) == 1:
        return modal[0]
    return "tie(" + "/".join(modal) + ")"


def render_report(lines: list[ProportionLine]) -> str:
    out = ["dimension     level  B      E      O      A      modal     note"]
    for line in lines:
        r = line.row
        notes = []
        if line.flagged:
            notes.append(f"differs from referent ({_modal_text(line.referent_modal)})")
        if not r.sum_ok:
            notes.append(f"sum {r.total} outside 1 ± {SUM_TOLERANCE}")
        values = "  ".join(v.ljust(5) for v in r.raw)
        out.append(
            f"{r.dimension.value:<13} {r.level:<5}  {values}  {_modal_text(line.modal):<8}  {'; '.join(notes)}".rstrip()
        )
    return "\n".join(out) + "\n"
