"""CSV ingestion: parse a delimited file into an immutable table and infer column kinds.

Parsing is a single sequential pass over the input. Cells are kept as raw
strings; typed views (numbers, dates) are computed lazily by consumers so
that frequency tables can report the original text verbatim. Cells whose
trimmed value matches a missing token are flagged in a boolean mask with
the raw value retained.

Column classification assigns every column exactly one stratum out of
{ordinal, nominal, continuous, discrete} plus a subtype out of
{number, string, date, boolean}, by deterministic ordered rules:

  1. an explicit override wins;
  2. exactly two distinct values forming a true/false token pair
     (t/f, true/false, upper-case variants, 0/1)   -> nominal(boolean);
  3. >= 95% of values parse as ISO-8601 or MM/DD/YYYY dates -> ordinal(date);
  4. >= 95% parse as numbers:
       any fractional part                          -> continuous(number);
       all integers in [1500, 2500], <= 30 distinct -> ordinal(date) (years);
       <= 20 distinct and max-min <= 1000           -> discrete(number);
       otherwise                                    -> ordinal(number);
  5. anything else                                  -> nominal(string).
"""

from __future__ import annotations

import csv
import io
import re
import warnings
from dataclasses import dataclass, field, replace
from datetime import datetime
from pathlib import Path
from typing import BinaryIO, Mapping, Sequence

from .errors import DataLabelError, ParseError

STRATA = ("ordinal", "nominal", "continuous", "discrete")
SUBTYPES = ("number", "string", "date", "boolean")

DEFAULT_MISSING_TOKENS = frozenset({"", "NA", "N/A", "null", "NULL", "NaN"})
DEFAULT_MAX_ROWS = 100_000

_ASCII_WS = " \t\r\n\f\v"

_TRUE_TOKENS = frozenset({"t", "true", "T", "TRUE", "1"})
_FALSE_TOKENS = frozenset({"f", "false", "F", "FALSE", "0"})

# Strict decimal syntax: no underscores, no inf/nan, no hex.
_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

_DATE_FRACTION = 0.95
_NUMBER_FRACTION = 0.95
_YEAR_RANGE = (1500, 2500)
_YEAR_MAX_DISTINCT = 30
_DISCRETE_MAX_DISTINCT = 20
_DISCRETE_MAX_SPAN = 1000


@dataclass(frozen=True)
class ColumnKind:
    """Inferred stratum and subtype of one column."""

    stratum: str
    subtype: str
    origin: str = "inferred"

    def __post_init__(self) -> None:
        if self.stratum not in STRATA:
            raise ValueError(f"unknown stratum: {self.stratum!r}")
        if self.subtype not in SUBTYPES:
            raise ValueError(f"unknown subtype: {self.subtype!r}")
        if self.origin not in ("inferred", "override"):
            raise ValueError(f"unknown origin: {self.origin!r}")
        if self.stratum in ("continuous", "discrete") and self.subtype != "number":
            raise ValueError(f"{self.stratum} columns must have subtype 'number'")
        if self.subtype == "boolean" and self.stratum != "nominal":
            raise ValueError("boolean columns must be nominal")

    @property
    def is_numeric(self) -> bool:
        return self.stratum in ("continuous", "discrete")

    @property
    def is_categorical(self) -> bool:
        return self.stratum in ("ordinal", "nominal")


@dataclass(frozen=True)
class IngestOptions:
    """Knobs for :func:`parse_csv` and :func:`infer_table_kinds`."""

    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS
    delimiter: str = ","
    type_overrides: Mapping[str, ColumnKind] = field(default_factory=dict)
    max_rows: int = DEFAULT_MAX_ROWS

    def __post_init__(self) -> None:
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")
        if self.delimiter in ('"', "\n", "\r"):
            raise ValueError("delimiter must not be a quote or newline character")


@dataclass(frozen=True)
class DataTable:
    """Immutable parsed snapshot of a tabular dataset.

    ``cells`` is row-major raw text; ``missing_mask`` has identical
    dimensions and marks cells whose trimmed value matched a missing token.
    Row numbers in error messages count the header as row 1.
    """

    columns: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]
    missing_mask: tuple[tuple[bool, ...], ...]
    row_count: int
    source_name: str

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise DataLabelError(
                f"unknown column {name!r}; available: {', '.join(self.columns)}"
            ) from None

    def column(self, name: str) -> tuple[str, ...]:
        idx = self.column_index(name)
        return tuple(row[idx] for row in self.cells)

    def column_mask(self, name: str) -> tuple[bool, ...]:
        idx = self.column_index(name)
        return tuple(row[idx] for row in self.missing_mask)

    def column_pairs(self, name: str) -> list[tuple[str, bool]]:
        """(raw value, missing flag) pairs down one column."""
        idx = self.column_index(name)
        return [(row[idx], mask[idx]) for row, mask in zip(self.cells, self.missing_mask)]

    def missing_cells_total(self) -> int:
        return sum(sum(row) for row in self.missing_mask)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_csv(
    source: str | Path | bytes | BinaryIO,
    options: IngestOptions | None = None,
    *,
    source_name: str | None = None,
) -> DataTable:
    """Parse CSV bytes into a :class:`DataTable`.

    The first record is the header. RFC-4180 quoting is honored: quoted
    fields may contain the delimiter and newlines, and doubled quotes
    unescape. Input must be UTF-8; a leading BOM is stripped.

    Raises:
        ParseError: empty input, ragged rows, duplicate header names,
            non-UTF-8 bytes, or more than ``options.max_rows`` data rows.
    """
    opts = options or IngestOptions()
    if isinstance(source, (str, Path)):
        path = Path(source)
        name = source_name or path.name
        with path.open("rb") as handle:
            return _parse_stream(handle, opts, name)
    if isinstance(source, bytes):
        return _parse_stream(io.BytesIO(source), opts, source_name or "<bytes>")
    return _parse_stream(source, opts, source_name or getattr(source, "name", "<stream>"))


def _parse_stream(stream: BinaryIO, opts: IngestOptions, name: str) -> DataTable:
    # utf-8-sig strips a BOM when present and is plain UTF-8 otherwise.
    text = io.TextIOWrapper(stream, encoding="utf-8-sig", newline="")
    reader = csv.reader(text, delimiter=opts.delimiter, quotechar='"')

    try:
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{name}: empty input, expected a header row") from None

        columns = tuple(cell.strip(_ASCII_WS) for cell in header)
        seen: set[str] = set()
        for col in columns:
            if col in seen:
                raise ParseError(f"{name}: duplicate header name {col!r}")
            seen.add(col)

        rows: list[tuple[str, ...]] = []
        mask: list[tuple[bool, ...]] = []
        for record in reader:
            if not record:  # blank line, not a row
                continue
            if len(record) != len(columns):
                raise ParseError(
                    f"{name}: row {reader.line_num}: expected {len(columns)} cells, "
                    f"found {len(record)}"
                )
            if len(rows) >= opts.max_rows:
                raise ParseError(
                    f"{name}: more than {opts.max_rows} data rows; "
                    "sample the dataset before building a label"
                )
            rows.append(tuple(record))
            mask.append(
                tuple(cell.strip(_ASCII_WS) in opts.missing_tokens for cell in record)
            )
    except UnicodeDecodeError as exc:
        raise ParseError(f"{name}: input is not valid UTF-8 ({exc})") from exc

    return DataTable(
        columns=columns,
        cells=tuple(rows),
        missing_mask=tuple(mask),
        row_count=len(rows),
        source_name=name,
    )


def write_csv(table: DataTable, delimiter: str = ",") -> bytes:
    """Serialize a table back to CSV with RFC-4180 re-quoting.

    parse -> write -> parse is an identity on cell contents and mask.
    Records end with CRLF; the writer only quotes characters that appear
    in its line terminator, so CRLF is what makes bare \\r in cells safe.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=delimiter, lineterminator="\r\n")
    writer.writerow(table.columns)
    writer.writerows(table.cells)
    return buffer.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# Typed views
# ---------------------------------------------------------------------------


def parse_number(cell: str) -> float | None:
    """Parse one cell as a finite number, or None if it does not qualify."""
    trimmed = cell.strip(_ASCII_WS)
    if not _NUMBER_RE.match(trimmed):
        return None
    return float(trimmed)


def column_numbers(table: DataTable, name: str) -> list[float]:
    """Non-missing values of a column parsed as numbers, in row order.

    Raises:
        DataLabelError: when a non-missing cell does not parse; the message
            names the column and the 1-based row (header = row 1).
    """
    values: list[float] = []
    for i, (raw, missing) in enumerate(table.column_pairs(name)):
        if missing:
            continue
        parsed = parse_number(raw)
        if parsed is None:
            raise DataLabelError(
                f"column {name!r}, row {i + 2}: cell {raw!r} is not a number"
            )
        values.append(parsed)
    return values


def _parses_as_date(cell: str) -> bool:
    trimmed = cell.strip(_ASCII_WS)
    if not trimmed:
        return False
    candidate = trimmed[:-1] + "+00:00" if trimmed.endswith("Z") else trimmed
    try:
        datetime.fromisoformat(candidate)
        return True
    except ValueError:
        pass
    try:
        datetime.strptime(trimmed, "%m/%d/%Y")
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# Kind inference
# ---------------------------------------------------------------------------


def infer_column_kind(
    column: Sequence[tuple[str, bool]],
    name: str,
    overrides: Mapping[str, ColumnKind] | None = None,
) -> ColumnKind:
    """Classify one column by the ordered rules in the module docstring.

    ``column`` is a sequence of (raw value, missing flag) pairs. The result
    is a pure function of (values, name, overrides). A column whose values
    are all missing classifies as nominal(string) and emits a warning.
    """
    if not column:
        raise DataLabelError(f"column {name!r} is empty, nothing to classify")

    if overrides and name in overrides:
        return replace(overrides[name], origin="override")

    values = [raw.strip(_ASCII_WS) for raw, missing in column if not missing]
    if not values:
        warnings.warn(
            f"column {name!r} has no non-missing values; classified as nominal(string)",
            stacklevel=2,
        )
        return ColumnKind("nominal", "string")

    distinct = set(values)
    if len(distinct) == 2:
        first, second = sorted(distinct)
        if (first in _TRUE_TOKENS and second in _FALSE_TOKENS) or (
            first in _FALSE_TOKENS and second in _TRUE_TOKENS
        ):
            return ColumnKind("nominal", "boolean")

    n = len(values)
    if sum(1 for v in values if _parses_as_date(v)) >= _DATE_FRACTION * n:
        return ColumnKind("ordinal", "date")

    numbers = [parse_number(v) for v in values]
    parsed = [x for x in numbers if x is not None]
    if len(parsed) >= _NUMBER_FRACTION * n:
        if any(not x.is_integer() for x in parsed):
            return ColumnKind("continuous", "number")
        distinct_numbers = set(parsed)
        lo, hi = min(parsed), max(parsed)
        if (
            _YEAR_RANGE[0] <= lo
            and hi <= _YEAR_RANGE[1]
            and len(distinct_numbers) <= _YEAR_MAX_DISTINCT
        ):
            return ColumnKind("ordinal", "date")
        if len(distinct_numbers) <= _DISCRETE_MAX_DISTINCT and hi - lo <= _DISCRETE_MAX_SPAN:
            return ColumnKind("discrete", "number")
        return ColumnKind("ordinal", "number")

    return ColumnKind("nominal", "string")


def infer_table_kinds(
    table: DataTable,
    overrides: Mapping[str, ColumnKind] | None = None,
) -> dict[str, ColumnKind]:
    """Classify every column of a table; returns a name -> kind mapping."""
    return {
        name: infer_column_kind(table.column_pairs(name), name, overrides)
        for name in table.columns
    }


def kinds_from_spec(spec: Mapping[str, Mapping[str, str]]) -> dict[str, ColumnKind]:
    """Build a type-override mapping from plain dicts.

    ``spec`` maps column names to ``{"stratum": ..., "subtype": ...}``,
    the shape used by the override JSON file.
    """
    overrides: dict[str, ColumnKind] = {}
    for name, entry in spec.items():
        try:
            overrides[name] = ColumnKind(
                stratum=entry["stratum"], subtype=entry["subtype"], origin="override"
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataLabelError(f"bad type override for column {name!r}: {exc}") from exc
    return overrides
