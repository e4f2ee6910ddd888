"""Campaign and fits CSV schemas shared by the CLI, the fitter, and plotters.

Campaign CSV: optional leading '#' metadata lines, then a fixed header row,
then one row per campaign cell.  The column set and order are stable;
downstream plotting scripts rely on them and fail loudly on mismatch.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Union

from .errors import CsvSchemaError
from .protocol import CampaignRecord

CAMPAIGN_COLUMNS = [
    "code_id",
    "n_qubits",
    "k",
    "d",
    "p_phys",
    "p_mask",
    "mask_model",
    "schedule",
    "tau",
    "trials",
    "failures",
    "p_log",
    "stderr",
    "base_seed",
]

FITS_COLUMNS = [
    "row_type",
    "code_id",
    "d",
    "p_phys",
    "p_mask",
    "mask_model",
    "schedule",
    "eps_L",
    "eps_stderr",
    "lambda",
    "C",
    "lambda_stderr",
    "C_stderr",
    "n_points",
    "n_excluded_zero",
    "n_excluded_one",
]

MISSING = "-"

PathLike = Union[str, Path]


def _fmt(value) -> str:
    if value is None:
        return MISSING
    if isinstance(value, float):
        return repr(value)
    return str(value)


def campaign_row(rec: CampaignRecord) -> list[str]:
    return [
        rec.code_id,
        str(rec.n_qubits),
        str(rec.k),
        _fmt(rec.d),
        _fmt(rec.p_phys),
        _fmt(rec.p_mask),
        rec.mask_model,
        rec.schedule,
        str(rec.tau),
        str(rec.trials),
        str(rec.failures),
        _fmt(rec.p_log),
        _fmt(rec.stderr),
        str(rec.base_seed),
    ]


def write_campaign_csv(
    dest: PathLike,
    records: Iterable[CampaignRecord],
    metadata: dict[str, str] | None = None,
    append: bool = False,
) -> None:
    path = Path(dest)
    new_file = not (append and path.exists())
    with open(path, "a" if append else "w", newline="") as f:
        if metadata:
            for key in sorted(metadata):
                f.write(f"# {key}={metadata[key]}\n")
        writer = csv.writer(f)
        if new_file:
            writer.writerow(CAMPAIGN_COLUMNS)
        for rec in records:
            writer.writerow(campaign_row(rec))


def _parse_value(column: str, text: str, line_no: int):
    if text == MISSING:
        return None
    try:
        if column in ("n_qubits", "k", "d", "tau", "trials", "failures", "base_seed", "n_points",
                      "n_excluded_zero", "n_excluded_one"):
            return int(text)
        if column in ("p_phys", "p_mask", "p_log", "stderr", "eps_L", "eps_stderr",
                      "lambda", "C", "lambda_stderr", "C_stderr"):
            return float(text)
    except ValueError as exc:
        raise CsvSchemaError(f"line {line_no}: bad value {text!r} for column {column}") from exc
    return text


def _read_schema_csv(src: PathLike, columns: list[str]) -> list[dict]:
    rows: list[dict] = []
    with open(src) as f:
        header = None
        for line_no, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = next(csv.reader([line]))
            if header is None:
                if fields != columns:
                    raise CsvSchemaError(
                        f"line {line_no}: header {fields!r} does not match expected columns {columns!r}"
                    )
                header = fields
                continue
            if len(fields) != len(columns):
                raise CsvSchemaError(
                    f"line {line_no}: expected {len(columns)} fields, got {len(fields)}"
                )
            rows.append({c: _parse_value(c, v, line_no) for c, v in zip(columns, fields)})
    if header is None:
        raise CsvSchemaError("no header row found")
    return rows


def read_campaign_csv(src: PathLike) -> list[dict]:
    return _read_schema_csv(src, CAMPAIGN_COLUMNS)


def read_fits_csv(src: PathLike) -> list[dict]:
    return _read_schema_csv(src, FITS_COLUMNS)


def write_fits_csv(dest: PathLike, rows: Iterable[dict]) -> None:
    with open(dest, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(FITS_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in FITS_COLUMNS])
