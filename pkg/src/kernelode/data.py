"""File formats: time-series, epidemic and hare-lynx CSVs, model files.

Time-series CSV::

    t,<name1>,...,<named>
    0.0,1.5,...

Epidemic CSV (tidy, one row per day)::

    date,confirmed,recovered,deaths
    2020-03-01,100,30,10

Hare-lynx CSV::

    year,hare,lynx

Model files are a single JSON object with exactly the keys in
``MODEL_KEYS``; see :func:`save_model`.
"""

import csv
import datetime
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import StandardScaler, TimeSeries, validate_timeseries
from .exceptions import (
    BadCount,
    FormatVersionMismatch,
    NegativeCompartment,
    NonMonotonicTime,
    ParseError,
    PopulationTooSmall,
)
from .regression import KernelModel

__all__ = [
    "EpidemicRecord",
    "load_timeseries_csv",
    "load_harelynx_csv",
    "load_epidemic_csv",
    "transform_covid",
    "subsample_nonuniform",
    "write_timeseries",
    "write_trajectory",
    "write_portrait",
    "write_records",
    "save_model",
    "load_model",
]

FORMAT_VERSION = 1
MODEL_KEYS = frozenset(
    {"format_version", "bandwidth", "lambda", "dim", "scaler", "centers", "weights"}
)
FORMATS = ("csv", "json-lines")


@dataclass(frozen=True)
class EpidemicRecord:
    date: datetime.date
    confirmed: int
    recovered: int
    deaths: int


# Reading ---------------------------------------------------------------------
def _rows(path):
    text = Path(path).read_text(encoding="utf-8")
    rows = [row for row in csv.reader(io.StringIO(text, newline="")) if row]
    if not rows:
        raise ParseError(f"{path}: empty file")
    return [[cell.strip() for cell in row] for row in rows]


def _real(token, path, line, col):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{path}:{line}: column {col!r}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"{path}:{line}: column {col!r}: non-finite value {token!r}")
    return value


def _table(path, expected=None, first="t"):
    rows = _rows(path)
    header = rows[0]
    if expected is not None and header != list(expected):
        raise ParseError(f"{path}:1: header must be {','.join(expected)!r}, got {','.join(header)!r}")
    if header[0] != first or len(header) < 2:
        raise ParseError(f"{path}:1: header must start with {first!r} and name at least one state")
    data = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"{path}:{line}: expected {len(header)} fields, got {len(row)}")
        data.append([_real(tok, path, line, col) for tok, col in zip(row, header)])
    arr = np.array(data, dtype=float).reshape(-1, len(header))
    return header, arr


def load_timeseries_csv(path):
    """Read and validate a ``t,<names>`` CSV."""
    header, arr = _table(path)
    return validate_timeseries(TimeSeries(arr[:, 0], arr[:, 1:], names=header[1:]))


def load_harelynx_csv(path):
    """Read annual ``year,hare,lynx`` counts as a 2-d series in years."""
    header, arr = _table(path, expected=("year", "hare", "lynx"), first="year")
    return validate_timeseries(TimeSeries(arr[:, 0], arr[:, 1:], names=header[1:]))


def load_epidemic_csv(path):
    rows = _rows(path)
    expected = ["date", "confirmed", "recovered", "deaths"]
    if rows[0] != expected:
        raise ParseError(f"{path}:1: header must be {','.join(expected)!r}")
    records = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise ParseError(f"{path}:{line}: expected 4 fields, got {len(row)}")
        try:
            day = datetime.date.fromisoformat(row[0])
        except ValueError:
            raise ParseError(f"{path}:{line}: bad ISO-8601 date {row[0]!r}") from None
        counts = []
        for tok, col in zip(row[1:], expected[1:]):
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(f"{path}:{line}: column {col!r}: not an integer: {tok!r}") from None
            if value < 0:
                raise ParseError(f"{path}:{line}: column {col!r}: negative count {value}")
            counts.append(value)
        if records and day <= records[-1].date:
            raise NonMonotonicTime(f"{path}:{line}: date {day} does not follow {records[-1].date}")
        records.append(EpidemicRecord(day, *counts))
    return records


def transform_covid(records, population):
    """Turn cumulative case counts into an S, I, R series.

    ``S = Np - confirmed``, ``I = confirmed - recovered - deaths`` and
    ``R = recovered + deaths``, so every row sums to ``Np`` exactly. Time
    is days since the first record.
    """
    if isinstance(population, bool) or not isinstance(population, int) or population <= 0:
        raise PopulationTooSmall(f"population must be a positive integer, got {population!r}")
    records = list(records)
    if not records:
        raise BadCount("no epidemic records")
    rows = []
    for i, rec in enumerate(records):
        if i and rec.date <= records[i - 1].date:
            raise NonMonotonicTime(f"record {i}: date {rec.date} does not follow {records[i - 1].date}")
        if rec.confirmed > population:
            raise PopulationTooSmall(
                f"record {i} ({rec.date}): confirmed={rec.confirmed} exceeds population {population}"
            )
        infected = rec.confirmed - rec.recovered - rec.deaths
        if infected < 0:
            raise NegativeCompartment(
                f"record {i} ({rec.date}): confirmed - recovered - deaths = {infected} < 0"
            )
        rows.append((population - rec.confirmed, infected, rec.recovered + rec.deaths))
    days = [(rec.date - records[0].date).days for rec in records]
    return TimeSeries(np.array(days, dtype=float), np.array(rows, dtype=float), names=("S", "I", "R"))


def subsample_nonuniform(ts, n, seed):
    """Keep ``n`` random samples of ``ts``, always including the first.

    The other ``n - 1`` indices are drawn uniformly without replacement;
    the result keeps time order and depends only on ``(ts, n, seed)``.
    """
    N = len(ts)
    if not 2 <= n <= N:
        raise BadCount(f"subsample size must be in [2, {N}], got {n}")
    rng = np.random.default_rng(seed)
    rest = rng.choice(N - 1, size=n - 1, replace=False) + 1
    idx = np.concatenate([[0], np.sort(rest)])
    return TimeSeries(ts.times[idx], ts.states[idx], names=ts.names)


# Writing ---------------------------------------------------------------------
def _num(x):
    # repr round-trips every float exactly.
    return repr(float(x))


def write_records(path, header, rows, fmt="csv"):
    """Write rows as CSV or as one JSON object per line.

    ``path=None`` returns the text instead of writing it.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    buf = io.StringIO(newline="")
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        for row in rows:
            buf.write(json.dumps(dict(zip(header, row))) + "\n")
    text = buf.getvalue()
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None


def _state_rows(times, states, fmt):
    if fmt == "csv":
        return [[_num(t), *map(_num, x)] for t, x in zip(times, states)]
    return [[float(t), *map(float, x)] for t, x in zip(times, states)]


def write_timeseries(ts, path, fmt="csv"):
    header = ["t", *ts.column_names]
    return write_records(path, header, _state_rows(ts.times, ts.states, fmt), fmt)


def write_trajectory(traj, path, names=None, fmt="csv"):
    names = names or [f"x{k + 1}" for k in range(traj.states.shape[1])]
    header = ["t", *names]
    return write_records(path, header, _state_rows(traj.times, traj.states, fmt), fmt)


def write_portrait(trajectories, path, names=None, fmt="csv"):
    """All portrait trajectories in one table keyed by ``trajectory_id``."""
    dim = trajectories[0].states.shape[1]
    names = names or [f"x{k + 1}" for k in range(dim)]
    header = ["trajectory_id", "diverged", "t", *names]
    rows = []
    for i, traj in enumerate(trajectories):
        for row in _state_rows(traj.times, traj.states, fmt):
            rows.append([i, int(traj.diverged), *row])
    return write_records(path, header, rows, fmt)


# Model files -----------------------------------------------------------------
def save_model(model, path):
    """Write ``model`` as a versioned JSON document.

    Floats are written by ``repr``, which round-trips exactly, so a
    reloaded model evaluates bit-for-bit identically.
    """
    doc = {
        "format_version": FORMAT_VERSION,
        "bandwidth": model.bandwidth,
        "lambda": model.ridge,
        "dim": model.dim,
        "scaler": {"means": model.scaler.means.tolist(), "stds": model.scaler.stds.tolist()},
        "centers": model.centers.tolist(),
        "weights": model.weights.tolist(),
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


def load_model(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not a model file: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: model file must hold a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"{path}: format_version {doc.get('format_version')!r}, expected {FORMAT_VERSION}"
        )
    keys = set(doc)
    if keys != MODEL_KEYS:
        missing, unknown = sorted(MODEL_KEYS - keys), sorted(keys - MODEL_KEYS)
        raise ParseError(f"{path}: missing fields {missing}, unknown fields {unknown}")
    scaler = doc["scaler"]
    if not isinstance(scaler, dict) or set(scaler) != {"means", "stds"}:
        raise ParseError(f"{path}: scaler must have exactly 'means' and 'stds'")
    try:
        model = KernelModel(
            bandwidth=doc["bandwidth"],
            ridge=doc["lambda"],
            centers=np.array(doc["centers"], dtype=float),
            weights=np.array(doc["weights"], dtype=float),
            scaler=StandardScaler(scaler["means"], scaler["stds"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: invalid model contents: {exc}") from None
    if model.dim != doc["dim"]:
        raise ParseError(f"{path}: dim={doc['dim']!r} but centers have dimension {model.dim}")
    return model
