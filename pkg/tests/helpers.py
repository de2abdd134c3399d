"""Shared test utilities: random table generation and independent oracles.

The oracles here deliberately avoid the library's own code paths: tallies
are single-pass dict counting over raw cells, numeric statistics go through
numpy on sorted data, percent strings through direct Decimal arithmetic.
"""

from __future__ import annotations

import random
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

MISSING_TOKENS = {"", "NA", "N/A", "null", "NULL", "NaN"}
ASCII_WS = " \t\r\n\f\v"

_WORDS = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "Xarelto", "Eliquis", "Aciphex", "Humira", "Lyrica", "Crestor",
]
_STATES = ["CA", "NY", "TX", "MA", "WA", "FL", "IL", "OH"]


def random_column(rng: random.Random, rows: int) -> list[str]:
    """One random column of raw cell text, mixed strata across calls."""
    flavor = rng.choice(["word", "state", "bool", "int", "float", "year", "date", "id"])
    if flavor == "word":
        pool = rng.sample(_WORDS, rng.randint(2, 8))
        cells = [rng.choice(pool) for _ in range(rows)]
    elif flavor == "state":
        cells = [rng.choice(_STATES) for _ in range(rows)]
    elif flavor == "bool":
        cells = [rng.choice(["t", "f"]) for _ in range(rows)]
    elif flavor == "int":
        lo = rng.randint(0, 40)
        cells = [str(rng.randint(lo, lo + rng.randint(1, 15))) for _ in range(rows)]
    elif flavor == "float":
        cells = [f"{rng.uniform(0.5, 999.5):.4f}" for _ in range(rows)]
    elif flavor == "year":
        cells = [str(rng.randint(2010, 2020)) for _ in range(rows)]
    elif flavor == "date":
        cells = [
            f"{rng.randint(2010, 2020)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
            for _ in range(rows)
        ]
    else:
        cells = [str(rng.randint(10_000, 999_999)) for _ in range(rows)]
    missing_rate = rng.uniform(0.0, 0.30)
    tokens = sorted(MISSING_TOKENS)
    return [
        rng.choice(tokens) if rng.random() < missing_rate else cell for cell in cells
    ]


def random_csv(rng: random.Random, max_rows: int = 1000, max_cols: int = 10) -> bytes:
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    header = [f"col_{i}" for i in range(cols)]
    columns = [random_column(rng, rows) for _ in range(cols)]
    lines = [",".join(header)]
    for r in range(rows):
        lines.append(",".join(columns[c][r] for c in range(cols)))
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def oracle_percent(numerator: int, denominator: int, decimals: int) -> str:
    if denominator == 0:
        value = Decimal(0)
    else:
        value = Decimal(numerator) / Decimal(denominator) * 100
    q = Decimal(10) ** -decimals
    return str(value.quantize(q, rounding=ROUND_HALF_UP)) + "%"


def oracle_tally(cells: list[str]) -> tuple[dict[str | None, int], int]:
    """Frequency table over raw values with None for missing; returns (table, missing)."""
    table: dict[str | None, int] = {}
    missing = 0
    for cell in cells:
        if cell.strip(ASCII_WS) in MISSING_TOKENS:
            table[None] = table.get(None, 0) + 1
            missing += 1
        else:
            table[cell] = table.get(cell, 0) + 1
    return table, missing


def oracle_numeric(cells: list[str]) -> dict[str, float | None]:
    values = sorted(
        float(c) for c in cells if c.strip(ASCII_WS) not in MISSING_TOKENS
    )
    arr = np.array(values, dtype=np.float64)
    n = len(values)
    return {
        "min": float(arr[0]),
        "max": float(arr[-1]),
        "median": float(np.median(arr)),
        "mean": float(arr.mean()),
        "standard_deviation": float(arr.std(ddof=1)) if n >= 2 else None,
        "zeros": int((arr == 0).sum()),
        "n": n,
    }


def oracle_pearson(x: list[float], y: list[float]) -> float | None:
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        return None
    return float(np.dot(dx, dy) / np.sqrt(sxx * syy))
