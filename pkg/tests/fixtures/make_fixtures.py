"""Regenerate the bundled docs-payments fixture deterministically.

Run from the repository root:

    python3 tests/fixtures/make_fixtures.py

Writes docs_payments.csv, census_zip.csv, meta.json, and overrides.json
next to this script. The golden label is produced separately by the CLI
(see golden_label.cmd). Output bytes are a pure function of the seed, so
rerunning must leave the working tree clean.
"""

from __future__ import annotations

import json
import random
from datetime import date, timedelta
from pathlib import Path

HERE = Path(__file__).parent

ROWS = 300

# (product, is_drug flag, sampling weight); weights skew the tally so the
# top and bottom of the frequency table are strict, not tied
PRODUCTS = [
    ("Eliquis", "t", 30),
    ("Xarelto", "t", 24),
    ("Humira", "t", 18),
    ("Lipitor", "t", 14),
    ("Crestor", "t", 10),
    ("Januvia", "t", 8),
    ("Lyrica", "t", 6),
    ("Ozempic", "t", 5),
    ("Jardiance", "t", 4),
    ("Entresto", "t", 3),
    ("Impella", "f", 2),
    ("Watchman", "f", 2),
]

# "2138" is deliberately four digits wide: the join normalizes it to
# "02138". "73301" has no census row, so it stays an unmatched dataset key.
ZIP_STATE = [
    ("2138", "MA"),
    ("02139", "MA"),
    ("10001", "NY"),
    ("19104", "PA"),
    ("30309", "GA"),
    ("60601", "IL"),
    ("73301", "TX"),
    ("77030", "TX"),
    ("90095", "CA"),
    ("94110", "CA"),
    ("98195", "WA"),
    ("98104", "WA"),
]

CENSUS_ONLY_ZIPS = ["33109", "96813"]


def payments_rows(rng: random.Random) -> list[list[str]]:
    products = [p for p, _, _ in PRODUCTS]
    weights = [w for _, _, w in PRODUCTS]
    is_drug = {p: flag for p, flag, _ in PRODUCTS}

    missing_product = set(rng.sample(range(ROWS), 10))
    missing_amount = set(rng.sample(range(ROWS), 8))

    rows = []
    for i in range(ROWS):
        year = rng.choice([2013, 2014, 2015])
        day = date(year, 1, 1) + timedelta(days=rng.randrange(365))
        zip_code, state = rng.choice(ZIP_STATE)
        if i in missing_product:
            product, drug = "", ""
        else:
            product = rng.choices(products, weights=weights)[0]
            drug = is_drug[product]
        amount = "NA" if i in missing_amount else f"{rng.lognormvariate(4.5, 1.2):.2f}"
        payments = rng.choices([1, 2, 3, 4], weights=[70, 15, 10, 5])[0]
        rows.append([
            str(i + 1),
            str(year),
            day.isoformat(),
            product,
            drug,
            state,
            zip_code,
            amount,
            str(payments),
        ])
    return rows


def census_rows(rng: random.Random) -> list[list[str]]:
    keys = [z if len(z) == 5 else z.zfill(5) for z, _ in ZIP_STATE if z != "73301"]
    keys += CENSUS_ONLY_ZIPS
    rows = []
    for key in sorted(keys):
        income = rng.randrange(28, 121) * 1000
        over_65 = f"{rng.uniform(4.0, 22.0):.1f}"
        population = rng.randrange(8_000, 70_000)
        rows.append([key, str(income), over_65, str(population)])
    return rows


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    lines = [",".join(header)] + [",".join(row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    rng = random.Random(20240601)

    write_csv(
        HERE / "docs_payments.csv",
        [
            "record_id",
            "program_year",
            "date_of_payment",
            "product_name",
            "product_is_drug",
            "recipient_state",
            "recipient_zip",
            "total_amount_of_payment_usdollars",
            "number_of_payments",
        ],
        payments_rows(rng),
    )

    write_csv(
        HERE / "census_zip.csv",
        ["zip", "median_income", "pct_over_65", "population"],
        census_rows(rng),
    )

    variable_notes = {
        "record_id": "Sequential payment record identifier.",
        "program_year": "Calendar year the payment was reported under.",
        "date_of_payment": "Date the payment was made (ISO 8601).",
        "product_name": "Marketed name of the product the payment relates to.",
        "product_is_drug": "t when the product is a drug, f for devices.",
        "recipient_state": "Two-letter state of the receiving physician.",
        "recipient_zip": "ZIP code of the receiving physician; kept as text.",
        "total_amount_of_payment_usdollars": "Payment amount in US dollars.",
        "number_of_payments": "Number of payments folded into the record.",
    }
    meta = {
        "metadata": {
            "description": (
                "Synthetic industry-to-physician payment records, one row "
                "per reported payment."
            ),
            "url": "https://example.org/datasets/docs-payments",
            "domain": "healthcare",
            "keywords": ["payments", "physicians", "synthetic"],
            "license": "CC0-1.0",
            "released": "2016-06-30",
            "range": {"from": "2013-01-01", "to": "2015-12-31"},
        },
        "provenance": {
            "source": {
                "name": "Example Health Transparency Project",
                "url": "https://example.org/transparency",
                "email": "data@example.org",
            },
            "author": {
                "name": "Dataset Label Working Group",
                "url": None,
                "email": "labels@example.org",
            },
        },
        "variables": {
            "entries": [
                {"name": name, "description": note}
                for name, note in variable_notes.items()
            ]
        },
        "ground_truth_correlations": {
            "ground_truth": {
                "name": "Synthetic ZIP census extract",
                "url": "https://example.org/census-zip",
            }
        },
    }
    (HERE / "meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")

    # all-digit ZIPs would otherwise classify as numbers
    overrides = {"recipient_zip": {"stratum": "nominal", "subtype": "string"}}
    (HERE / "overrides.json").write_text(
        json.dumps(overrides, indent=2) + "\n", encoding="utf-8"
    )


if __name__ == "__main__":
    main()
