"""Walk through profiling the bundled payments dataset, column by column.

Run from the repository root:

    python3 demos/profile_payments.py
"""

import json
from pathlib import Path

from datalabel.ingest import IngestOptions, infer_table_kinds, kinds_from_spec, parse_csv
from datalabel.stats import profile_dataset

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"


def main():
    # ZIP codes are digits, so without an override they would be binned
    # with the numeric columns; the override file pins them to text.
    overrides = kinds_from_spec(
        json.loads((FIXTURES / "overrides.json").read_text())
    )
    table = parse_csv(
        FIXTURES / "docs_payments.csv", IngestOptions(type_overrides=overrides)
    )
    print(f"{table.source_name}: {table.row_count} rows, {len(table.columns)} columns")
    print(f"missing cells: {table.missing_cells_total()}")
    print()

    kinds = infer_table_kinds(table, overrides)
    for name in table.columns:
        kind = kinds[name]
        print(f"  {name:<36} {kind.stratum}/{kind.subtype} ({kind.origin})")
    print()

    profile = profile_dataset(table, kinds)

    print("categorical columns (most / least frequent):")
    for prof in profile.ordinal + profile.nominal:
        print(
            f"  {prof.name:<36} {prof.most_frequent.display:<24}"
            f" {prof.least_frequent.display:<20} missing {prof.missing_pct}"
        )
    print()

    print("numeric columns:")
    for prof in profile.continuous + profile.discrete:
        sd = "-" if prof.standard_deviation is None else f"{prof.standard_deviation:.2f}"
        print(
            f"  {prof.name:<36} min {prof.min:<10.2f} median {prof.median:<10.2f}"
            f" max {prof.max:<12.2f} mean {prof.mean:<10.2f} sd {sd}"
        )
    print()
    print(f"dataset missing fraction: {profile.dataset_missing_fraction:.4f}")


if __name__ == "__main__":
    main()
