"""Acceptance gate: one test per release criterion, tolerances stated inline.

Each test is self-contained and checks the library the way a release
review would: computed numbers against independent oracles, display
strings against the exact format contract, and the CLI pipeline against
byte-level determinism. A failure here means the public contract broke,
not that an implementation detail moved.
"""

from __future__ import annotations

import json
import math
import random
import time
from copy import deepcopy
from fractions import Fraction
from pathlib import Path

import pytest

from datalabel.ingest import ColumnKind, infer_table_kinds, parse_csv
from datalabel.groundtruth import (
    aggregate_by_key,
    build_reports,
    correlate,
    ground_truth_from_table,
    normalize_key,
)
from datalabel.maker import metadata_payload
from datalabel.pairs import pearson
from datalabel.posterior import point_estimates, posterior_from_counts, sample_synthetic
from datalabel.schema import deserialize, serialize
from datalabel.stats import profile_categorical, profile_dataset
from datalabel.errors import DataLabelError

from conftest import FIXTURES
from helpers import oracle_percent, oracle_tally, random_csv

NOMINAL = ColumnKind("nominal", "string")
STAMP = "2024-06-01T00:00:00Z"


# ---------------------------------------------------------------------------
# 1. Column statistics against brute-force oracles
# ---------------------------------------------------------------------------


def _oracle_extreme(table: dict[str | None, int], pick_max: bool) -> str:
    # Independent restatement of the extreme rule: the missing pseudo-entry
    # yields to real values on ties; ties among real values are reported,
    # not resolved.
    target = max(table.values()) if pick_max else min(table.values())
    holders = [k for k, n in table.items() if n == target]
    real = [k for k in holders if k is not None]
    if len(real) > 1:
        return "multiple detected"
    if real:
        return f"{real[0]} ({target})"
    return f"missing value ({target})"


def _relative_close(got: float, want: float, tol: float) -> bool:
    return math.isclose(got, want, rel_tol=tol, abs_tol=0.0)


def test_statistics_match_bruteforce_oracles_on_200_random_tables():
    # 200 random tables up to 1,000 rows x 10 columns, mixed strata,
    # 0-30% injected missing. Counts, uniques, frequency displays, and
    # percent strings must match a brute-force tally exactly;
    # mean/median/stddev match a numpy oracle within 1e-9 relative.
    # The whole sweep must finish in under 30 seconds.
    import numpy as np

    rng = random.Random(7011)
    start = time.monotonic()
    categorical_checked = numeric_checked = 0

    for _ in range(200):
        table = parse_csv(random_csv(rng))
        profile = profile_dataset(table, infer_table_kinds(table))

        for prof in profile.ordinal + profile.nominal:
            raw = [cell for cell, _ in table.column_pairs(prof.name)]
            tally, missing = oracle_tally(raw)
            assert prof.count == len(raw)
            assert prof.unique_entries == len(tally)
            assert prof.unique_includes_missing == (None in tally)
            assert prof.most_frequent.display == _oracle_extreme(tally, pick_max=True)
            assert prof.least_frequent.display == _oracle_extreme(tally, pick_max=False)
            assert prof.missing_pct == oracle_percent(missing, len(raw), 2)
            assert prof.missing_fraction == missing / len(raw)
            categorical_checked += 1

        for prof in profile.continuous + profile.discrete:
            raw = [cell for cell, _ in table.column_pairs(prof.name)]
            tally, missing = oracle_tally(raw)
            values = np.sort(
                np.array([float(k) for k, n in tally.items() if k is not None for _ in range(n)])
            )
            assert prof.count == len(raw)
            assert prof.min == values[0]
            assert prof.max == values[-1]
            assert _relative_close(prof.median, float(np.median(values)), 1e-9)
            assert _relative_close(prof.mean, float(values.mean()), 1e-9)
            if len(values) >= 2:
                want_sd = float(values.std(ddof=1))
                assert math.isclose(prof.standard_deviation, want_sd, rel_tol=1e-9, abs_tol=1e-15)
            else:
                assert prof.standard_deviation is None
            assert prof.zeros_pct == oracle_percent(int((values == 0).sum()), len(values), 2)
            assert prof.missing_pct == oracle_percent(missing, len(raw), 2)
            numeric_checked += 1

    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"statistics sweep took {elapsed:.1f}s"
    assert categorical_checked > 100 and numeric_checked > 100


# ---------------------------------------------------------------------------
# 2. Display format contract
# ---------------------------------------------------------------------------


def test_frequency_and_percent_display_format_contract():
    # Engineered column: top value 200x, bottom value 1x, 16/500 = 3.20%
    # missing. Display strings must match the published formats exactly.
    cells = (
        [("Xarelto", False)] * 200
        + [("Humira", False)] * 150
        + [("Lipitor", False)] * 133
        + [("Aciphex", False)]
        + [("NA", True)] * 16
    )
    random.Random(2).shuffle(cells)
    profile = profile_categorical(cells, "product_name", NOMINAL)
    assert profile.count == 500
    assert profile.most_frequent.display == "Xarelto (200)"
    assert profile.least_frequent.display == "Aciphex (1)"
    assert profile.missing_pct == "3.20%"

    tied = profile_categorical(
        [("a", False), ("a", False), ("b", False), ("b", False)], "c", NOMINAL
    )
    assert tied.most_frequent.display == "multiple detected"
    assert tied.least_frequent.display == "multiple detected"

    # Dataset-level missing renders one decimal: 468 of 9,000 cells -> 5.2%.
    header = ",".join(f"c{i}" for i in range(10))
    rows = []
    for r in range(900):
        first = "NA" if r < 468 else "x"
        rows.append(",".join([first] + ["y"] * 9))
    table = parse_csv(("\n".join([header] + rows) + "\n").encode())
    assert table.missing_cells_total() == 468
    assert metadata_payload(table)["missing_pct"] == "5.2%"


# ---------------------------------------------------------------------------
# 3. Pearson correlation
# ---------------------------------------------------------------------------


def _textbook_pearson(x: list[float], y: list[float]) -> float | None:
    # Raw-moment textbook formula in exact rational arithmetic; floats only
    # at the final division. Deliberately not the mean-centered algorithm
    # the library uses.
    fx = [Fraction(v) for v in x]
    fy = [Fraction(v) for v in y]
    n = len(fx)
    sx, sy = sum(fx), sum(fy)
    num = n * sum(a * b for a, b in zip(fx, fy)) - sx * sy
    den_x = n * sum(a * a for a in fx) - sx * sx
    den_y = n * sum(b * b for b in fy) - sy * sy
    if den_x == 0 or den_y == 0:
        return None
    return float(num) / math.sqrt(float(den_x) * float(den_y))


def test_pearson_matches_textbook_oracle_and_exactness_contract():
    rng = random.Random(93)

    # 1,000 random vectors, n <= 100: agree with the exact-arithmetic
    # textbook formula within 1e-12.
    for _ in range(1_000):
        n = rng.randint(3, 100)
        x = [rng.uniform(-100.0, 100.0) for _ in range(n)]
        y = [rng.uniform(-100.0, 100.0) for _ in range(n)]
        got = pearson(x, y)
        want = _textbook_pearson(x, y)
        assert got is not None and want is not None
        assert abs(got - want) <= 1e-12

    # Exactly linear / anti-linear integer inputs return exactly +-1.0.
    # Values are mirrored around an integer center so every intermediate
    # float operation is exact.
    for _ in range(50):
        k = rng.randint(2, 49)
        center = rng.randint(-50, 50)
        half = [rng.randint(-100, 100) for _ in range(k)]
        x = [float(v) for v in half]
        x += [float(2 * center - v) for v in half]
        x += [float(center - 1), float(center + 1)]  # guarantees spread
        a = rng.choice([1, 2, 3, 5, 10])
        b = rng.randint(-100, 100)
        assert pearson(x, [a * v + b for v in x]) == 1.0
        assert pearson(x, [-a * v + b for v in x]) == -1.0

    # Zero variance on either side: undefined, not zero.
    assert pearson([4.0, 4.0, 4.0], [1.0, 2.0, 3.0]) is None
    assert pearson([1.0, 2.0, 3.0], [4.0, 4.0, 4.0]) is None

    # Affine equivariance to 1e-12: positive rescaling and shifts leave r
    # unchanged; the transforms are exact in floating point.
    for _ in range(200):
        n = rng.randint(3, 60)
        x = [float(rng.randint(-1000, 1000)) for _ in range(n)]
        y = [float(rng.randint(-1000, 1000)) for _ in range(n)]
        base = pearson(x, y)
        if base is None:
            continue
        a = rng.choice([0.5, 2.0, 4.0])
        c = rng.choice([0.25, 1.0, 8.0])
        b, d = rng.randint(-100, 100), rng.randint(-100, 100)
        moved = pearson([a * v + b for v in x], [c * w + d for w in y])
        assert abs(moved - base) <= 1e-12


# ---------------------------------------------------------------------------
# 4. Dirichlet posterior backend
# ---------------------------------------------------------------------------


def test_dirichlet_point_estimates_intervals_and_sampling_contract():
    rng = random.Random(44)

    # Closed form (n_k + a) / (N + K*a) within 1e-12 on 100 random count
    # vectors; each estimate vector sums to 1 within 1e-12.
    for _ in range(100):
        k = rng.randint(2, 12)
        counts = [rng.randint(0, 500) for _ in range(k)]
        alpha = rng.choice([0.5, 1.0, 2.0, 5.0])
        estimates = point_estimates(counts, alpha)
        frac_alpha = Fraction(alpha)
        total = sum(counts) + k * frac_alpha
        for got, n in zip(estimates, counts):
            assert abs(got - float((n + frac_alpha) / total)) <= 1e-12
        assert abs(math.fsum(estimates) - 1.0) <= 1e-12

    # Two categories, alpha=1, no data: the posterior marginal is uniform
    # on [0, 1], so the 90% interval sits at [0.05, 0.95] +- 0.02 with
    # 10,000 Monte Carlo samples.
    flat = posterior_from_counts(
        target_column="t",
        target_value="v",
        condition_column="c",
        support=("a", "b"),
        counts=(0, 0),
        alpha=1.0,
        level=0.90,
        seed=2024,
        mc_samples=10_000,
    )
    lo, hi = flat.intervals[0]
    assert abs(lo - 0.05) <= 0.02
    assert abs(hi - 0.95) <= 0.02

    # Identical seeds: bit-identical intervals and synthetic sequences.
    rerun = posterior_from_counts(
        target_column="t",
        target_value="v",
        condition_column="c",
        support=("a", "b"),
        counts=(0, 0),
        alpha=1.0,
        level=0.90,
        seed=2024,
        mc_samples=10_000,
    )
    assert rerun.intervals == flat.intervals
    assert sample_synthetic(flat, 500, seed=7) == sample_synthetic(flat, 500, seed=7)

    # Predictive (2/3, 1/3): 100,000 draws land within +-0.01 of the target.
    predictive = posterior_from_counts(
        target_column="t",
        target_value="v",
        condition_column="c",
        support=("a", "b"),
        counts=(1, 0),
        alpha=1.0,
        seed=5,
    )
    assert predictive.point_estimates == (2 / 3, 1 / 3)
    draws = sample_synthetic(predictive, 100_000, seed=11)
    assert abs(draws.count("a") / 100_000 - 2 / 3) <= 0.01


# ---------------------------------------------------------------------------
# 5. Ground-truth correlation
# ---------------------------------------------------------------------------

_GT_DATASET = b"""zip,amount
2138,10
02138,20
94110,20
60601,4
73301,7
"""

# Joined keys sort to [02138, 60601, 94110] with sums x = [30, 4, 20].
# linear_up = 2x + 1 and linear_down = -3x are exact lines; orthogonal is
# solved so fsum of dx*dy is exactly zero; flat has no variance.
_GT_REFERENCE = b"""zip,linear_up,linear_down,orthogonal,flat,population
02138,61,-90,-4,5,1000
94110,41,-60,17,5,2000
60601,9,-12,-1,5,500
33109,999,999,999,5,100
"""


def test_ground_truth_join_correlation_and_partition_contract():
    dataset = parse_csv(_GT_DATASET)
    reference = ground_truth_from_table(parse_csv(_GT_REFERENCE))

    aggregates = aggregate_by_key(dataset, "zip", "amount", "sum")
    # Zero padding: the four-digit "2138" lands on the "02138" key.
    assert normalize_key("2138") == "02138"
    assert aggregates.values["02138"] == 30.0

    report = correlate(aggregates, reference)
    by_name = {entry.demographic: entry.r for entry in report.entries}
    assert by_name["linear_up"] == 1.0
    assert by_name["linear_down"] == -1.0
    assert by_name["orthogonal"] == 0.0
    assert by_name["flat"] is None

    # Partition is exhaustive: r > 0 in positive, r < 0 in negative,
    # zero or undefined r in neither.
    positive = {e.demographic for e in report.positive}
    negative = {e.demographic for e in report.negative}
    assert positive == {name for name, r in by_name.items() if r is not None and r > 0}
    assert negative == {name for name, r in by_name.items() if r is not None and r < 0}
    assert not positive & negative

    # A join of fewer than three keys refuses to correlate.
    small = parse_csv(b"zip,amount\n02138,1\n94110,2\n33109,3\n")
    with pytest.raises(DataLabelError):
        build_reports(
            parse_csv(b"zip,amount\n02138,1\n94110,2\n"),
            reference,
            "zip",
            "amount",
            ("sum",),
        )
    # Sanity: three joined keys do work.
    assert build_reports(small, reference, "zip", "amount", ("sum",))[0].joined_keys == 3


# ---------------------------------------------------------------------------
# 6. Round-trip and validation across CLI-built labels
# ---------------------------------------------------------------------------


def _violation_rules(run_cli, tmp_path: Path, doc: dict) -> list[str]:
    target = tmp_path / "corrupted.json"
    target.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run_cli("validate", str(target))
    assert code == 1
    return [line.split("\t")[1] for line in out.splitlines()]


def test_cli_labels_validate_and_roundtrip_and_corruptions_are_flagged(run_cli, tmp_path):
    dataset = str(FIXTURES / "docs_payments.csv")
    base = ["--overrides", str(FIXTURES / "overrides.json"), "--timestamp", STAMP]
    meta = ["--meta", str(FIXTURES / "meta.json")]
    configurations = [
        ["make", dataset, *meta, *base],
        ["make", dataset, "--modules", "metadata,statistics", *meta, *base],
        [
            "make", dataset, "--modules", "metadata,provenance,variables,pair_plots",
            *meta, *base, "--pair-limit", "12",
        ],
        [
            "make", dataset, "--modules", "metadata,probabilistic_model", *meta, *base,
            "--target", "product_name", "--target-value", "Eliquis",
            "--condition", "recipient_state", "--seed", "9", "--mc-samples", "2000",
        ],
        [
            "make", dataset, "--modules", "metadata,ground_truth_correlations",
            *meta, *base, "--gt", str(FIXTURES / "census_zip.csv"),
            "--dataset-key", "recipient_zip",
            "--value-column", "total_amount_of_payment_usdollars",
            "--aggregate", "mean", "--aggregate", "per_capita",
        ],
    ]
    for i, argv in enumerate(configurations):
        out_path = tmp_path / f"label_{i}.json"
        code, _, err = run_cli(*argv, "--out", str(out_path))
        assert code == 0, err
        data = out_path.read_bytes()
        vcode, vout, _ = run_cli("validate", str(out_path))
        assert vcode == 0 and vout == ""
        assert serialize(deserialize(data)) == data

    golden = json.loads((FIXTURES / "golden_label.json").read_text(encoding="utf-8"))

    no_metadata = deepcopy(golden)
    del no_metadata["modules"]["metadata"]
    assert _violation_rules(run_cli, tmp_path, no_metadata) == ["metadata.required"]

    bad_sum = deepcopy(golden)
    estimates = bad_sum["modules"]["probabilistic_model"]["entries"][0]["point_estimates"]
    estimates[0] = round(estimates[0] + 0.01, 6)  # vector now sums to 1.01
    assert _violation_rules(run_cli, tmp_path, bad_sum) == ["probability.sum"]

    bad_r = deepcopy(golden)
    cell = next(
        pair for pair in bad_r["modules"]["pair_plots"]["pairs"]
        if pair["kind"] == "cont_cont"
    )
    cell["payload"]["pearson_r"] = 1.5
    assert _violation_rules(run_cli, tmp_path, bad_r) == ["pearson.range"]


# ---------------------------------------------------------------------------
# 7. End-to-end determinism on the bundled fixture
# ---------------------------------------------------------------------------


def test_make_twice_on_bundled_fixture_is_byte_identical(run_cli, tmp_path):
    argv = [
        "make", str(FIXTURES / "docs_payments.csv"),
        "--modules",
        "metadata,provenance,variables,statistics,pair_plots,"
        "probabilistic_model,ground_truth_correlations",
        "--meta", str(FIXTURES / "meta.json"),
        "--overrides", str(FIXTURES / "overrides.json"),
        "--gt", str(FIXTURES / "census_zip.csv"),
        "--dataset-key", "recipient_zip",
        "--value-column", "total_amount_of_payment_usdollars",
        "--aggregate", "sum", "--aggregate", "mean",
        "--aggregate", "count", "--aggregate", "per_capita",
        "--target", "product_name",
        "--target-value", "Eliquis", "--target-value", "Xarelto",
        "--condition", "recipient_state",
        "--seed", "42", "--timestamp", STAMP,
    ]
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert run_cli(*argv, "--out", str(first))[0] == 0
    assert run_cli(*argv, "--out", str(second))[0] == 0

    first_bytes = first.read_bytes()
    assert first_bytes == second.read_bytes()
    # The committed golden label was produced by this exact invocation.
    assert first_bytes == (FIXTURES / "golden_label.json").read_bytes()
    assert run_cli("validate", str(first))[0] == 0
