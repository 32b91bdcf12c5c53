import csv
import math
from pathlib import Path

import pytest

import bband_sim

MINILAND = Path(__file__).resolve().parents[2] / "data" / "miniland"


@pytest.fixture(scope="module")
def bundle():
    b = bband_sim.load_bundle(MINILAND, MINILAND / "config.json")
    b.trials = 1000
    return b


def test_closed_forms():
    assert math.isclose(bband_sim.busy_hour_rate_mbps(30), 1 / 3, rel_tol=1e-12)
    assert abs(bband_sim.noise_floor_dbm(10e6) - -102.48) < 0.05
    assert abs(bband_sim.path_loss_db(0.5, 3500) - 97.30) < 0.01
    assert bband_sim.annual_energy_kwh(10) > 21812.4


def test_bundle_contents(bundle):
    assert bundle.region_count == 24
    assert bundle.countries == ["MLA", "MLB"]
    assert bundle.seed == 42
    assert len(bband_sim.run_keys(bundle)) == 1440
    assert len(bband_sim.run_keys(bundle, "generation=5G,sharing=active|srn")) == 360


def test_single_run_rows(bundle):
    out = bband_sim.run(bundle, "generation=4G,backhaul=wireless,sharing=baseline,policy=baseline,"
                                "energy_strategy=baseline,capacity=30,adoption=baseline")
    assert out["failures"] == []
    rows = out["results"]
    assert len(rows) == 20
    assert sum(r["population"] for r in rows) == 1_398_100
    for r in rows:
        assert math.isclose(r["on_grid_kwh"] + r["off_grid_kwh"], r["energy_kwh"], rel_tol=1e-12)
        assert math.isclose(r["private_cost_usd"] + r["government_cost_usd"], r["financial_cost_usd"],
                            rel_tol=1e-9)


def test_run_to_dir_is_reproducible(bundle, tmp_path):
    flt = "capacity=30,adoption=baseline,policy=baseline"
    assert bband_sim.run_to_dir(bundle, tmp_path / "a", flt, 1) == 0
    assert bband_sim.run_to_dir(bundle, tmp_path / "b", flt, 3) == 0
    for name in [*bband_sim.output_files, "capacity_tables.csv"]:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    with open(tmp_path / "a" / "results_decile.csv", newline="") as f:
        assert sum(1 for _ in csv.DictReader(f)) == 32 * 20


def test_errors(tmp_path, bundle):
    with pytest.raises(bband_sim.IoError):
        bband_sim.load_bundle(tmp_path / "missing", MINILAND / "config.json")
    with pytest.raises(bband_sim.ValidationError):
        bband_sim.run_keys(bundle, "generation=6G")
    with pytest.raises(ValueError):
        bband_sim.busy_hour_rate_mbps(-1)
