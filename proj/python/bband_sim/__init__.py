"""Mobile broadband cost, energy and emissions model."""

from ._bband import (
    Bundle,
    IoError,
    ValidationError,
    annual_energy_kwh,
    busy_hour_rate_mbps,
    load_bundle,
    noise_floor_dbm,
    output_files,
    path_loss_db,
    run,
    run_keys,
    run_to_dir,
)

__all__ = [
    "Bundle",
    "IoError",
    "ValidationError",
    "annual_energy_kwh",
    "busy_hour_rate_mbps",
    "load_bundle",
    "noise_floor_dbm",
    "output_files",
    "path_loss_db",
    "run",
    "run_keys",
    "run_to_dir",
]
