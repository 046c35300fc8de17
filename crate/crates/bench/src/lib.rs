//! Grid sweeps, timing, CSV / JSON output and the acceptance suite for the
//! sphconv evaluators.

pub mod grid;
pub mod presets;
pub mod record;
pub mod verify;

pub use grid::{
    run_grid, timing_summary, AlphaGrid, GridSpec, MonomialPrecision, Reference, Timing, TimingRow,
};
pub use presets::Preset;
pub use record::{from_json, read_csv, to_json, write_csv, BenchRecord, Outcome, CSV_HEADER};
pub use verify::{run_check, run_suite, CheckOutcome, SuiteOptions, CHECK_IDS};
