//! Configuration, initial conditions, output files and the experiment drivers.

pub mod check;
pub mod config;
pub mod ic;
pub mod io;
pub mod run;
pub mod sweep;

pub use check::{run_checks, CheckOutcome};
pub use config::{IcKind, RunConfig};
pub use ic::{initial_vorticity, make_initial_condition};
pub use io::{read_diagnostics_csv, read_snapshot, write_snapshot, DiagnosticsRow, Snapshot};
pub use run::{run, RunSummary};
pub use sweep::{fit_power_law, splitting_order_study, sweep_alpha, sweep_nu, PowerLawFit, SplittingStudy, SweepResult};
