//! Scenario files, batch runs and machine-readable output for the edge-fog
//! game engine.

pub mod emit;
pub mod error;
pub mod run;
pub mod scenario;
pub mod sweep;
pub mod verify;

pub use emit::{emit, emit_sweep, Format};
pub use error::{CliError, CliResult, EXIT_GUARD, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
pub use run::{execute, run, Payload, RunRecord};
pub use scenario::{Mode, ScenarioSpec};
pub use sweep::{sweep, SweepEntry, SweepParam};
pub use verify::{run_preset, VerifyReport};
