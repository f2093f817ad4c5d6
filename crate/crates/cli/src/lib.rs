//! Spec-file front end for the `colorhom` engine.

pub mod commands;
pub mod locate;
pub mod spec;

use std::path::Path;

pub use commands::{run_command, Command, Overrides, Report, RunError};
pub use spec::{parse_spec, ProblemSpec, SpecError};

/// Exit status for a malformed spec or a failed precondition.
pub const EXIT_ERROR: i32 = 2;

/// Reads, parses and runs one command. Returns the exit code and the text for
/// stdout, or the exit code and an error message for stderr.
pub fn execute(
    cmd: Command,
    path: &Path,
    overrides: &Overrides,
    pretty: bool,
) -> Result<(i32, String), (i32, String)> {
    let fail = |msg: String| (EXIT_ERROR, msg);
    let text =
        std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    let spec = parse_spec(&text).map_err(|e| fail(format!("{}:{e}", path.display())))?;
    let report = run_command(cmd, &spec, overrides).map_err(|e| fail(e.to_string()))?;
    let out = if pretty {
        report.to_string()
    } else {
        report.to_json()
    };
    Ok((report.exit_code(), out))
}
