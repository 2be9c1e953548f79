//! Recomputes the reference tables for `n = 1..=23` and diffs them against
//! the embedded values. Takes around 15 s in release mode.
//!
//! ```text
//! cargo run --release --example verify_tables
//! ```

use symspan::cli::{report_verification, ComputedTables};
use symspan::golden::{GoldenTables, GOLDEN_N_MAX};

fn main() -> symspan::Result<()> {
    let golden = GoldenTables::embedded();
    let computed = ComputedTables::compute(GOLDEN_N_MAX)?;
    let code = report_verification(&golden, &computed, &mut std::io::stdout().lock())?;
    std::process::exit(code);
}
