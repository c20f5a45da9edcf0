//! Run two verification suites on their small grids and report failures.

use stieltjes_wigert::harness::{Grid, OutputFormat, SuiteName};
use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let config = RunConfig::table1_defaults();
    for name in [SuiteName::Recurrence, SuiteName::Limits] {
        let report = run_suite(name, Grid::Small, &config);
        print!("{}", report.render(OutputFormat::Text)?);
        if !report.passed() {
            return Err(Error::NonConvergent(format!("{} suite failed", name.as_str())));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
