//! Table reproduction, verification suites, number formatting and the
//! `swq` command line.

pub mod cli;
mod format;
pub mod reference;
mod suites;
mod tables;

use std::path::PathBuf;

use serde::Serialize;

use crate::asymptotics::RegionTag;
use crate::qcore::{BigComplex, BigReal, ExactComplex, ExactReal, PrecisionContext};
use crate::Result;

pub use format::{format_paper_style, format_rel_err, format_scientific, parse_formatted};
pub use suites::{run_suite, Check, Grid, SuiteName, SuiteReport};
pub use tables::{render_rows, reproduce_table1, reproduce_table2, write_output};

/// Output encodings of the table and eval commands.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Everything a table run depends on. Identical configurations give
/// byte-identical output whatever the thread count.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub working_bits: Option<u32>,
    pub target_rel_tol: Option<f64>,
    pub n_list: Vec<u32>,
    pub q_list: Vec<ExactReal>,
    pub u_list: Vec<ExactComplex>,
    pub t_list: Vec<ExactReal>,
    pub x_list: Vec<ExactReal>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Table-style number layout instead of plain scientific notation.
    pub paper_style: bool,
    /// Significant digits of the true and approx strings.
    pub digits: usize,
    /// Worker threads; `None` uses rayon's default pool.
    pub threads: Option<usize>,
}

fn parse_all<T>(items: &[&str], f: impl Fn(&str) -> Result<T>) -> Vec<T> {
    items
        .iter()
        .map(|s| f(s).expect("built-in grid value parses"))
        .collect()
}

impl RunConfig {
    /// n = 50, q = 0.5, u ∈ {1, −1, 1+i}, t ∈ {0, 0.5, 0.8, 1.0, 1.2, 1.6}.
    pub fn table1_defaults() -> Self {
        Self {
            working_bits: None,
            target_rel_tol: None,
            n_list: vec![50],
            q_list: parse_all(&["0.5"], ExactReal::parse),
            u_list: parse_all(&["1", "-1", "1,1"], ExactComplex::parse),
            t_list: parse_all(&["0", "0.5", "0.8", "1.0", "1.2", "1.6"], ExactReal::parse),
            x_list: Vec::new(),
            format: OutputFormat::Text,
            out: None,
            paper_style: false,
            digits: 5,
            threads: None,
        }
    }

    /// x ∈ {0.5, 1, 4, 10, 20}, q ∈ {0.9, 0.92, 0.94, 0.96, 0.98, 0.99}.
    pub fn table2_defaults() -> Self {
        Self {
            n_list: Vec::new(),
            q_list: parse_all(&["0.9", "0.92", "0.94", "0.96", "0.98", "0.99"], ExactReal::parse),
            u_list: Vec::new(),
            t_list: Vec::new(),
            x_list: parse_all(&["0.5", "1.0", "4.0", "10", "20"], ExactReal::parse),
            ..Self::table1_defaults()
        }
    }

    /// The precision context with this configuration's overrides applied.
    pub fn context(&self) -> Result<PrecisionContext> {
        let mut ctx = PrecisionContext::default();
        if let Some(bits) = self.working_bits {
            ctx = ctx.with_working_bits(bits)?;
        }
        if let Some(tol) = self.target_rel_tol {
            ctx = ctx.with_target_rel_tol(tol)?;
        }
        Ok(ctx)
    }

    fn check_grid(&self, lists: &[(&str, bool)]) -> Result<()> {
        for (name, empty) in lists {
            if *empty {
                return Err(crate::Error::Domain(format!("the {name} grid is empty")));
            }
        }
        Ok(())
    }
}

/// Grid coordinates of a table cell, all as decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RowInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
}

/// One reproduced table cell.
///
/// `rel_err` is |true − approx|/|true|. For complex cells the published
/// error column instead reports ||true| − |approx||/|true|, carried as
/// `modulus_rel_err`.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub inputs: RowInputs,
    #[serde(rename = "true")]
    pub true_str: String,
    #[serde(rename = "approx")]
    pub approx_str: String,
    #[serde(rename = "bound")]
    pub bound_str: Option<String>,
    #[serde(rename = "rel_err")]
    pub rel_err_str: String,
    #[serde(rename = "modulus_rel_err")]
    pub modulus_rel_err_str: String,
    pub region: RegionTag,
    #[serde(skip)]
    pub true_value: BigComplex,
    #[serde(skip)]
    pub approx_value: BigComplex,
    #[serde(skip)]
    pub rel_err: BigReal,
    #[serde(skip)]
    pub modulus_rel_err: BigReal,
}
