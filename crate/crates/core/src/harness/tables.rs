use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use rug::Float;

use super::format::{format_paper_style, format_rel_err, format_scientific};
use super::{OutputFormat, RowInputs, RunConfig, TableRow};
use crate::airy::{q_airy_limit_q_to_1, AiryEvalPolicy};
use crate::asymptotics::{approx_inner, approx_outer, ApproxOptions, RegionTag};
use crate::qcore::{qq_table, ArgFn, BigComplex, BigReal, ExactComplex, ExactReal, PrecisionContext};
use crate::qfunctions::{q_airy, EvalPoint, QParams};
use crate::{Error, Result};

/// Runs `f` on a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is `None`.
pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidContext(format!("cannot start {k} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn render_value(config: &RunConfig, v: &BigComplex) -> String {
    if config.paper_style {
        format_paper_style(v, config.digits)
    } else {
        format_scientific(v, config.digits)
    }
}

fn errors(truth: &BigComplex, approx: &BigComplex) -> (BigReal, BigReal) {
    let bits = truth.prec().max(approx.prec());
    let (t, a) = (truth.round_to(bits), approx.round_to(bits));
    let scale = t.abs();
    let rel = Float::with_val(64, (&t - &a).abs() / &scale);
    let modulus = Float::with_val(bits, &scale - a.abs()).abs();
    (rel, Float::with_val(64, modulus / &scale))
}

struct Table1Job {
    n: u32,
    q: ExactReal,
    u: ExactComplex,
    t: ExactReal,
}

/// (q;q)_n S_n(u q^(−nt); q) against its global approximant over the
/// configured grid, in n, q, u, t order. Cells with t < 2 use the inner
/// approximant A_q(z); the others the outer one.
pub fn reproduce_table1(config: &RunConfig) -> Result<Vec<TableRow>> {
    config.check_grid(&[
        ("n", config.n_list.is_empty()),
        ("q", config.q_list.is_empty()),
        ("u", config.u_list.is_empty()),
        ("t", config.t_list.is_empty()),
    ])?;
    let ctx = config.context()?;
    let mut jobs = Vec::new();
    for &n in &config.n_list {
        for q in &config.q_list {
            QParams::new(q.clone(), n)?;
            for u in &config.u_list {
                for t in &config.t_list {
                    jobs.push(Table1Job {
                        n,
                        q: q.clone(),
                        u: u.clone(),
                        t: t.clone(),
                    });
                }
            }
        }
    }
    let rows = in_pool(config.threads, || {
        jobs.par_iter()
            .map(|job| table1_row(job, config, &ctx))
            .collect::<Vec<_>>()
    })?;
    rows.into_iter().collect()
}

fn table1_row(job: &Table1Job, config: &RunConfig, ctx: &PrecisionContext) -> Result<TableRow> {
    let params = QParams::new(job.q.clone(), job.n)?;
    let point = EvalPoint::new(params, job.u.clone(), job.t.clone(), ctx);
    let report = if *job.t.rational() < 2 {
        approx_inner(&point, &ApproxOptions::with_exact(), ctx)?
    } else {
        approx_outer(&point, &ApproxOptions::with_exact(), ctx)?
    };
    let bits = ctx.plain_bits();
    let qq_n = qq_table(&job.q.at(bits), job.n, bits).pop().expect("non-empty");
    let exact = report.exact.as_ref().expect("exact value requested");
    let true_value = exact.scale(&qq_n);
    let approx_value = report.approx.scale(&qq_n);
    let bound = Float::with_val(bits, &report.bound * &qq_n);
    let (_, modulus_rel_err) = errors(&true_value, &approx_value);
    let rel_err = report.realized_rel_err.clone().expect("exact value requested");
    Ok(TableRow {
        inputs: RowInputs {
            n: Some(job.n.to_string()),
            q: job.q.to_string(),
            u: Some(job.u.to_string()),
            t: Some(job.t.to_string()),
            x: None,
        },
        true_str: render_value(config, &true_value),
        approx_str: render_value(config, &approx_value),
        bound_str: Some(format_rel_err(&bound)),
        rel_err_str: format_rel_err(&rel_err),
        modulus_rel_err_str: format_rel_err(&modulus_rel_err),
        region: report.region,
        true_value,
        approx_value,
        rel_err,
        modulus_rel_err,
    })
}

/// A_q(√q·x) against its q → 1 limit over the configured grid, in x, q
/// order.
pub fn reproduce_table2(config: &RunConfig) -> Result<Vec<TableRow>> {
    config.check_grid(&[("x", config.x_list.is_empty()), ("q", config.q_list.is_empty())])?;
    let ctx = config.context()?;
    let jobs: Vec<(ExactReal, ExactReal)> = config
        .x_list
        .iter()
        .flat_map(|x| config.q_list.iter().map(move |q| (x.clone(), q.clone())))
        .collect();
    let policy = AiryEvalPolicy::default();
    let rows = in_pool(config.threads, || {
        jobs.par_iter()
            .map(|(x, q)| table2_row(x, q, config, &policy, &ctx))
            .collect::<Vec<_>>()
    })?;
    rows.into_iter().collect()
}

fn table2_row(
    x: &ExactReal,
    q: &ExactReal,
    config: &RunConfig,
    policy: &AiryEvalPolicy,
    ctx: &PrecisionContext,
) -> Result<TableRow> {
    let arg = ArgFn(|b: u32| {
        let wide = b + 16;
        BigComplex::from_real(q.at(wide).sqrt() * x.at(wide)).round_to(b)
    });
    let true_value = q_airy(q, &arg, ctx)?.value;
    let approx_value = BigComplex::from_real(q_airy_limit_q_to_1(x, q, policy, ctx)?);
    let (rel_err, modulus_rel_err) = errors(&true_value, &approx_value);
    Ok(TableRow {
        inputs: RowInputs {
            n: None,
            q: q.to_string(),
            u: None,
            t: None,
            x: Some(x.to_string()),
        },
        true_str: render_value(config, &true_value),
        approx_str: render_value(config, &approx_value),
        bound_str: None,
        rel_err_str: format_rel_err(&rel_err),
        modulus_rel_err_str: format_rel_err(&modulus_rel_err),
        region: RegionTag::AiryLimit,
        true_value,
        approx_value,
        rel_err,
        modulus_rel_err,
    })
}

const CSV_HEADER: [&str; 11] = [
    "n",
    "x",
    "q",
    "u",
    "t",
    "true",
    "approx",
    "bound",
    "rel_err",
    "modulus_rel_err",
    "region",
];

/// Renders rows as an aligned text table, a JSON array or CSV.
pub fn render_rows(rows: &[TableRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(rows)
            .map(|s| s + "\n")
            .map_err(|e| Error::InvalidContext(format!("JSON encoding failed: {e}"))),
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::InvalidContext(format!("CSV encoding failed: {e}"));
            writer.write_record(CSV_HEADER).map_err(csv_err)?;
            for row in rows {
                writer.write_record(csv_fields(row)).map_err(csv_err)?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::InvalidContext(format!("CSV encoding failed: {e}")))?;
            Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
        }
        OutputFormat::Text => Ok(text_table(rows)),
    }
}

fn csv_fields(row: &TableRow) -> [String; 11] {
    let opt = |v: &Option<String>| v.clone().unwrap_or_default();
    [
        opt(&row.inputs.n),
        opt(&row.inputs.x),
        row.inputs.q.clone(),
        opt(&row.inputs.u),
        opt(&row.inputs.t),
        row.true_str.clone(),
        row.approx_str.clone(),
        opt(&row.bound_str),
        row.rel_err_str.clone(),
        row.modulus_rel_err_str.clone(),
        row.region.to_string(),
    ]
}

fn text_table(rows: &[TableRow]) -> String {
    let fields: Vec<[String; 11]> = rows.iter().map(csv_fields).collect();
    // drop columns that are empty in every row
    let used: Vec<usize> = (0..CSV_HEADER.len())
        .filter(|&c| fields.iter().any(|f| !f[c].is_empty()))
        .collect();
    let widths: Vec<usize> = used
        .iter()
        .map(|&c| {
            fields
                .iter()
                .map(|f| f[c].len())
                .chain([CSV_HEADER[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out += &line(used.iter().map(|&c| CSV_HEADER[c]).collect());
    for f in &fields {
        out += &line(used.iter().map(|&c| f[c].as_str()).collect());
    }
    out
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}
