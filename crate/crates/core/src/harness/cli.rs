//! The `swq` command line: `eval`, `table1`, `table2` and `verify`.
//!
//! Exit status is 0 on success, 1 when a suite fails or a computation does
//! not converge, and 2 on a usage error (bad flags, unparsable numbers,
//! inputs outside a function's domain).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;
use serde::Serialize;

use super::format::{format_rel_err, format_scientific};
use super::{render_rows, reproduce_table1, reproduce_table2, run_suite, write_output};
use super::{Grid, OutputFormat, RunConfig, SuiteName};
use crate::airy::{airy_ai_with_path, q_airy_limit_q_to_1, xi_map, AiryEvalPolicy, AiryPath};
use crate::asymptotics::{
    approx_inner, approx_outer, large_z_index, q_airy_large_z, theta_region_approx, ApproxOptions, ApproxReport,
};
use crate::qcore::{ArgFn, BigComplex, ExactComplex, ExactReal, PrecisionContext};
use crate::qfunctions::{k_from_q, q_airy, q_airy_poly, stieltjes_wigert, theta_q, weight_w, EvalPoint, QParams};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "swq",
    version,
    about = "Stieltjes–Wigert polynomials, q-Airy and theta functions at arbitrary precision"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Exact (q;q)_n S_n(u q^(−nt)) against the global approximant.
    Table1(Table1Args),
    /// A_q(√q·x) against its q → 1 limit.
    Table2(Table2Args),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Initial working precision in bits.
    #[arg(long = "prec-bits", value_name = "B")]
    prec_bits: Option<u32>,
    /// Target relative tolerance.
    #[arg(long, value_name = "T")]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FnName {
    Sw,
    Qairy,
    QairyPoly,
    Theta,
    Ai,
    Xi,
    Weight,
    Inner,
    Outer,
    ThetaRegion,
    LargeZ,
    Limit,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    function: FnName,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Complex input RE[,IM]; the argument z of the single-argument functions.
    #[arg(long, allow_hyphen_values = true, value_name = "RE[,IM]")]
    u: Option<String>,
    /// Scaling exponent: z = u·q^(−n·t). Defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Real input of ai, xi, weight and limit; also accepted as z.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Weight parameter; derived from q = exp(−1/(2k²)) when omitted.
    #[arg(long)]
    k: Option<String>,
    /// δ of the heuristic error q^(n(l−δ)) reported by theta-region.
    #[arg(long = "small-delta", default_value = "0.1")]
    small_delta: String,
    /// Significant digits printed (default: the target tolerance's).
    #[arg(long)]
    digits: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Comma-separated degrees.
    #[arg(long = "n-list", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    /// Comma-separated values of q; `--q` is an alias.
    #[arg(long = "q-list", alias = "q", value_delimiter = ',')]
    q_list: Option<Vec<String>>,
    /// Semicolon-separated RE[,IM] values, e.g. "1;-1;1,1".
    #[arg(long = "u-list", value_delimiter = ';', allow_hyphen_values = true)]
    u_list: Option<Vec<String>>,
    /// Comma-separated values of t.
    #[arg(long = "t-list", value_delimiter = ',', allow_hyphen_values = true)]
    t_list: Option<Vec<String>>,
    /// A single degree; shorthand for --n-list N.
    #[arg(long, conflicts_with = "n_list")]
    n: Option<u32>,
    #[arg(long = "paper-style")]
    paper_style: bool,
    #[arg(long, default_value_t = 5)]
    digits: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Table2Args {
    #[arg(long = "x-list", value_delimiter = ',')]
    x_list: Option<Vec<String>>,
    #[arg(long = "q-list", value_delimiter = ',')]
    q_list: Option<Vec<String>>,
    #[arg(long = "paper-style")]
    paper_style: bool,
    #[arg(long, default_value_t = 5)]
    digits: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteName,
    #[arg(long, value_enum, default_value_t = Grid::Full)]
    grid: Grid,
    #[command(flatten)]
    common: Common,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit status for the process arguments.
pub fn main_exit_code() -> i32 {
    run(std::env::args_os())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::InvalidContext(_) => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Eval(args) => eval(args).map(|()| true),
        Command::Table1(args) => {
            let config = table1_config(&args)?;
            let rows = reproduce_table1(&config)?;
            emit(&render_rows(&rows, config.format)?, &config.out)?;
            Ok(true)
        }
        Command::Table2(args) => {
            let config = table2_config(&args)?;
            let rows = reproduce_table2(&config)?;
            emit(&render_rows(&rows, config.format)?, &config.out)?;
            Ok(true)
        }
        Command::Verify(args) => {
            let mut config = RunConfig::table1_defaults();
            apply_common(&mut config, &args.common);
            config.context()?;
            let report = run_suite(args.suite, args.grid, &config);
            emit(&report.render(config.format)?, &config.out)?;
            Ok(report.passed())
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    write_output(text, out.as_deref()).map_err(|e| Error::NonConvergent(format!("cannot write output: {e}")))
}

fn apply_common(config: &mut RunConfig, common: &Common) {
    config.working_bits = common.prec_bits;
    config.target_rel_tol = common.tol;
    config.format = common.format;
    config.out = common.out.clone();
    config.threads = common.threads;
}

fn parse_reals(items: &[String]) -> Result<Vec<ExactReal>> {
    items.iter().map(|s| ExactReal::parse(s)).collect()
}

fn table1_config(args: &Table1Args) -> Result<RunConfig> {
    let mut config = RunConfig::table1_defaults();
    apply_common(&mut config, &args.common);
    if let Some(n) = args.n {
        config.n_list = vec![n];
    }
    if let Some(ns) = &args.n_list {
        config.n_list = ns.clone();
    }
    if let Some(qs) = &args.q_list {
        config.q_list = parse_reals(qs)?;
    }
    if let Some(us) = &args.u_list {
        config.u_list = us.iter().map(|s| ExactComplex::parse(s)).collect::<Result<_>>()?;
    }
    if let Some(ts) = &args.t_list {
        config.t_list = parse_reals(ts)?;
    }
    config.paper_style = args.paper_style;
    config.digits = args.digits.max(1);
    Ok(config)
}

fn table2_config(args: &Table2Args) -> Result<RunConfig> {
    let mut config = RunConfig::table2_defaults();
    apply_common(&mut config, &args.common);
    if let Some(xs) = &args.x_list {
        config.x_list = parse_reals(xs)?;
    }
    if let Some(qs) = &args.q_list {
        config.q_list = parse_reals(qs)?;
    }
    config.paper_style = args.paper_style;
    config.digits = args.digits.max(1);
    Ok(config)
}

/// One evaluated function: its inputs and named outputs, all decimal strings.
#[derive(Serialize)]
struct EvalOutput {
    #[serde(rename = "fn")]
    function: String,
    inputs: BTreeMap<&'static str, String>,
    outputs: Vec<(String, String)>,
}

impl EvalOutput {
    fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Text => {
                let mut out = String::new();
                for (k, v) in &self.outputs {
                    out += &format!("{k} = {v}\n");
                }
                Ok(out)
            }
            OutputFormat::Json => {
                let outputs: BTreeMap<&str, &str> =
                    self.outputs.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                let doc = serde_json::json!({
                    "fn": self.function,
                    "inputs": self.inputs,
                    "outputs": outputs,
                });
                serde_json::to_string_pretty(&doc)
                    .map(|s| s + "\n")
                    .map_err(|e| Error::InvalidContext(format!("JSON encoding failed: {e}")))
            }
            OutputFormat::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                let csv_err = |e: csv::Error| Error::InvalidContext(format!("CSV encoding failed: {e}"));
                let mut header = vec!["fn".to_string()];
                let mut record = vec![self.function.clone()];
                for (k, v) in &self.inputs {
                    header.push((*k).to_string());
                    record.push(v.clone());
                }
                for (k, v) in &self.outputs {
                    header.push(k.clone());
                    record.push(v.clone());
                }
                writer.write_record(&header).map_err(csv_err)?;
                writer.write_record(&record).map_err(csv_err)?;
                let bytes = writer
                    .into_inner()
                    .map_err(|e| Error::InvalidContext(format!("CSV encoding failed: {e}")))?;
                Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
            }
        }
    }
}

struct Inputs<'a> {
    args: &'a EvalArgs,
    used: BTreeMap<&'static str, String>,
}

impl<'a> Inputs<'a> {
    fn missing(flag: &str, function: FnName) -> Error {
        let name = function
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        Error::InvalidContext(format!("--fn {name} needs --{flag}"))
    }

    fn n(&mut self) -> Result<u32> {
        let n = self.args.n.ok_or_else(|| Self::missing("n", self.args.function))?;
        self.used.insert("n", n.to_string());
        Ok(n)
    }

    fn real(&mut self, key: &'static str, value: &Option<String>) -> Result<ExactReal> {
        let src = value.as_ref().ok_or_else(|| Self::missing(key, self.args.function))?;
        let v = ExactReal::parse(src)?;
        self.used.insert(key, v.to_string());
        Ok(v)
    }

    fn q(&mut self) -> Result<ExactReal> {
        self.real("q", &self.args.q.clone())
    }

    fn x(&mut self) -> Result<ExactReal> {
        self.real("x", &self.args.x.clone())
    }

    fn t(&mut self) -> Result<ExactReal> {
        match &self.args.t {
            Some(_) => self.real("t", &self.args.t.clone()),
            None => Ok(ExactReal::from(0)),
        }
    }

    /// --u, or --x as a real argument.
    fn z(&mut self) -> Result<ExactComplex> {
        if let Some(u) = &self.args.u {
            let v = ExactComplex::parse(u)?;
            self.used.insert("u", v.to_string());
            return Ok(v);
        }
        if self.args.x.is_some() {
            return Ok(ExactComplex::from_real(self.x()?));
        }
        Err(Self::missing("u", self.args.function))
    }

    fn point(&mut self, ctx: &PrecisionContext) -> Result<EvalPoint> {
        let params = QParams::new(self.q()?, self.n()?)?;
        let u = self.z()?;
        let t = self.t()?;
        Ok(EvalPoint::new(params, u, t, ctx))
    }
}

fn eval(args: EvalArgs) -> Result<()> {
    let mut config = RunConfig::table1_defaults();
    apply_common(&mut config, &args.common);
    let ctx = config.context()?;
    let digits = args
        .digits
        .unwrap_or_else(|| (-ctx.target_rel_tol().log10()).floor().max(1.0) as usize);
    let function = args.function;
    let mut inputs = Inputs {
        args: &args,
        used: BTreeMap::new(),
    };
    let fmt = |v: &BigComplex| format_scientific(v, digits);
    let fmt_r = |v: &Float| format_scientific(&BigComplex::from_real(v.clone()), digits);
    let mut outputs: Vec<(String, String)> = Vec::new();
    let mut push = |k: &str, v: String| outputs.push((k.to_string(), v));

    match function {
        FnName::Sw => {
            let point = inputs.point(&ctx)?;
            let s = stieltjes_wigert(point.params(), &point, &ctx)?;
            push("z", fmt(point.z()));
            push("value", fmt(&s.value));
            push("final_bits", s.condition.final_bits.to_string());
            push("cancellation_bits", s.condition.cancellation_bits.to_string());
        }
        FnName::Qairy => {
            let q = inputs.q()?;
            let z = inputs.z()?;
            let a = q_airy(&q, &z, &ctx)?;
            push("value", fmt(&a.value));
            push("final_bits", a.condition.final_bits.to_string());
            push("cancellation_bits", a.condition.cancellation_bits.to_string());
        }
        FnName::QairyPoly => {
            let params = QParams::new(inputs.q()?, inputs.n()?)?;
            let z = inputs.z()?;
            let a = q_airy_poly(&params, &z, &ctx)?;
            push("value", fmt(&a.value));
            push("final_bits", a.condition.final_bits.to_string());
        }
        FnName::Theta => {
            let q = inputs.q()?;
            let z = inputs.z()?;
            let v = theta_q(&q, &z, &ctx)?;
            push("value", fmt(&v.value));
        }
        FnName::Ai => {
            let x = inputs.x()?;
            let v = airy_ai_with_path(&x.at(ctx.plain_bits()), &AiryEvalPolicy::default(), &ctx)?;
            push("value", fmt_r(&v.value));
            let path = match v.path {
                AiryPath::Taylor => "taylor",
                AiryPath::Asymptotic => "asymptotic",
            };
            push("path", path.to_string());
            push("rel_err_estimate", format_rel_err(&v.rel_err_estimate));
        }
        FnName::Xi => {
            let x = inputs.x()?;
            let q = inputs.q()?;
            let r = xi_map(&x, &q, &ctx)?;
            push("xi", fmt_r(&r.xi));
            push("integral", fmt_r(&r.integral_value));
            push(
                "quadrature_error_estimate",
                format_rel_err(&r.quadrature_error_estimate),
            );
            push("panels", r.panels.to_string());
        }
        FnName::Weight => {
            let x = inputs.x()?;
            let k = match &args.k {
                Some(_) => inputs.real("k", &args.k.clone())?,
                None => {
                    let q = inputs.q()?;
                    ExactReal::from_float(&k_from_q(&q, &ctx)?)?
                }
            };
            let w = weight_w(&x, &k, &ctx)?;
            push("k", fmt_r(&k.at(ctx.plain_bits())));
            push("value", fmt_r(&w));
        }
        FnName::Inner | FnName::Outer => {
            let point = inputs.point(&ctx)?;
            let report = if function == FnName::Inner {
                approx_inner(&point, &ApproxOptions::with_exact(), &ctx)?
            } else {
                approx_outer(&point, &ApproxOptions::with_exact(), &ctx)?
            };
            push_report(&mut push, &report, &fmt);
        }
        FnName::ThetaRegion => {
            let point = inputs.point(&ctx)?;
            let delta = ExactReal::parse(&args.small_delta)?;
            inputs.used.insert("small_delta", delta.to_string());
            let r = theta_region_approx(&point, &delta, &ctx)?;
            let exact_value = stieltjes_wigert(point.params(), &point, &ctx)?.value;
            let bits = exact_value.prec().max(r.value.prec());
            let e = exact_value.round_to(bits);
            let dev = Float::with_val(64, (&r.value.round_to(bits) - &e).abs() / e.abs());
            push("approx", fmt(&r.value));
            push("exact", fmt(&exact_value));
            push("rel_err", format_rel_err(&dev));
            push("heuristic_rel_err", format_rel_err(&r.heuristic_rel_err));
            push("m", r.m.to_string());
            push("region", crate::asymptotics::RegionTag::Theta.to_string());
        }
        FnName::LargeZ => {
            let q = inputs.q()?;
            let z = inputs.z()?;
            let approx = q_airy_large_z(&q, &z, &ctx)?;
            let exact_value = q_airy(&q, &z, &ctx)?.value;
            let bits = exact_value.prec().max(approx.prec());
            let e = exact_value.round_to(bits);
            let dev = Float::with_val(64, (&approx.round_to(bits) - &e).abs() / e.abs());
            push("approx", fmt(&approx));
            push("exact", fmt(&exact_value));
            push("rel_err", format_rel_err(&dev));
            push("m", large_z_index(&q, &z.at(bits))?.to_string());
        }
        FnName::Limit => {
            let x = inputs.x()?;
            let q = inputs.q()?;
            let approx = q_airy_limit_q_to_1(&x, &q, &AiryEvalPolicy::default(), &ctx)?;
            let arg = ArgFn(|b: u32| BigComplex::from_real(q.at(b + 16).sqrt() * x.at(b + 16)).round_to(b));
            let exact_value = q_airy(&q, &arg, &ctx)?.value;
            let e = exact_value.re.clone();
            let dev = Float::with_val(64, Float::with_val(e.prec(), &e - &approx).abs() / e.abs());
            push("approx", fmt_r(&approx));
            push("exact", fmt(&exact_value));
            push("rel_err", format_rel_err(&dev));
            push("region", crate::asymptotics::RegionTag::AiryLimit.to_string());
        }
    }
    let name = function
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let doc = EvalOutput {
        function: name,
        inputs: inputs.used,
        outputs,
    };
    emit(&doc.render(config.format)?, &config.out)
}

fn push_report(push: &mut impl FnMut(&str, String), report: &ApproxReport, fmt: &impl Fn(&BigComplex) -> String) {
    push("approx", fmt(&report.approx));
    if let Some(exact) = &report.exact {
        push("exact", fmt(exact));
    }
    push("bound", format_rel_err(&report.bound));
    if let Some(rel) = &report.realized_rel_err {
        push("rel_err", format_rel_err(rel));
    }
    push("sigma_or_delta", report.sigma_or_delta.to_string());
    push("region", report.region.to_string());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["swq", "bogus"]), 2);
        assert_eq!(run(["swq", "eval", "--fn", "sw", "--q", "0.5"]), 2);
        assert_eq!(run(["swq", "eval", "--fn", "qairy", "--q", "abc", "--u", "1"]), 2);
        assert_eq!(run(["swq", "eval", "--fn", "weight", "--x", "-1", "--k", "2"]), 2);
    }

    #[test]
    fn help_exits_0() {
        assert_eq!(run(["swq", "--help"]), 0);
    }

    #[test]
    fn eval_runs() {
        assert_eq!(run(["swq", "eval", "--fn", "qairy", "--q", "0.5", "--u", "-1,2"]), 0);
        assert_eq!(run(["swq", "eval", "--fn", "ai", "--x", "-2", "--format", "json"]), 0);
    }
}
