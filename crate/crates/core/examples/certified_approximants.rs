//! The inner and outer global approximants of S_n(u q^(−nt)) with their
//! certified remainder bounds, compared with the exact polynomial.

use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let params = QParams::new("0.5".parse()?, 50)?;
    let u: ExactComplex = "-1".parse()?;

    for t in ["0", "0.8", "1.6", "2.5", "4"] {
        let point = EvalPoint::new(params.clone(), u.clone(), t.parse()?, &ctx);
        let report = if point.t().to_f64() < 2.0 {
            approx_inner(&point, &ApproxOptions::with_exact(), &ctx)?
        } else {
            approx_outer(&point, &ApproxOptions::with_exact(), &ctx)?
        };
        let rel = report.realized_rel_err.as_ref().unwrap();
        let bound_rel = report.core_bound.clone() / report.exact_core.as_ref().unwrap().abs();
        println!(
            "t={t:<4} {:<5} S_n = {:<22} error {}  certified {}",
            report.region.as_str(),
            format_scientific(report.exact.as_ref().unwrap(), 8),
            to_scientific(rel, Some(3)),
            to_scientific(&bound_rel, Some(3)),
        );
    }
    println!(
        "σ(0.8) = {}, δ(2.5) = {}",
        sigma_of_t(&"0.8".parse()?)?,
        delta_of_t(&"2.5".parse()?)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
