//! Between the two turning points (1 ≤ t < 2) S_n behaves like a theta
//! function. The error term has no explicit constant, so the reported
//! magnitude is a heuristic.

use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let delta: ExactReal = "0.1".parse()?;
    for n in [50, 100] {
        let params = QParams::new("0.5".parse()?, n)?;
        let point = EvalPoint::new(params.clone(), "-1".parse()?, "1.5".parse()?, &ctx);
        let approx = theta_region_approx(&point, &delta, &ctx)?;
        let exact = stieltjes_wigert(&params, &point, &ctx)?.value;
        let dev = (&approx.value.round_to(exact.prec()) - &exact).abs() / exact.abs();
        println!(
            "n={n:<3} m={:<3} deviation {}  heuristic {}",
            approx.m,
            to_scientific(&dev, Some(3)),
            to_scientific(&approx.heuristic_rel_err, Some(3))
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
