//! Evaluate S_n(z; q) at a few points, including one where the alternating
//! sum cancels heavily and the precision escalates.

use stieltjes_wigert::prelude::*;
use stieltjes_wigert::qcore::qq_table;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let params = QParams::new("0.5".parse()?, 50)?;
    let bits = ctx.plain_bits();
    let qq_50 = qq_table(&params.q().at(bits), 50, bits).pop().unwrap();

    for (u, t) in [("1", "0"), ("1", "1.0"), ("1,1", "0.5")] {
        let point = EvalPoint::new(params.clone(), u.parse()?, t.parse()?, &ctx);
        let s = stieltjes_wigert(&params, &point, &ctx)?;
        let normalized = s.value.scale(&qq_50);
        println!(
            "u={u:<4} t={t:<4} (q;q)_50 S_50 = {}  [{} bits, {} cancelled]",
            format_scientific(&normalized, 15),
            s.condition.final_bits,
            s.condition.cancellation_bits
        );
    }

    // S_n(z) = (−z q^n)^n S_n(1/(z q^(2n))), checked at a large argument
    let z: ExactComplex = "3,-2".parse()?;
    let r = symmetry_residual(&params, &z, &ctx)?;
    println!("symmetry residual at z=3-2i: {}", to_scientific(&r, Some(3)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
