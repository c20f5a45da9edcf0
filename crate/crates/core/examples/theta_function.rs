//! Θ_q(z) = Σ q^(k²) z^k over all integers k, and its two functional
//! equations.

use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let q: ExactReal = "0.5".parse()?;
    let z: ExactComplex = "2,1".parse()?;

    let theta = theta_q(&q, &z, &ctx)?.value;
    let inv = theta_q(&q, &z.at(ctx.plain_bits()).recip(), &ctx)?.value;
    println!("Θ(2+i)     = {}", format_scientific(&theta, 20));
    println!("Θ(1/(2+i)) = {}", format_scientific(&inv, 20));

    // Θ(q²z) = Θ(z)/(qz)
    let shifted = theta_q(&q, &z.scaled(&rug::Rational::from((1, 4))), &ctx)?.value;
    let qz = z.at(ctx.plain_bits()).scale(&q.at(ctx.plain_bits()));
    let expected = &theta * &qz.recip();
    let gap = (&shifted - &expected).abs() / expected.abs();
    println!("quasi-periodicity gap = {}", to_scientific(&gap, Some(3)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
