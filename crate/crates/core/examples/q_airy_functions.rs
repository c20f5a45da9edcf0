//! The q-Airy function A_q(z): series value, its truncation A_{q,n}, the
//! three-term recurrence and the large-z theta relation.

use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let q: ExactReal = "0.7".parse()?;
    let z: ExactComplex = "2,5".parse()?;

    let a = q_airy(&q, &z, &ctx)?;
    println!("A_0.7(2+5i)      = {}", format_scientific(&a.value, 25));
    let params = QParams::new(q.clone(), 40)?;
    let a40 = q_airy_poly(&params, &z, &ctx)?;
    println!("A_0.7,40(2+5i)   = {}", format_scientific(&a40.value, 25));

    // A_q(z) − A_q(qz) + qz A_q(q²z) = 0
    let qz = z.scaled(q.rational());
    let q2z = qz.scaled(q.rational());
    let a1 = q_airy(&q, &qz, &ctx)?.value;
    let a2 = q_airy(&q, &q2z, &ctx)?.value;
    let residual = &(&a.value - &a1) + &(&qz.at(a2.prec()) * &a2);
    println!("recurrence residual = {}", to_scientific(&residual.abs(), Some(3)));

    // far out, A_q is a theta function times elementary factors
    let half: ExactReal = "0.5".parse()?;
    let big = ExactComplex::from_real(ExactReal::parse("1099511627776")?); // 2^40
    let approx = q_airy_large_z(&half, &big, &ctx)?;
    let exact = q_airy(&half, &big, &ctx)?.value;
    println!(
        "A_0.5(2^40): series {}  theta form {}",
        format_scientific(&exact, 12),
        format_scientific(&approx, 12)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
