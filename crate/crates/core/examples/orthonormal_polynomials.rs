//! Orthonormal p_n(x), the weight w(x) and Wigert's limit of S_n.

use stieltjes_wigert::prelude::*;
use stieltjes_wigert::qfunctions::k_from_q;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let q: ExactReal = "0.5".parse()?;
    let x: ExactComplex = "1".parse()?;
    for n in [0, 1, 5, 20] {
        let p = sw_p(&QParams::new(q.clone(), n)?, &x, &ctx)?;
        println!("p_{n}(1) = {}", format_scientific(&p.value, 20));
    }

    let k = ExactReal::from_float(&k_from_q(&q, &ctx)?)?;
    let w = weight_w(&"4".parse()?, &k, &ctx)?;
    println!("k(0.5) = {}, w(4) = {}", k.to_f64(), to_scientific(&w, Some(20)));

    // (q;q)_∞ S_n(1) → A_q(1)
    let a = q_airy(&q, &x, &ctx)?.value;
    let qq_inf = q_pochhammer_inf(
        &BigComplex::from_real(q.at(ctx.plain_bits())),
        &q.at(ctx.plain_bits()),
        &ctx,
    )?;
    for n in [10, 40, 80] {
        let s = stieltjes_wigert(&QParams::new(q.clone(), n)?, &x, &ctx)?.value;
        let gap = (&s.scale(&qq_inf.value.re).round_to(a.prec()) - &a).abs();
        println!("n={n:<2} |(q;q)_∞ S_n(1) − A_q(1)| = {}", to_scientific(&gap, Some(3)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
