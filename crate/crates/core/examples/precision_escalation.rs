//! Certify a custom alternating series: e^(−40) = Σ (−40)^k/k! loses about
//! 110 bits to cancellation, so a 64-bit first run is escalated.

use rug::Float;
use stieltjes_wigert::prelude::*;
use stieltjes_wigert::qcore::TermAccumulator;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default()
        .with_working_bits(64)?
        .with_target_rel_tol(1e-15)?;
    let x = -40i32;
    let certified = evaluate_with_escalation(&ctx, |bits| {
        let mut acc = TermAccumulator::new(bits);
        let mut term = BigComplex::one(bits);
        let mut k = 0u32;
        loop {
            acc.add(&term);
            k += 1;
            term = term.scale(&(Float::with_val(bits, x) / k));
            if k > 60 && term.abs() < Float::with_val(bits, Float::i_exp(1, -(bits as i32))) {
                break;
            }
        }
        Ok(acc.finish())
    })?;
    let c = &certified.condition;
    println!(
        "e^-40 = {}  ({} escalations, {} bits, {} bits cancelled)",
        to_scientific(&certified.value.re, Some(16)),
        c.escalations_used,
        c.final_bits,
        c.cancellation_bits
    );
    let reference = Float::with_val(256, -40).exp();
    println!("reference {}", to_scientific(&reference, Some(16)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
