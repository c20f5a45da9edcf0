use rug::Float;

use super::complex::{BigComplex, BigReal};
use super::context::PrecisionContext;
use crate::{Error, Result};

const MAX_PRODUCT_FACTORS: u64 = 200_000_000;

fn check_base(q: &BigReal) -> Result<()> {
    if !(q.is_finite() && *q > 0 && *q < 1) {
        return Err(Error::Domain(format!("q must satisfy 0 < q < 1, got {}", q.to_f64())));
    }
    Ok(())
}

/// (a; q)_n = ∏_{j=0}^{n−1} (1 − a·q^j), multiplied in ascending j at the
/// context's working precision.
pub fn q_pochhammer(a: &BigComplex, q: &BigReal, n: u32, ctx: &PrecisionContext) -> BigComplex {
    let bits = ctx.working_bits();
    let one = BigComplex::one(bits);
    let mut acc = one.clone();
    let mut a_qj = a.round_to(bits);
    let q = Float::with_val(bits, q);
    for _ in 0..n {
        acc = &acc * &(&one - &a_qj);
        a_qj = a_qj.scale(&q);
    }
    acc
}

/// (q; q)_m for every m in 0..=n, built incrementally at `bits`.
pub fn qq_table(q: &BigReal, n: u32, bits: u32) -> Vec<BigReal> {
    let q = Float::with_val(bits, q);
    let mut table = Vec::with_capacity(n as usize + 1);
    let mut acc = Float::with_val(bits, 1);
    let mut qj = q.clone();
    table.push(acc.clone());
    for _ in 1..=n {
        acc *= Float::with_val(bits, 1 - &qj);
        qj *= &q;
        table.push(acc.clone());
    }
    table
}

/// A truncated infinite product with a bound on what was dropped.
#[derive(Clone, Debug)]
pub struct InfiniteProduct {
    pub value: BigComplex,
    /// Number of factors multiplied.
    pub factors: u64,
    /// Bound on |P_∞ / P_m − 1| for the dropped factors.
    pub rel_tail_bound: BigReal,
}

/// (a; q)_∞ truncated at the first m with |a|·q^m < tol·(1 − q)/4.
///
/// The dropped factors satisfy |∏_{j≥m}(1 − a q^j) − 1| ≤ e^s − 1 with
/// s = |a| q^m / ((1 − q)(1 − |a| q^m)), which is reported as
/// `rel_tail_bound` and stays below tol/2.
pub fn q_pochhammer_inf(a: &BigComplex, q: &BigReal, ctx: &PrecisionContext) -> Result<InfiniteProduct> {
    check_base(q)?;
    let probe_bits = ctx.working_bits();
    let q_probe = Float::with_val(probe_bits, q);
    let one_minus_q = Float::with_val(probe_bits, 1 - &q_probe);
    let limit = Float::with_val(probe_bits, Float::i_exp(1, -(ctx.working_bits() as i32)));
    if one_minus_q <= limit {
        return Err(Error::NonConvergent(format!(
            "q is within 2^-{} of 1; the product cannot be truncated",
            ctx.working_bits()
        )));
    }
    let a_abs = Float::with_val(64, a.abs());
    let threshold = ctx.tol(64) * Float::with_val(64, &one_minus_q) / 4u32;
    // m ≈ ln(threshold/|a|)/ln q, refined exactly in the loop below
    let estimate = if a_abs.is_zero() {
        0.0
    } else {
        let ratio = Float::with_val(64, &threshold / &a_abs);
        let est = ratio.ln() / Float::with_val(64, q_probe.ln_ref());
        est.to_f64().max(0.0)
    };
    if estimate > MAX_PRODUCT_FACTORS as f64 {
        return Err(Error::NonConvergent(format!(
            "(a; q)_inf needs about {estimate:.0} factors"
        )));
    }
    let extra = 64 - (estimate as u64 + 2).leading_zeros();
    let bits = ctx.working_bits() + ctx.guard_bits() + extra;
    let q = Float::with_val(bits, q);
    let one = BigComplex::one(bits);
    let mut acc = one.clone();
    let mut a_qj = a.round_to(bits);
    let mut factors = 0u64;
    let threshold = Float::with_val(bits, &threshold);
    loop {
        let magnitude = a_qj.abs();
        if magnitude < threshold {
            break;
        }
        acc = &acc * &(&one - &a_qj);
        a_qj = a_qj.scale(&q);
        factors += 1;
        if factors > MAX_PRODUCT_FACTORS {
            return Err(Error::NonConvergent("(a; q)_inf factor budget exceeded".into()));
        }
    }
    let tail = a_qj.abs();
    let one_minus_q = Float::with_val(bits, 1 - &q);
    let s = Float::with_val(64, &tail / (one_minus_q * Float::with_val(bits, 1 - &tail)));
    let rel_tail_bound = s.exp_m1();
    Ok(InfiniteProduct {
        value: acc,
        factors,
        rel_tail_bound,
    })
}
