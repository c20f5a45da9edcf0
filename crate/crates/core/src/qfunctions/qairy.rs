use rug::Float;

use super::{check_q, QParams};
use crate::qcore::{
    evaluate_with_escalation, BigComplex, Certified, ComplexArg, ExactReal, PrecisionContext, SeriesSum,
    TermAccumulator,
};
use crate::{Error, Result};

/// Hard cap on the number of terms of any single series run.
pub(crate) const MAX_SERIES_TERMS: usize = 10_000_000;

/// One run of Σ_k q^{k²}/(q;q)_k·(−z)^k at `bits`.
///
/// With `last = Some(n)` the sum stops at k = n. Otherwise it stops at the
/// first k past the hump, i.e. with r_k = q^{2k+1}|z|/(1 − q^{k+1}) < 1,
/// whose geometric tail bound |t_{k+1}|/(1 − r_k) is at most
/// `trunc_tol·|partial sum|`. The ratios r_k decrease in k, so the bound
/// is rigorous once r_k < 1.
pub(crate) fn q_airy_sum(
    q: &Float,
    z: &BigComplex,
    bits: u32,
    trunc_tol: &Float,
    last: Option<u32>,
) -> Result<SeriesSum> {
    let q = Float::with_val(bits, q);
    let q_sq = Float::with_val(bits, q.square_ref());
    let minus_z = -&z.round_to(bits);
    let z_abs = Float::with_val(64, z.abs());
    let mut acc = TermAccumulator::new(bits);
    let mut term = BigComplex::one(bits);
    let mut q_odd = q.clone(); // q^{2k+1}
    let mut q_next = q.clone(); // q^{k+1}
    let mut k: u32 = 0;
    loop {
        acc.add(&term);
        if last == Some(k) {
            break;
        }
        let denom = Float::with_val(bits, 1 - &q_next);
        let factor = Float::with_val(bits, &q_odd / &denom);
        term = (&term * &minus_z).scale(&factor);
        if last.is_none() {
            let ratio = Float::with_val(64, &factor * &z_abs);
            if ratio < 1 {
                let tail = Float::with_val(64, term.abs() / (1 - ratio));
                let scale = Float::with_val(64, acc.sum().abs() * trunc_tol);
                if tail <= scale || term.is_zero() {
                    break;
                }
            }
        }
        q_odd *= &q_sq;
        q_next *= &q;
        k += 1;
        if acc.terms() >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergent(format!(
                "q-Airy series did not settle within {MAX_SERIES_TERMS} terms"
            )));
        }
    }
    Ok(acc.finish())
}

/// A_q(z) = Σ_{k≥0} q^{k²}/(q;q)_k·(−z)^k.
pub fn q_airy(q: &ExactReal, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    check_q(q)?;
    evaluate_with_escalation(ctx, |bits| {
        q_airy_sum(&q.at(bits), &z.at(bits), bits, &ctx.truncation_tol(bits), None)
    })
}

/// A_{q,n}(z), the partial sum of A_q up to k = n.
pub fn q_airy_poly(params: &QParams, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    evaluate_with_escalation(ctx, |bits| {
        let tol = ctx.truncation_tol(bits);
        q_airy_sum(&params.q().at(bits), &z.at(bits), bits, &tol, Some(params.n()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ExactComplex;

    fn arg(s: &str) -> ExactComplex {
        ExactComplex::parse(s).unwrap()
    }

    fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
        ((a - b).abs() / b.abs()).to_f64()
    }

    #[test]
    fn value_at_origin_is_one() {
        let ctx = PrecisionContext::default();
        let v = q_airy(&"0.3".parse().unwrap(), &arg("0"), &ctx).unwrap();
        assert_eq!(v.value, BigComplex::one(256));
    }

    #[test]
    fn partial_sum_of_degree_three() {
        let ctx = PrecisionContext::default();
        let params = QParams::new("0.5".parse().unwrap(), 3).unwrap();
        let v = q_airy_poly(&params, &arg("1"), &ctx).unwrap();
        let q: f64 = 0.5;
        let expect = 1.0 - q / (1.0 - q) + q.powi(4) / ((1.0 - q) * (1.0 - q * q))
            - q.powi(9) / ((1.0 - q) * (1.0 - q * q) * (1.0 - q.powi(3)));
        assert!((v.value.re.to_f64() - expect).abs() < 1e-15);
        let zero = q_airy_poly(&QParams::new("0.5".parse().unwrap(), 0).unwrap(), &arg("7,3"), &ctx).unwrap();
        assert_eq!(zero.value, BigComplex::one(256));
    }

    #[test]
    fn three_term_recurrence() {
        let ctx = PrecisionContext::default();
        let q: ExactReal = "0.7".parse().unwrap();
        for z in ["1", "-3", "2,5"] {
            let z = arg(z);
            let qz = z.scaled(q.rational());
            let qqz = qz.scaled(q.rational());
            let a0 = q_airy(&q, &z, &ctx).unwrap().value;
            let a1 = q_airy(&q, &qz, &ctx).unwrap().value;
            let a2 = q_airy(&q, &qqz, &ctx).unwrap().value;
            let third = &qz.at(256) * &a2;
            let residual = (&(&a0 - &a1) + &third).abs();
            let scale = a0.abs().max(&third.abs());
            assert!(residual < scale * 1e-28, "{z}");
        }
    }

    #[test]
    fn large_argument_matches_wide_reference() {
        let ctx = PrecisionContext::default();
        let q: ExactReal = "0.5".parse().unwrap();
        let z = BigComplex::from_real(Float::with_val(256, Float::i_exp(1, 80)));
        let v = q_airy(&q, &z, &ctx).unwrap();
        let wide = PrecisionContext::default().with_working_bits(2048).unwrap();
        let reference = q_airy(&q, &z, &wide).unwrap();
        assert!(rel(&v.value, &reference.value.round_to(256)) < 1e-29);
    }

    #[test]
    fn near_one_base_settles() {
        let ctx = PrecisionContext::default();
        let v = q_airy(&"0.99".parse().unwrap(), &arg("3"), &ctx).unwrap();
        assert!(v.value.is_finite());
        assert!(v.condition.terms > 100);
    }
}
