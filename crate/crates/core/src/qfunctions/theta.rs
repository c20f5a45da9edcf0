use rug::Float;

use super::check_q;
use crate::qcore::{
    evaluate_with_escalation, BigComplex, Certified, ComplexArg, ExactReal, PrecisionContext, SeriesSum,
    TermAccumulator,
};
use crate::{Error, Result};

use super::MAX_SERIES_TERMS;

/// One run of Θ_q(z) = Σ_{k∈ℤ} q^{k²} z^k at `bits`.
///
/// Both tails advance together; k grows until each side is past its hump
/// (q^{2k+1}|z|^{±1} < 1) and its geometric tail bound is below
/// `trunc_tol·|partial sum|`.
pub(crate) fn theta_sum(q: &Float, z: &BigComplex, bits: u32, trunc_tol: &Float) -> Result<SeriesSum> {
    if z.is_zero() {
        return Err(Error::Domain("theta function needs z != 0".into()));
    }
    let q = Float::with_val(bits, q);
    let q_sq = Float::with_val(bits, q.square_ref());
    let z = z.round_to(bits);
    let z_inv = z.recip();
    let z_abs = Float::with_val(64, z.abs());
    let z_inv_abs = Float::with_val(64, z_abs.recip_ref());
    let mut acc = TermAccumulator::new(bits);
    acc.add(&BigComplex::one(bits));
    let mut up = BigComplex::one(bits); // q^{k²} z^k
    let mut down = BigComplex::one(bits); // q^{k²} z^{−k}
    let mut q_odd = q.clone(); // q^{2k+1}
    loop {
        up = (&up * &z).scale(&q_odd);
        down = (&down * &z_inv).scale(&q_odd);
        acc.add(&up);
        acc.add(&down);
        q_odd *= &q_sq;
        let scale = Float::with_val(64, acc.sum().abs() * trunc_tol);
        let settled = |term: &BigComplex, growth: &Float| {
            let ratio = Float::with_val(64, &q_odd * growth);
            ratio < 1 && Float::with_val(64, term.abs() * &ratio / (1 - ratio)) <= scale
        };
        if settled(&up, &z_abs) && settled(&down, &z_inv_abs) {
            break;
        }
        if acc.terms() >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergent(format!(
                "theta series did not settle within {MAX_SERIES_TERMS} terms"
            )));
        }
    }
    Ok(acc.finish())
}

/// Θ_q(z) = Σ_{k=−∞}^{∞} q^{k²} z^k for z ≠ 0.
pub fn theta_q(q: &ExactReal, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    check_q(q)?;
    evaluate_with_escalation(ctx, |bits| {
        theta_sum(&q.at(bits), &z.at(bits), bits, &ctx.truncation_tol(bits))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ExactComplex;

    fn arg(s: &str) -> ExactComplex {
        ExactComplex::parse(s).unwrap()
    }

    #[test]
    fn zero_argument_is_a_domain_error() {
        let ctx = PrecisionContext::default();
        let err = theta_q(&"0.5".parse().unwrap(), &arg("0"), &ctx).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn inversion_symmetry() {
        let ctx = PrecisionContext::default();
        let q: ExactReal = "0.5".parse().unwrap();
        let z = arg("2,1");
        let inv = ArgInv(&z);
        let a = theta_q(&q, &z, &ctx).unwrap().value;
        let b = theta_q(&q, &inv, &ctx).unwrap().value;
        assert!((&a - &b).abs() / a.abs() < 1e-29);
    }

    struct ArgInv<'a>(&'a ExactComplex);

    impl ComplexArg for ArgInv<'_> {
        fn at(&self, bits: u32) -> BigComplex {
            self.0.at(bits + 16).recip().round_to(bits)
        }
    }

    #[test]
    fn quasi_periodicity() {
        let ctx = PrecisionContext::default();
        let q: ExactReal = "0.7".parse().unwrap();
        let z = arg("3");
        let shifted = z.scaled(&rug::Rational::from(q.rational().square_ref()));
        let a = theta_q(&q, &z, &ctx).unwrap().value;
        let b = theta_q(&q, &shifted, &ctx).unwrap().value;
        let qz = z.scaled(q.rational()).at(256);
        let rhs = &a / &qz;
        assert!((&b - &rhs).abs() / b.abs() < 1e-29);
    }
}
