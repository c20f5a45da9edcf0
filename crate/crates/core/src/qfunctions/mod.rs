//! Series and product evaluation of the q-objects: S_n(x; q), p_n(x),
//! A_q(z), A_{q,n}(z), Θ_q(z) and the weight w(x).
//!
//! Every alternating sum runs under
//! [`evaluate_with_escalation`](crate::qcore::evaluate_with_escalation);
//! arguments are [`ComplexArg`]s so that re-runs at higher precision see
//! freshly rounded inputs.

mod qairy;
mod stieltjes;
mod theta;

use rug::{Float, Rational};

use crate::qcore::{BigComplex, ComplexArg, ExactComplex, ExactReal, PrecisionContext};
use crate::{Error, Result};

pub(crate) use qairy::MAX_SERIES_TERMS;
pub use qairy::{q_airy, q_airy_poly};
pub use stieltjes::{k_from_q, stieltjes_wigert, stieltjes_wigert_scaled, sw_p, symmetry_residual, weight_w};
pub use theta::theta_q;

/// Base q ∈ (0, 1) and polynomial degree n.
#[derive(Clone, Debug, PartialEq)]
pub struct QParams {
    q: ExactReal,
    n: u32,
}

impl QParams {
    pub fn new(q: ExactReal, n: u32) -> Result<Self> {
        check_q(&q)?;
        Ok(Self { q, n })
    }

    pub fn q(&self) -> &ExactReal {
        &self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

pub(crate) fn check_q(q: &ExactReal) -> Result<()> {
    let r = q.rational();
    if *r <= 0 || *r >= 1 {
        return Err(Error::Domain(format!("q must satisfy 0 < q < 1, got {q}")));
    }
    Ok(())
}

/// The scaled coordinate z = u·q^(−n·t).
///
/// `z` is cached at the precision the point was built with; certified
/// evaluations call [`EvalPoint::z_at`] to recompute it at whatever
/// precision they escalate to.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    params: QParams,
    u: ExactComplex,
    t: ExactReal,
    z: BigComplex,
}

impl EvalPoint {
    pub fn new(params: QParams, u: ExactComplex, t: ExactReal, ctx: &PrecisionContext) -> Self {
        let z = scaled_z(&params, &u, &t, ctx.working_bits());
        Self { params, u, t, z }
    }

    pub fn params(&self) -> &QParams {
        &self.params
    }

    pub fn u(&self) -> &ExactComplex {
        &self.u
    }

    pub fn t(&self) -> &ExactReal {
        &self.t
    }

    /// z at the precision the point was constructed with.
    pub fn z(&self) -> &BigComplex {
        &self.z
    }

    pub fn z_at(&self, bits: u32) -> BigComplex {
        if bits == self.z.prec() {
            return self.z.clone();
        }
        scaled_z(&self.params, &self.u, &self.t, bits)
    }

    /// n·t exactly.
    pub fn nt(&self) -> Rational {
        Rational::from(self.t.rational() * self.params.n)
    }
}

impl ComplexArg for EvalPoint {
    fn at(&self, bits: u32) -> BigComplex {
        self.z_at(bits)
    }
}

/// q^e for an exact rational exponent, through an integer power when e is
/// an integer and exp(e·ln q) otherwise.
pub(crate) fn q_power(q: &ExactReal, exponent: &Rational, bits: u32) -> Float {
    if exponent.is_integer() {
        if let Some(e) = exponent.numer().to_i32() {
            let wide = bits + 2 * (32 - e.unsigned_abs().leading_zeros()) + 8;
            let base = q.at(wide);
            return Float::with_val(bits, rug::ops::Pow::pow(&base, e));
        }
    }
    let magnitude = exponent.to_f64().abs() * q.to_f64().ln().abs();
    let extra = (magnitude.max(1.0).log2().ceil() as u32) + 16;
    let wide = bits + extra;
    let ln_q = Float::with_val(wide, q.at(wide).ln_ref());
    let y = Float::with_val(wide, exponent) * ln_q;
    Float::with_val(bits, y.exp_ref())
}

fn scaled_z(params: &QParams, u: &ExactComplex, t: &ExactReal, bits: u32) -> BigComplex {
    let exponent = -Rational::from(t.rational() * params.n);
    let scale = q_power(&params.q, &exponent, bits + 8);
    u.at(bits + 8).scale(&scale).round_to(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_outside_unit_interval_is_rejected() {
        for bad in ["0", "1", "-0.5", "1.5"] {
            assert!(QParams::new(bad.parse().unwrap(), 3).is_err(), "{bad}");
        }
    }

    #[test]
    fn z_uses_integer_powers_when_possible() {
        let ctx = PrecisionContext::default();
        let params = QParams::new("0.5".parse().unwrap(), 50).unwrap();
        let p = EvalPoint::new(params, ExactComplex::from_real(1.into()), "1.6".parse().unwrap(), &ctx);
        // 0.5^(-80) = 2^80 exactly
        assert_eq!(p.z().re, Float::with_val(256, Float::i_exp(1, 80)));
        assert_eq!(p.nt(), 80);
    }

    #[test]
    fn z_at_higher_precision_refines() {
        let ctx = PrecisionContext::default();
        let params = QParams::new("0.7".parse().unwrap(), 10).unwrap();
        let p = EvalPoint::new(
            params,
            ExactComplex::parse("1,1").unwrap(),
            "0.35".parse().unwrap(),
            &ctx,
        );
        let lo = p.z_at(256);
        let hi = p.z_at(1024);
        let rel = (&hi.round_to(256) - &lo).abs() / lo.abs();
        assert!(rel < 1e-75);
        let expect = 0.7f64.powf(-3.5);
        assert!((lo.re.to_f64() - expect).abs() < 1e-12 * expect);
    }
}
