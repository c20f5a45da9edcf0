//! The q → 1 limit of A_q(√q·x): ξ(x) by adaptive Gauss–Legendre
//! quadrature, a real Airy function with Maclaurin and large-|x| paths, and
//! the composed approximation
//! 2√π exp((3 ln²x − π²)/(12 ln(1/q))) (ξ/(4x − 1))^{1/4} Ai(−ξ).

mod ai;
mod xi;

use rug::float::Constant;
use rug::Float;

use crate::qcore::{BigReal, ExactReal, PrecisionContext};
use crate::{Error, Result};

pub use ai::{
    airy_ai, airy_ai_asymptotic, airy_ai_taylor, airy_ai_taylor_second_derivative, airy_ai_with_path, airy_constants,
    AiryPath, AiryValue,
};
pub use xi::{xi_integral, xi_integrand, xi_map, GaussLegendre, XiResult};

/// How [`airy_ai`] chooses between its two paths.
#[derive(Clone, Debug, PartialEq)]
pub struct AiryEvalPolicy {
    taylor_cutoff: f64,
    asymptotic_terms: u32,
    overlap_band: (f64, f64),
}

impl Default for AiryEvalPolicy {
    fn default() -> Self {
        Self {
            taylor_cutoff: 30.0,
            asymptotic_terms: 60,
            overlap_band: (25.0, 35.0),
        }
    }
}

impl AiryEvalPolicy {
    /// `asymptotic_terms` caps each asymptotic series; summation stops
    /// earlier once the terms fall below the target tolerance.
    pub fn new(taylor_cutoff: f64, asymptotic_terms: u32, overlap_band: (f64, f64)) -> Result<Self> {
        let (lo, hi) = overlap_band;
        // written so that NaN endpoints are rejected
        let inside = lo > 0.0 && lo <= taylor_cutoff && taylor_cutoff <= hi;
        if !inside {
            return Err(Error::InvalidContext(format!(
                "taylor cutoff {taylor_cutoff} must lie inside the overlap band [{lo}, {hi}]"
            )));
        }
        if asymptotic_terms == 0 {
            return Err(Error::InvalidContext("asymptotic_terms must be positive".into()));
        }
        Ok(Self {
            taylor_cutoff,
            asymptotic_terms,
            overlap_band,
        })
    }

    pub fn taylor_cutoff(&self) -> f64 {
        self.taylor_cutoff
    }

    pub fn asymptotic_terms(&self) -> u32 {
        self.asymptotic_terms
    }

    pub fn overlap_band(&self) -> (f64, f64) {
        self.overlap_band
    }
}

/// 2√π · exp((3 ln²x − π²)/(12 ln(1/q))) · (ξ(x)/(4x − 1))^{1/4} · Ai(−ξ(x)),
/// the q → 1 approximation of A_q(√q·x) for x > 1/4.
pub fn q_airy_limit_q_to_1(
    x: &ExactReal,
    q: &ExactReal,
    policy: &AiryEvalPolicy,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if rug::Rational::from(x.rational() * 4u32) <= 1 {
        return Err(Error::Domain(format!("the q → 1 limit needs x > 1/4, got {x}")));
    }
    let xi = xi_map(x, q, ctx)?.xi;
    let ai = airy_ai(&Float::with_val(xi.prec(), -&xi), policy, ctx)?;
    let bits = ctx.plain_bits() + ctx.guard_bits();
    let pi = Float::with_val(bits, Constant::Pi);
    let xv = x.at(bits);
    let ln_x = Float::with_val(bits, xv.ln_ref());
    let ln_inv_q = -Float::with_val(bits, q.at(bits).ln_ref());
    let numerator = Float::with_val(bits, ln_x.square_ref()) * 3u32 - Float::with_val(bits, pi.square_ref());
    let exponent = numerator / (ln_inv_q * 12u32);
    let ratio = Float::with_val(bits, &xi) / (xv * 4u32 - 1u32);
    let fourth_root = ratio.sqrt().sqrt();
    let value = Float::with_val(bits, pi.sqrt_ref()) * 2u32 * exponent.exp() * fourth_root * ai;
    Ok(Float::with_val(ctx.plain_bits(), value))
}
