use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::qcore::{BigReal, ExactReal, PrecisionContext};
use crate::qfunctions::check_q;
use crate::{Error, Result};

/// Requested relative accuracy of the ξ quadrature when the context asks
/// for less.
const QUADRATURE_REL_TOL: f64 = 1e-25;
const MAX_PANELS: usize = 1 << 16;
const GAUSS_POINTS: usize = 15;

/// ξ(x) together with the quadrature that produced it.
#[derive(Clone, Debug)]
pub struct XiResult {
    pub xi: BigReal,
    /// I = ∫₀^{ln 4x} arctan √(e^s − 1) ds.
    pub integral_value: BigReal,
    /// Sum over accepted panels of |G15(panel) − G15(halves)|.
    pub quadrature_error_estimate: BigReal,
    pub panels: usize,
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<BigReal>,
    pub weights: Vec<BigReal>,
}

impl GaussLegendre {
    /// Roots of P_m by Newton iteration from the Chebyshev-like guesses
    /// cos(π(i − 1/4)/(m + 1/2)), with w_i = 2/((1 − x_i²) P_m'(x_i)²).
    pub fn new(m: usize, bits: u32) -> Self {
        let wide = bits + 32;
        let pi = Float::with_val(wide, Constant::Pi);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let eps = Float::with_val(wide, Float::i_exp(1, -(bits as i32) - 8));
        for i in 1..=m {
            let guess = Float::with_val(wide, &pi * (i as f64 - 0.25)) / (m as f64 + 0.5);
            let mut x = guess.cos();
            let mut derivative = Float::new(wide);
            for _ in 0..200 {
                let (p, dp) = legendre(m, &x);
                let step = Float::with_val(wide, &p / &dp);
                x -= &step;
                derivative = dp;
                if step.abs() < eps {
                    break;
                }
            }
            let (_, dp) = legendre(m, &x);
            derivative = if dp.is_finite() { dp } else { derivative };
            let one_minus = Float::with_val(wide, 1 - Float::with_val(wide, x.square_ref()));
            let w = Float::with_val(wide, 2) / (one_minus * derivative.square());
            nodes.push(Float::with_val(bits, &x));
            weights.push(Float::with_val(bits, &w));
        }
        Self { nodes, weights }
    }

    /// ∫_a^b f by the rule mapped to [a, b].
    pub fn integrate(&self, f: &impl Fn(&Float) -> Float, a: &Float, b: &Float) -> Float {
        let bits = a.prec().max(b.prec());
        let half = Float::with_val(bits, b - a) / 2u32;
        let mid = Float::with_val(bits, b + a) / 2u32;
        let mut sum = Float::new(bits);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let at = Float::with_val(bits, &half * x) + &mid;
            sum += Float::with_val(bits, w * f(&at));
        }
        sum * half
    }
}

/// (P_m(x), P_m'(x)) by the three-term recurrence.
fn legendre(m: usize, x: &Float) -> (Float, Float) {
    let bits = x.prec();
    let mut p0 = Float::with_val(bits, 1);
    let mut p1 = x.clone();
    for k in 2..=m {
        let kf = k as u32;
        let a = Float::with_val(bits, x * &p1) * (2 * kf - 1);
        let b = Float::with_val(bits, &p0 * (kf - 1));
        let p2 = (a - b) / kf;
        p0 = p1;
        p1 = p2;
    }
    let one_minus = Float::with_val(bits, 1 - Float::with_val(bits, x.square_ref()));
    let dp = (Float::with_val(bits, &p0 - Float::with_val(bits, x * &p1)) * m as u32) / one_minus;
    (p1, dp)
}

/// 2w·arctan √(e^{w²} − 1), the ξ integrand after s = w².
pub fn xi_integrand(w: &Float) -> Float {
    let bits = w.prec();
    let s = Float::with_val(bits, w.square_ref());
    let root = s.exp_m1().sqrt();
    Float::with_val(bits, w * root.atan()) * 2u32
}

/// ∫₀^{ln 4x} arctan √(e^s − 1) ds by adaptive 15-point Gauss–Legendre on
/// the substituted integrand over [0, √(ln 4x)].
pub fn xi_integral(x: &ExactReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal, usize)> {
    let quarter = rug::Rational::from((1, 4));
    if *x.rational() < quarter {
        return Err(Error::Domain(format!("ξ(x) needs x > 1/4, got {x}")));
    }
    let bits = ctx.plain_bits();
    if *x.rational() == quarter {
        return Ok((Float::new(bits), Float::new(bits), 0));
    }
    let rel_tol = ctx.target_rel_tol().min(QUADRATURE_REL_TOL);
    let rule = GaussLegendre::new(GAUSS_POINTS, bits);
    let four_x = x.at(bits) * 4u32;
    let upper = Float::with_val(bits, four_x.ln_ref()).sqrt();
    let zero = Float::new(bits);
    let whole = rule.integrate(&xi_integrand, &zero, &upper);
    // positive integrand: |whole| is a reliable scale for the absolute target
    let target = Float::with_val(bits, whole.abs_ref()) * rel_tol / 4u32;
    let length = Float::with_val(bits, &upper - &zero);
    let mut stack = vec![(zero, upper, whole)];
    let mut total = Float::new(bits);
    let mut error = Float::new(bits);
    let mut panels = 0usize;
    while let Some((a, b, estimate)) = stack.pop() {
        let mid = Float::with_val(bits, &a + &b) / 2u32;
        let left = rule.integrate(&xi_integrand, &a, &mid);
        let right = rule.integrate(&xi_integrand, &mid, &b);
        let refined = Float::with_val(bits, &left + &right);
        let diff = Float::with_val(bits, &refined - &estimate).abs();
        let share = Float::with_val(bits, &target * Float::with_val(bits, &b - &a)) / &length;
        if diff <= share || panels + stack.len() >= MAX_PANELS {
            if diff > share {
                return Err(Error::NonConvergent("ξ quadrature exceeded its panel budget".into()));
            }
            total += refined;
            error += diff;
            panels += 1;
        } else {
            stack.push((mid.clone(), b, right));
            stack.push((a, mid, left));
        }
    }
    Ok((total, error, panels))
}

/// ξ(x) = (3I / (2 ln(1/q)))^{2/3} with I the integral of [`xi_integral`].
pub fn xi_map(x: &ExactReal, q: &ExactReal, ctx: &PrecisionContext) -> Result<XiResult> {
    check_q(q)?;
    let (integral_value, quadrature_error_estimate, panels) = xi_integral(x, ctx)?;
    let bits = integral_value.prec();
    let ln_inv_q = -Float::with_val(bits, q.at(bits).ln_ref());
    let base = Float::with_val(bits, &integral_value * 3u32) / (ln_inv_q * 2u32);
    let xi = if base.is_zero() {
        base
    } else {
        let two_thirds = Float::with_val(bits, 2) / 3u32;
        base.pow(&two_thirds)
    };
    Ok(XiResult {
        xi,
        integral_value,
        quadrature_error_estimate,
        panels,
    })
}
