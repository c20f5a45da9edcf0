use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::AiryEvalPolicy;
use crate::qcore::{evaluate_with_escalation, BigComplex, BigReal, Certified, PrecisionContext, TermAccumulator};
use crate::{Error, Result};

const MAX_TAYLOR_TERMS: usize = 1_000_000;

/// Which path produced an Ai value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AiryPath {
    Taylor,
    Asymptotic,
}

/// Ai(x) with the path taken and an estimate of its relative error.
#[derive(Clone, Debug)]
pub struct AiryValue {
    pub value: BigReal,
    pub path: AiryPath,
    /// Tail estimate relative to |value| (asymptotic path) or the
    /// escalation tolerance (Taylor path).
    pub rel_err_estimate: BigReal,
}

/// Ai(0) = 3^(−2/3)/Γ(2/3) and −Ai'(0) = 3^(−1/3)/Γ(1/3).
pub fn airy_constants(bits: u32) -> (BigReal, BigReal) {
    let wide = bits + 16;
    let ln3 = Float::with_val(wide, 3).ln();
    let third = Float::with_val(wide, 1) / 3u32;
    let two_thirds = Float::with_val(wide, 2) / 3u32;
    let c1 = Float::with_val(wide, -Float::with_val(wide, &ln3 * &two_thirds)).exp()
        / Float::with_val(wide, two_thirds.gamma_ref());
    let c2 =
        Float::with_val(wide, -Float::with_val(wide, &ln3 * &third)).exp() / Float::with_val(wide, third.gamma_ref());
    (Float::with_val(bits, c1), Float::with_val(bits, c2))
}

/// The two Maclaurin series with their k-th term coefficients: f has terms
/// a_k x^{3k}, g has terms b_k x^{3k+1}. `derivative` selects the
/// term-wise second derivative instead of the value.
fn maclaurin(x: &Float, bits: u32, tol: &Float, derivative: bool) -> Result<crate::qcore::SeriesSum> {
    let (c1, c2) = airy_constants(bits);
    let x = Float::with_val(bits, x);
    let x3 = Float::with_val(bits, x.square_ref()) * &x;
    let mut acc = TermAccumulator::new(bits);
    // a_k = ∏_{j≤k} 1/((3j−1)·3j), b_k = ∏_{j≤k} 1/(3j·(3j+1))
    let mut a = Float::with_val(bits, 1);
    let mut b = Float::with_val(bits, 1);
    let mut x3k = Float::with_val(bits, 1);
    let mut x3k_prev = Float::new(bits); // x^{3(k−1)}
    let mut k: u32 = 0;
    loop {
        let (f_term, g_term) = if derivative {
            // (x^{3k})'' = 3k(3k−1) x^{3k−2}, (x^{3k+1})'' = (3k+1)3k x^{3k−1}
            if k == 0 {
                (Float::new(bits), Float::new(bits))
            } else {
                let x3k_minus = &x3k_prev;
                let f = Float::with_val(bits, &a * ((3 * k) * (3 * k - 1))) * Float::with_val(bits, x3k_minus * &x);
                let g = Float::with_val(bits, &b * ((3 * k + 1) * (3 * k)))
                    * Float::with_val(bits, x3k_minus * Float::with_val(bits, x.square_ref()));
                (f, g)
            }
        } else {
            (Float::with_val(bits, &a * &x3k), Float::with_val(bits, &b * &x3k) * &x)
        };
        acc.add(&BigComplex::from_real(Float::with_val(bits, &c1 * &f_term)));
        acc.sub(&BigComplex::from_real(Float::with_val(bits, &c2 * &g_term)));
        k += 1;
        let step_f = Float::with_val(64, (3 * k - 1) * (3 * k));
        let step_g = Float::with_val(64, (3 * k) * (3 * k + 1));
        a /= Float::with_val(bits, &step_f);
        b /= Float::with_val(bits, &step_g);
        x3k_prev.clone_from(&x3k);
        x3k *= &x3;
        // with R = max(|x|, 1) every later term of either series (value or
        // second derivative) is below a_k (3k+1)² R^{3k+1}, and these bounds
        // shrink at least geometrically with ratio 1/2 once R³ < (3k)²/2
        let r = Float::with_val(64, x.abs_ref()).max(&Float::with_val(64, 1));
        let r3 = Float::with_val(64, r.square_ref()) * &r;
        let ratio = Float::with_val(64, &r3 * 2u32) / Float::with_val(64, (3 * k) * (3 * k));
        if x.is_zero() && !derivative {
            break;
        }
        if ratio < 0.5 {
            let growth = Float::with_val(64, (&r).pow(3 * k + 1));
            let next = Float::with_val(64, a.abs_ref()) * growth * Float::with_val(64, (3 * k + 1) * (3 * k + 1));
            let scale = Float::with_val(64, acc.sum().abs() * tol);
            if Float::with_val(64, next * 4u32) <= scale || (x.is_zero() && k > 1) {
                break;
            }
        }
        if acc.terms() >= MAX_TAYLOR_TERMS {
            return Err(Error::NonConvergent("Airy Maclaurin series did not settle".into()));
        }
    }
    Ok(acc.finish())
}

/// Ai(x) from its Maclaurin series, certified by precision escalation.
pub fn airy_ai_taylor(x: &BigReal, ctx: &PrecisionContext) -> Result<Certified> {
    evaluate_with_escalation(ctx, |bits| maclaurin(x, bits, &ctx.truncation_tol(bits), false))
}

/// Ai''(x) from the term-wise differentiated Maclaurin series.
pub fn airy_ai_taylor_second_derivative(x: &BigReal, ctx: &PrecisionContext) -> Result<Certified> {
    evaluate_with_escalation(ctx, |bits| maclaurin(x, bits, &ctx.truncation_tol(bits), true))
}

/// u_k = (6k−5)(6k−3)(6k−1)/((2k−1)·216·k) · u_{k−1}, u_0 = 1.
fn next_u(prev: &Float, k: u32) -> Float {
    let num = Float::with_val(prev.prec(), prev * ((6 * k - 5) * (6 * k - 3)));
    num * (6 * k - 1) / ((2 * k - 1) * 216) / k
}

/// Large-|x| expansions of Ai with at most `max_terms` terms per series.
///
/// Summation stops at the first term below tol·|sum| or when the terms
/// start growing; the first omitted term is the error estimate. With
/// ζ = (2/3)|x|^{3/2}:
/// Ai(x) ~ e^{−ζ}/(2√π x^{1/4}) Σ (−1)^k u_k ζ^{−k} for x > 0 and
/// Ai(−X) ~ π^{−1/2} X^{−1/4} [cos(ζ − π/4) P + sin(ζ − π/4) Q] with
/// P = Σ (−1)^k u_{2k} ζ^{−2k}, Q = Σ (−1)^k u_{2k+1} ζ^{−2k−1}.
pub fn airy_ai_asymptotic(x: &BigReal, max_terms: u32, ctx: &PrecisionContext) -> Result<AiryValue> {
    if x.is_zero() {
        return Err(Error::Domain("asymptotic Airy expansion needs x != 0".into()));
    }
    let bits = ctx.plain_bits() + ctx.guard_bits();
    let tol = ctx.truncation_tol(bits);
    let big_x = Float::with_val(bits, x.abs_ref());
    let zeta = Float::with_val(bits, big_x.sqrt_ref()) * &big_x * 2u32 / 3u32;
    let pi = Float::with_val(bits, Constant::Pi);
    let quarter_root = Float::with_val(bits, big_x.sqrt_ref()).sqrt();
    // ratio term_k / u_k = ζ^{−k}
    let inv_zeta = Float::with_val(bits, zeta.recip_ref());
    let mut u = Float::with_val(bits, 1);
    let mut power = Float::with_val(bits, 1);
    let mut terms = Vec::new();
    let mut last_abs = Float::with_val(64, f64::INFINITY);
    let mut omitted = None;
    let needed = if *x > 0 { max_terms } else { 2 * max_terms };
    for k in 0..needed {
        if k > 0 {
            u = next_u(&u, k);
            power *= &inv_zeta;
        }
        let term = Float::with_val(bits, &u * &power);
        let magnitude = Float::with_val(64, term.abs_ref());
        if magnitude > last_abs {
            omitted = Some(magnitude);
            break;
        }
        last_abs = magnitude.clone();
        terms.push(term);
        let running: Float = terms.iter().fold(Float::new(64), |acc, t| acc + Float::with_val(64, t));
        if k > 0 && magnitude <= Float::with_val(64, running.abs() * &tol) {
            omitted = Some(magnitude);
            break;
        }
    }
    let tail = omitted.unwrap_or(last_abs);
    let sign = |k: usize| if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    if *x > 0 {
        let mut sum = Float::new(bits);
        for (k, t) in terms.iter().enumerate() {
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        let prefactor =
            Float::with_val(bits, (-zeta).exp()) / (Float::with_val(bits, pi.sqrt_ref()) * 2u32 * &quarter_root);
        let rel = Float::with_val(64, &tail / Float::with_val(64, sum.abs_ref()));
        return Ok(AiryValue {
            value: Float::with_val(ctx.plain_bits(), prefactor * sum),
            path: AiryPath::Asymptotic,
            rel_err_estimate: rel,
        });
    }
    let mut p = Float::new(bits);
    let mut q = Float::new(bits);
    for (k, t) in terms.iter().enumerate() {
        let signed = Float::with_val(bits, t * sign(k));
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
    }
    let phase = Float::with_val(bits, &zeta - Float::with_val(bits, &pi / 4u32));
    let (sin, cos) = phase.sin_cos(Float::new(bits));
    let envelope = Float::with_val(bits, pi.sqrt_ref()) * &quarter_root;
    let combined = Float::with_val(bits, &cos * &p) + Float::with_val(bits, &sin * &q);
    let value = combined / &envelope;
    // the tail multiplies a bounded trigonometric factor: compare it with
    // the oscillation envelope rather than the possibly tiny value
    let rel = Float::with_val(64, &tail / Float::with_val(64, p.hypot_ref(&q)));
    Ok(AiryValue {
        value: Float::with_val(ctx.plain_bits(), value),
        path: AiryPath::Asymptotic,
        rel_err_estimate: rel,
    })
}

/// Ai(x): Maclaurin series for |x| ≤ `taylor_cutoff`, large-|x| expansion
/// beyond it, falling back to the escalated Maclaurin series when the
/// expansion cannot reach the target tolerance.
pub fn airy_ai_with_path(x: &BigReal, policy: &AiryEvalPolicy, ctx: &PrecisionContext) -> Result<AiryValue> {
    let magnitude = Float::with_val(64, x.abs_ref());
    if magnitude > policy.taylor_cutoff() {
        let asymptotic = airy_ai_asymptotic(x, policy.asymptotic_terms(), ctx)?;
        if asymptotic.rel_err_estimate <= ctx.target_rel_tol() {
            return Ok(asymptotic);
        }
        return match airy_ai_taylor(x, ctx) {
            Ok(taylor) => Ok(from_taylor(taylor, ctx)),
            Err(Error::EscalationExhausted { .. }) => Err(Error::AsymptoticAccuracyLoss {
                x: format!("{:e}", x.to_f64()),
                detail: format!(
                    "expansion tail {:.3e} above tolerance and Maclaurin escalation exhausted",
                    asymptotic.rel_err_estimate.to_f64()
                ),
            }),
            Err(other) => Err(other),
        };
    }
    Ok(from_taylor(airy_ai_taylor(x, ctx)?, ctx))
}

fn from_taylor(taylor: Certified, ctx: &PrecisionContext) -> AiryValue {
    AiryValue {
        value: Float::with_val(ctx.plain_bits(), &taylor.value.re),
        path: AiryPath::Taylor,
        rel_err_estimate: Float::with_val(64, ctx.target_rel_tol()),
    }
}

/// Ai(x) by [`airy_ai_with_path`].
pub fn airy_ai(x: &BigReal, policy: &AiryEvalPolicy, ctx: &PrecisionContext) -> Result<BigReal> {
    airy_ai_with_path(x, policy, ctx).map(|v| v.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    #[test]
    fn value_at_origin() {
        let ctx = PrecisionContext::default();
        let v = airy_ai_taylor(&f(0.0), &ctx).unwrap().value.re;
        assert!((v.to_f64() - 0.355_028_053_887_817_2).abs() < 1e-16);
    }

    #[test]
    fn known_values() {
        let ctx = PrecisionContext::default();
        let policy = AiryEvalPolicy::default();
        // Ai(1), Ai(−1), Ai(5) from standard tables
        let cases = [
            (1.0, 0.135_292_416_312_881_4),
            (-1.0, 0.535_560_883_292_352_1),
            (5.0, 1.083_444_281_360_744e-4),
        ];
        for (x, expect) in cases {
            let v = airy_ai(&f(x), &policy, &ctx).unwrap().to_f64();
            assert!((v / expect - 1.0).abs() < 1e-14, "Ai({x}) = {v}");
        }
    }

    #[test]
    fn paths_agree_in_the_overlap_band() {
        let ctx = PrecisionContext::default();
        for x in [-25.0, -30.0, -35.0, 25.0, 30.0] {
            let taylor = airy_ai_taylor(&f(x), &ctx).unwrap().value.re;
            let asym = airy_ai_asymptotic(&f(x), 60, &ctx).unwrap();
            let scale = if x < 0.0 {
                f(x).abs().sqrt().sqrt().recip()
            } else {
                taylor.clone().abs()
            };
            let diff = Float::with_val(256, &taylor - &asym.value).abs() / scale;
            assert!(diff < 1e-20, "x = {x}: {}", diff.to_f64());
        }
    }

    #[test]
    fn ode_holds_termwise() {
        let ctx = PrecisionContext::default();
        for x in [-10.0, -1.0, 0.0, 1.0, 5.0] {
            let ai = airy_ai_taylor(&f(x), &ctx).unwrap().value.re;
            let second = airy_ai_taylor_second_derivative(&f(x), &ctx).unwrap().value.re;
            let residual = Float::with_val(256, &second - Float::with_val(256, &ai * x)).abs();
            let scale = ai.abs().max(&Float::with_val(256, Float::i_exp(1, -128)));
            assert!(residual / scale < 1e-25, "x = {x}");
        }
    }
}
