use rug::{Float, Integer, Rational};

use super::{delta_of_t, sigma_of_t, ApproxOptions, ApproxReport, RegionTag};
use crate::qcore::{
    evaluate_with_escalation, qq_table, ArgFn, BigComplex, BigReal, Certified, ComplexArg, ExactReal, PrecisionContext,
    TermAccumulator,
};
use crate::qfunctions::{q_airy, q_power, stieltjes_wigert_scaled, EvalPoint, QParams, MAX_SERIES_TERMS};
use crate::{Error, Result};

/// q^(n(1−σ))/(1−q) + 2/(1−q)·(1/2)^⌊nσ⌋, the factor multiplying A_q(−|z|)
/// in the inner remainder bound.
pub fn inner_bound_factor(params: &QParams, sigma: &ExactReal, bits: u32) -> BigReal {
    let n = params.n();
    let one_minus = Rational::from(1) - sigma.rational();
    bound_factor(params, &(one_minus * n), &sigma.floor_times(&n.into()), bits)
}

/// q^(n(δ−1))/(1−q) + 2/(1−q)·(1/2)^⌊n(2−δ)⌋, the factor multiplying
/// A_q(−|q^(−2n)/z|) in the outer remainder bound.
pub fn outer_bound_factor(params: &QParams, delta: &ExactReal, bits: u32) -> BigReal {
    let n = params.n();
    let excess = Rational::from(delta.rational() - 1u32) * n;
    let two_minus = Rational::from(2u32 - delta.rational()) * n;
    bound_factor(params, &excess, &two_minus.floor().numer().clone(), bits)
}

fn bound_factor(params: &QParams, q_exponent: &Rational, halvings: &Integer, bits: u32) -> BigReal {
    let q = params.q().at(bits);
    let one_minus_q = Float::with_val(bits, 1 - &q);
    let geometric = q_power(params.q(), q_exponent, bits) / &one_minus_q;
    let halvings = halvings.to_i32().unwrap_or(i32::MAX);
    let dyadic = Float::with_val(bits, Float::i_exp(1, 1i32.saturating_sub(halvings))) / one_minus_q;
    geometric + dyadic
}

/// r_n(z) = (q;q)_n S_n(z) − A_q(z), summed term by term.
///
/// With d_j = 1 − ∏_{i=n−j+1}^{n}(1 − q^i), built by the cancellation-free
/// recurrence d_j = d_{j−1} + q^(n−j+1)(1 − d_{j−1}),
/// r_n = −Σ_{j≤n} d_j q^(j²)/(q;q)_j (−z)^j − Σ_{j>n} q^(j²)/(q;q)_j (−z)^j.
/// Unlike the difference of the two sides, this keeps full relative accuracy
/// when r_n is tiny.
pub fn remainder_series(params: &QParams, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    let n = params.n();
    evaluate_with_escalation(ctx, |bits| {
        let q = params.q().at(bits);
        let q_sq = Float::with_val(bits, q.square_ref());
        let trunc_tol = ctx.truncation_tol(bits);
        let minus_z = -&z.at(bits);
        let z_abs = Float::with_val(64, minus_z.abs());
        // q^i for i = 0..=n
        let mut powers = Vec::with_capacity(n as usize + 1);
        powers.push(Float::with_val(bits, 1));
        for i in 1..=n as usize {
            let next = Float::with_val(bits, &powers[i - 1] * &q);
            powers.push(next);
        }
        let mut acc = TermAccumulator::new(bits);
        let mut term = BigComplex::one(bits); // q^{j²}/(q;q)_j (−z)^j
        let mut d = Float::new(bits);
        let mut q_odd = q.clone();
        let mut q_next = q.clone();
        let mut j: u32 = 0;
        loop {
            if j <= n {
                acc.sub(&term.scale(&d));
            } else {
                acc.sub(&term);
            }
            let denom = Float::with_val(bits, 1 - &q_next);
            let factor = Float::with_val(bits, &q_odd / &denom);
            term = (&term * &minus_z).scale(&factor);
            if j >= n {
                let ratio = Float::with_val(64, &factor * &z_abs);
                if ratio < 1 {
                    let tail = Float::with_val(64, term.abs() / (1 - ratio));
                    let scale = Float::with_val(64, acc.sum().abs() * &trunc_tol);
                    if tail <= scale || term.is_zero() {
                        break;
                    }
                }
            } else {
                let x = &powers[(n - j) as usize];
                let one_minus_d = Float::with_val(bits, 1 - &d);
                d += Float::with_val(bits, x * &one_minus_d);
            }
            q_odd *= &q_sq;
            q_next *= &q;
            j += 1;
            if acc.terms() >= MAX_SERIES_TERMS {
                return Err(Error::NonConvergent("remainder series did not settle".into()));
            }
        }
        Ok(acc.finish())
    })
}

/// S_n(z) ≈ A_q(z)/(q;q)_n for t < 2, with
/// |(q;q)_n S_n(z) − A_q(z)| ≤ [q^(n(1−σ))/(1−q) + 2/(1−q)·2^(−⌊nσ⌋)]·A_q(−|z|).
pub fn approx_inner(point: &EvalPoint, options: &ApproxOptions, ctx: &PrecisionContext) -> Result<ApproxReport> {
    let sigma = sigma_of_t(point.t())?;
    let params = point.params();
    let q = params.q();
    let core = q_airy(q, point, ctx)?.value;
    let bits = ctx.plain_bits();
    let qq_n = qq_table(&q.at(bits), params.n(), bits).pop().expect("non-empty");
    let prefactor = BigComplex::from_real(Float::with_val(bits, qq_n.recip_ref()));
    let abs_arg = ArgFn(|b: u32| BigComplex::from_real(-point.at(b).abs()));
    let scale = q_airy(q, &abs_arg, ctx)?.value.re;
    let core_bound = inner_bound_factor(params, &sigma, bits) * scale;
    let bound = Float::with_val(bits, &core_bound / &qq_n);
    let approx = &core * &prefactor;
    let mut report = ApproxReport {
        region: RegionTag::Inner,
        sigma_or_delta: sigma,
        approx,
        core,
        prefactor,
        bound,
        core_bound,
        exact: None,
        exact_core: None,
        remainder: None,
        realized_rel_err: None,
    };
    if options.with_exact {
        fill_exact(&mut report, params, point, ctx)?;
    }
    Ok(report)
}

/// S_n(z) ≈ (−z)^n q^(n²)/(q;q)_n · A_q(q^(−2n)/z) for t > 0, with the
/// bracket on the right bounded by
/// [q^(n(δ−1))/(1−q) + 2/(1−q)·2^(−⌊n(2−δ)⌋)]·A_q(−|q^(−2n)/z|).
///
/// The prefactor is exp(n·Log(−z) + n² ln q − ln (q;q)_n) with the
/// principal Log; since q^(−nt) > 0, Log(−z) = Log(−u) − n t ln q exactly.
pub fn approx_outer(point: &EvalPoint, options: &ApproxOptions, ctx: &PrecisionContext) -> Result<ApproxReport> {
    let delta = delta_of_t(point.t())?;
    if point.u().is_zero() {
        return Err(Error::Domain("outer approximant needs u != 0".into()));
    }
    let params = point.params();
    let q = params.q();
    let n = params.n();
    // w = q^(−2n)/z = q^(n(t−2))/u
    let w_exponent = point.nt() - Rational::from(2 * n);
    let w = ArgFn(|b: u32| {
        let wide = b + 16;
        let scale = q_power(q, &w_exponent, wide);
        point.u().at(wide).recip().scale(&scale).round_to(b)
    });
    let core = q_airy(q, &w, ctx)?.value;
    let bits = ctx.plain_bits();
    let prefactor = outer_prefactor(point, bits);
    let abs_arg = ArgFn(|b: u32| BigComplex::from_real(-w.at(b).abs()));
    let scale = q_airy(q, &abs_arg, ctx)?.value.re;
    let core_bound = outer_bound_factor(params, &delta, bits) * scale;
    let bound = Float::with_val(bits, &core_bound * prefactor.abs());
    let approx = &core * &prefactor;
    let mut report = ApproxReport {
        region: RegionTag::Outer,
        sigma_or_delta: delta,
        approx,
        core,
        prefactor,
        bound,
        core_bound,
        exact: None,
        exact_core: None,
        remainder: None,
        realized_rel_err: None,
    };
    if options.with_exact {
        fill_exact(&mut report, params, &w, ctx)?;
    }
    Ok(report)
}

fn outer_prefactor(point: &EvalPoint, bits: u32) -> BigComplex {
    let params = point.params();
    let n = params.n();
    let probe = 64;
    let magnitude_guess = {
        let u_abs = point.u().at(probe).abs().to_f64().abs().max(1e-300);
        let ln_q = params.q().to_f64().ln().abs();
        let nt = point.nt().to_f64().abs();
        f64::from(n) * (u_abs.ln().abs() + nt * ln_q + 4.0) + f64::from(n).powi(2) * ln_q
    };
    let extra = magnitude_guess.max(2.0).log2().ceil() as u32 + 16;
    let wide = bits + extra;
    let q = params.q().at(wide);
    let ln_q = Float::with_val(wide, q.ln_ref());
    let log_minus_u = (-&point.u().at(wide)).ln();
    let n_sq_minus = Rational::from(n) * n - point.nt() * Rational::from(n);
    let real_shift = Float::with_val(wide, &n_sq_minus) * &ln_q;
    let qq_n = qq_table(&q, n, wide).pop().expect("non-empty");
    let ln_qq = Float::with_val(wide, qq_n.ln_ref());
    let nf = Float::with_val(wide, n);
    let exponent = BigComplex::new(
        Float::with_val(wide, &log_minus_u.re * &nf) + real_shift - ln_qq,
        Float::with_val(wide, &log_minus_u.im * &nf),
    );
    exponent.exp().round_to(bits)
}

fn fill_exact(
    report: &mut ApproxReport,
    params: &QParams,
    arg: &impl ComplexArg,
    ctx: &PrecisionContext,
) -> Result<()> {
    let exact_core = stieltjes_wigert_scaled(params, arg, ctx)?.value;
    let remainder = remainder_series(params, arg, ctx)?.value;
    let bits = report.prefactor.prec().max(exact_core.prec());
    let realized = if exact_core.is_zero() {
        Float::with_val(64, rug::float::Special::Nan)
    } else {
        Float::with_val(64, remainder.abs() / exact_core.abs())
    };
    report.exact = Some((&exact_core.round_to(bits) * &report.prefactor).round_to(bits));
    report.exact_core = Some(exact_core);
    report.remainder = Some(remainder);
    report.realized_rel_err = Some(realized);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ExactComplex;

    fn point(q: &str, n: u32, u: &str, t: &str) -> EvalPoint {
        let ctx = PrecisionContext::default();
        EvalPoint::new(
            QParams::new(q.parse().unwrap(), n).unwrap(),
            ExactComplex::parse(u).unwrap(),
            t.parse().unwrap(),
            &ctx,
        )
    }

    fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
        let bits = a.prec().max(b.prec());
        ((&a.round_to(bits) - &b.round_to(bits)).abs() / b.abs()).to_f64()
    }

    #[test]
    fn origin_is_exact() {
        let ctx = PrecisionContext::default();
        let p = point("0.5", 20, "0", "0");
        let r = approx_inner(&p, &ApproxOptions::with_exact(), &ctx).unwrap();
        assert!(r.remainder.unwrap().is_zero());
        assert_eq!(r.core, BigComplex::one(256));
    }

    #[test]
    fn remainder_series_matches_difference() {
        let ctx = PrecisionContext::default();
        let p = point("0.5", 10, "1,1", "0.5");
        let r = approx_inner(&p, &ApproxOptions::with_exact(), &ctx).unwrap();
        let diff = r.exact_core.as_ref().unwrap() - &r.core;
        assert!(rel(r.remainder.as_ref().unwrap(), &diff) < 1e-20);
        assert!(r.remainder.unwrap().abs() <= r.core_bound);
    }

    #[test]
    fn table_cell_at_origin_radius() {
        let ctx = PrecisionContext::default();
        let p = point("0.5", 50, "1", "0");
        let r = approx_inner(&p, &ApproxOptions::with_exact(), &ctx).unwrap();
        let exact = r.exact_core.unwrap().re.to_f64();
        assert!((exact - 0.160763788932089).abs() < 1e-14);
        let err = r.realized_rel_err.unwrap().to_f64();
        assert!((err / 2.99e-15 - 1.0).abs() < 0.01, "{err}");
    }

    #[test]
    fn outer_reproduces_exact_value() {
        let ctx = PrecisionContext::default();
        let p = point("0.5", 50, "1", "1.6");
        let r = approx_outer(&p, &ApproxOptions::with_exact(), &ctx).unwrap();
        let exact = r.exact.as_ref().unwrap();
        let scaled = qq_table(&Float::with_val(256, 0.5), 50, 256).pop().unwrap();
        let true_scaled = exact.scale(&scaled);
        let (m, e) = true_scaled.re.to_f64_exp();
        let decimal = f64::from(e) * std::f64::consts::LOG10_2 + m.abs().log10();
        assert!((decimal - (1.86485234305153f64.log10() + 481.0)).abs() < 1e-12);
        assert!(r.remainder.unwrap().abs() <= r.core_bound);
        assert!(rel(&r.approx, exact) < 1e-10);
    }

    #[test]
    fn outer_at_t_two_is_the_inner_formula_at_u() {
        // q^(−2n)/z = 1/u when t = 2
        let ctx = PrecisionContext::default();
        let p = point("0.5", 50, "1", "2");
        let outer = approx_outer(&p, &ApproxOptions::default(), &ctx).unwrap();
        let at_one = point("0.5", 50, "1", "0");
        let inner = approx_inner(&at_one, &ApproxOptions::default(), &ctx).unwrap();
        assert!(rel(&outer.core, &inner.core) < 1e-29);
    }

    #[test]
    fn outer_rejects_bad_points() {
        let ctx = PrecisionContext::default();
        assert!(approx_outer(&point("0.5", 5, "0", "1"), &ApproxOptions::default(), &ctx).is_err());
        assert!(approx_outer(&point("0.5", 5, "1", "0"), &ApproxOptions::default(), &ctx).is_err());
        assert!(approx_inner(&point("0.5", 5, "1", "2"), &ApproxOptions::default(), &ctx).is_err());
    }
}
