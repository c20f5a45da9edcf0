use rug::{Float, Integer, Rational};

use crate::qcore::{q_pochhammer_inf, ArgFn, BigComplex, BigReal, ComplexArg, ExactReal, PrecisionContext};
use crate::qfunctions::{q_power, theta_q, EvalPoint};
use crate::{Error, Result};

/// The Θ_q-region formula for 1 ≤ t < 2.
#[derive(Clone, Debug)]
pub struct ThetaRegionApprox {
    /// Approximation of S_n(z).
    pub value: BigComplex,
    /// q^(n(l−δ)) for the caller's small δ. A magnitude, not a bound: the
    /// error term has no explicit constant.
    pub heuristic_rel_err: BigReal,
    /// m = ⌊n·l⌋ with l = (2 − t)/2.
    pub m: i64,
}

fn check_theta_point(point: &EvalPoint) -> Result<Rational> {
    let t = point.t().rational();
    if *t < 1 || *t >= 2 {
        return Err(Error::Domain(format!(
            "Θ-region formula needs 1 <= t < 2, got {}",
            point.t()
        )));
    }
    if point.u().is_zero() {
        return Err(Error::Domain("Θ-region formula needs u != 0".into()));
    }
    // l = (2 − t)/2
    Ok(Rational::from(2u32 - t) / 2u32)
}

/// S_n(z) ≈ (−u)^(n−m) q^(n²(1−t) − m[n(2−t) − m]) / ((q;q)_n (q;q)_∞)
/// · Θ_q(q^(2m − n(2−t))/(−u)) with m = ⌊n(2 − t)/2⌋.
pub fn theta_region_approx(
    point: &EvalPoint,
    small_delta: &ExactReal,
    ctx: &PrecisionContext,
) -> Result<ThetaRegionApprox> {
    let l = check_theta_point(point)?;
    let n = point.params().n();
    let m = Rational::from(&l * n).floor().numer().to_i64().expect("m fits in i64");
    let value = theta_region_approx_with_m(point, m, ctx)?;
    let exponent = Rational::from(&l - small_delta.rational()) * n;
    let heuristic_rel_err = Float::with_val(64, q_power(point.params().q(), &exponent, 64));
    Ok(ThetaRegionApprox {
        value,
        heuristic_rel_err,
        m,
    })
}

/// The Θ_q-region formula with an explicit m. By Θ_q(q²x) = Θ_q(x)/(qx)
/// the value does not depend on m; only the conditioning does.
pub fn theta_region_approx_with_m(point: &EvalPoint, m: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    check_theta_point(point)?;
    let params = point.params();
    let q = params.q();
    let n = params.n();
    let m_r = Rational::from(m);
    // n(2 − t)
    let span = Rational::from(2 * n) - point.nt();
    let arg_exponent = Rational::from(&m_r * 2u32) - &span;
    let minus_u = ExactReal::from_rational(-point.u().re.rational().clone());
    let minus_u = crate::qcore::ExactComplex::new(minus_u, ExactReal::from_rational(-point.u().im.rational().clone()));
    let theta_arg = ArgFn(|b: u32| {
        let wide = b + 16;
        minus_u
            .at(wide)
            .recip()
            .scale(&q_power(q, &arg_exponent, wide))
            .round_to(b)
    });
    let theta = theta_q(q, &theta_arg, ctx)?;
    let bits = theta.condition.final_bits.max(ctx.plain_bits()) + ctx.guard_bits();
    let n_r = Rational::from(n);
    let power_exponent =
        Rational::from(&n_r * &n_r) * (Rational::from(1) - point.t().rational()) - &m_r * (span - &m_r);
    let q_factor = q_power(q, &power_exponent, bits);
    let qq_n = crate::qcore::qq_table(&q.at(bits), n, bits).pop().expect("non-empty");
    let wide_ctx = ctx.with_working_bits(bits)?;
    let qq_inf = q_pochhammer_inf(&BigComplex::from_real(q.at(bits)), &q.at(bits), &wide_ctx)?
        .value
        .re;
    let u_power = minus_u.at(bits).powi(i64::from(n) - m);
    let scale = q_factor / (qq_n * qq_inf);
    let out = (&u_power * &theta.value.round_to(bits)).scale(&scale);
    Ok(out.round_to(ctx.plain_bits()))
}

/// m = ⌊ln|z| / (2 ln(1/q))⌋, the index used by [`q_airy_large_z`].
pub fn large_z_index(q: &ExactReal, z: &BigComplex) -> Result<i64> {
    crate::qfunctions::check_q(q)?;
    let bits = z.prec().max(128);
    let modulus = z.abs();
    if modulus <= 1 {
        return Err(Error::Domain(format!(
            "large-z relation needs |z| > 1, got {}",
            modulus.to_f64()
        )));
    }
    let ratio = Float::with_val(bits, modulus.ln_ref()) / (-Float::with_val(bits, q.at(bits).ln_ref()) * 2u32);
    let floor = ratio.floor().to_integer().unwrap_or_default();
    floor
        .to_i64()
        .ok_or_else(|| Error::Domain("large-z index does not fit in i64".into()))
}

/// A_q(z) ≈ (−z)^m q^(m²)/(q;q)_∞ · Θ_q(−q^(2m) z) for |z| > 1, with
/// m from [`large_z_index`]. The relative error is O(q^(m(1−δ))).
pub fn q_airy_large_z(q: &ExactReal, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<BigComplex> {
    let probe = z.at(ctx.plain_bits());
    let m = large_z_index(q, &probe)?;
    let two_m = Rational::from(Integer::from(2 * m));
    let theta_arg = ArgFn(|b: u32| {
        let wide = b + 16;
        (-&z.at(wide).scale(&q_power(q, &two_m, wide))).round_to(b)
    });
    let theta = theta_q(q, &theta_arg, ctx)?;
    let bits = theta.condition.final_bits.max(ctx.plain_bits()) + ctx.guard_bits();
    let wide_ctx = ctx.with_working_bits(bits)?;
    let qq_inf = q_pochhammer_inf(&BigComplex::from_real(q.at(bits)), &q.at(bits), &wide_ctx)?
        .value
        .re;
    let m_sq = Rational::from(Integer::from(m) * m);
    let scale = q_power(q, &m_sq, bits) / qq_inf;
    let z_power = (-&z.at(bits)).powi(m);
    let out = (&z_power * &theta.value.round_to(bits)).scale(&scale);
    Ok(out.round_to(ctx.plain_bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ExactComplex;
    use crate::qfunctions::{q_airy, stieltjes_wigert, QParams};

    fn point(n: u32, u: &str, t: &str) -> EvalPoint {
        EvalPoint::new(
            QParams::new("0.5".parse().unwrap(), n).unwrap(),
            ExactComplex::parse(u).unwrap(),
            t.parse().unwrap(),
            &PrecisionContext::default(),
        )
    }

    fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
        let bits = a.prec().max(b.prec());
        ((&a.round_to(bits) - &b.round_to(bits)).abs() / b.abs()).to_f64()
    }

    #[test]
    fn theta_formula_tracks_exact_values() {
        let ctx = PrecisionContext::default();
        let delta: ExactReal = "0.1".parse().unwrap();
        let p = point(50, "1", "1");
        let approx = theta_region_approx(&p, &delta, &ctx).unwrap();
        let exact = stieltjes_wigert(p.params(), &p, &ctx).unwrap().value;
        assert_eq!(approx.m, 25);
        let dev = rel(&approx.value, &exact);
        assert!(dev < approx.heuristic_rel_err.to_f64(), "{dev}");

        let coarse = rel(
            &theta_region_approx(&point(50, "-1", "1.5"), &delta, &ctx)
                .unwrap()
                .value,
            &stieltjes_wigert(point(50, "-1", "1.5").params(), &point(50, "-1", "1.5"), &ctx)
                .unwrap()
                .value,
        );
        let fine_point = point(100, "-1", "1.5");
        let fine = rel(
            &theta_region_approx(&fine_point, &delta, &ctx).unwrap().value,
            &stieltjes_wigert(fine_point.params(), &fine_point, &ctx).unwrap().value,
        );
        assert!(fine < coarse, "{fine} vs {coarse}");
    }

    #[test]
    fn theta_formula_is_m_invariant() {
        let ctx = PrecisionContext::default();
        let p = point(50, "1", "1");
        let base = theta_region_approx_with_m(&p, 25, &ctx).unwrap();
        for m in [24, 26] {
            let shifted = theta_region_approx_with_m(&p, m, &ctx).unwrap();
            assert!(rel(&shifted, &base) < 1e-29);
        }
    }

    #[test]
    fn theta_formula_domain() {
        let ctx = PrecisionContext::default();
        let delta: ExactReal = "0.1".parse().unwrap();
        assert!(theta_region_approx(&point(50, "1", "0.9"), &delta, &ctx).is_err());
        assert!(theta_region_approx(&point(50, "1", "2"), &delta, &ctx).is_err());
        assert!(theta_region_approx(&point(50, "0", "1"), &delta, &ctx).is_err());
    }

    #[test]
    fn large_z_relation() {
        let ctx = PrecisionContext::default();
        let q: ExactReal = "0.5".parse().unwrap();
        let z40 = BigComplex::from_real(Float::with_val(256, Float::i_exp(1, 40)));
        let z80 = BigComplex::from_real(Float::with_val(256, Float::i_exp(1, 80)));
        let dev = |z: &BigComplex| {
            let approx = q_airy_large_z(&q, z, &ctx).unwrap();
            let exact = q_airy(&q, z, &ctx).unwrap().value;
            rel(&approx, &exact)
        };
        let d40 = dev(&z40);
        assert_eq!(large_z_index(&q, &z40).unwrap(), 20);
        assert!(d40 < 0.5f64.powf(18.0), "{d40}");
        assert!(dev(&(-&z40)) < 0.5f64.powf(18.0));
        assert!(dev(&z80) < d40);
        assert!(q_airy_large_z(&q, &BigComplex::one(256), &ctx).is_err());
    }
}
