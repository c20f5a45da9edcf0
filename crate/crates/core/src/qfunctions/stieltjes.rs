use rug::Float;

use super::{check_q, QParams};
use crate::qcore::{
    evaluate_with_escalation, pi, qq_table, ArgFn, BigComplex, BigReal, Certified, ComplexArg, ExactReal,
    PrecisionContext, SeriesSum, TermAccumulator,
};
use crate::{Error, Result};

/// One run of Σ_{j=0}^{n} q^{j²}·(q;q)_n/((q;q)_j (q;q)_{n−j})·(−z)^j
/// = (q;q)_n·S_n(z; q) at `bits`.
pub(crate) fn sw_scaled_sum(n: u32, q: &Float, z: &BigComplex, bits: u32) -> SeriesSum {
    let table = qq_table(q, n, bits);
    let q = Float::with_val(bits, q);
    let q_sq = Float::with_val(bits, q.square_ref());
    let minus_z = -&z.round_to(bits);
    let mut acc = TermAccumulator::new(bits);
    let mut q_jj = Float::with_val(bits, 1); // q^{j²}
    let mut q_step = q.clone(); // q^{2j+1}
    let mut power = BigComplex::one(bits); // (−z)^j
    let top = &table[n as usize];
    for j in 0..=n as usize {
        let binom = Float::with_val(bits, top / &table[j]) / &table[n as usize - j];
        let coeff = Float::with_val(bits, &binom * &q_jj);
        acc.add(&power.scale(&coeff));
        if j < n as usize {
            q_jj *= &q_step;
            q_step *= &q_sq;
            power = &power * &minus_z;
        }
    }
    acc.finish()
}

/// (q;q)_n·S_n(z; q), the normalisation the global approximants compare
/// against A_q.
pub fn stieltjes_wigert_scaled(params: &QParams, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    evaluate_with_escalation(ctx, |bits| {
        Ok(sw_scaled_sum(params.n(), &params.q().at(bits), &z.at(bits), bits))
    })
}

/// S_n(z; q) = Σ_{j=0}^{n} q^{j²}/((q;q)_j (q;q)_{n−j})·(−z)^j.
pub fn stieltjes_wigert(params: &QParams, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    let scaled = stieltjes_wigert_scaled(params, z, ctx)?;
    let bits = scaled.condition.final_bits;
    let qq_n = qq_table(&params.q().at(bits), params.n(), bits)
        .pop()
        .expect("table has n + 1 entries");
    Ok(scaled.map(|v| {
        let inv = Float::with_val(bits, 1) / qq_n;
        v.scale(&inv)
    }))
}

/// p_n(x) = (−1)^n q^{n/2 + 1/4} √((q;q)_n) · S_n(q^{1/2} x; q).
pub fn sw_p(params: &QParams, x: &impl ComplexArg, ctx: &PrecisionContext) -> Result<Certified> {
    let q = params.q();
    let shifted = ArgFn(|bits: u32| {
        let root = q.at(bits + 8).sqrt();
        x.at(bits + 8).scale(&root).round_to(bits)
    });
    let s = stieltjes_wigert(params, &shifted, ctx)?;
    let bits = s.condition.final_bits + ctx.guard_bits();
    let n = params.n();
    let qq_n = qq_table(&q.at(bits), n, bits).pop().expect("non-empty");
    let exponent = Float::with_val(bits, 2 * n + 1) / 4u32;
    let power = Float::with_val(bits, exponent * Float::with_val(bits, q.at(bits).ln_ref())).exp();
    let mut factor = power * qq_n.sqrt();
    if n % 2 == 1 {
        factor = -factor;
    }
    let out_bits = s.condition.final_bits;
    Ok(s.map(|v| v.scale(&factor).round_to(out_bits)))
}

/// |S_n(z) − (−z q^n)^n S_n(1/(z q^{2n}))| / |S_n(z)|.
pub fn symmetry_residual(params: &QParams, z: &impl ComplexArg, ctx: &PrecisionContext) -> Result<BigReal> {
    if z.at(ctx.working_bits()).is_zero() {
        return Err(Error::Domain("symmetry relation needs z != 0".into()));
    }
    let n = params.n();
    let q = params.q();
    let direct = stieltjes_wigert(params, z, ctx)?;
    let mirrored_arg = ArgFn(|bits: u32| {
        let wide = bits + 16;
        let q2n = Float::with_val(wide, rug::ops::Pow::pow(&q.at(wide), 2 * n));
        z.at(wide).scale(&q2n).recip().round_to(bits)
    });
    let mirrored = stieltjes_wigert(params, &mirrored_arg, ctx)?;
    let bits = direct.condition.final_bits.max(mirrored.condition.final_bits) + ctx.guard_bits();
    let qn = Float::with_val(bits, rug::ops::Pow::pow(&q.at(bits), n));
    let prefactor = (-&z.at(bits).scale(&qn)).powi(i64::from(n));
    let other = &prefactor * &mirrored.value.round_to(bits);
    let lhs = direct.value.round_to(bits);
    let diff = (&lhs - &other).abs();
    Ok(Float::with_val(64, diff / lhs.abs()))
}

/// k = 1/√(2 ln(1/q)), the weight parameter that q = exp(−1/(2k²)) encodes.
pub fn k_from_q(q: &ExactReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_q(q)?;
    let bits = ctx.plain_bits();
    let ln_inv = -Float::with_val(bits, q.at(bits).ln_ref());
    Ok((ln_inv * 2u32).sqrt().recip())
}

/// w(x) = k·π^{−1/2}·exp(−k² ln² x) for x > 0, k > 0.
pub fn weight_w(x: &ExactReal, k: &ExactReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.signum() != std::cmp::Ordering::Greater {
        return Err(Error::Domain(format!("weight needs x > 0, got {x}")));
    }
    if k.signum() != std::cmp::Ordering::Greater {
        return Err(Error::Domain(format!("weight needs k > 0, got {k}")));
    }
    let bits = ctx.plain_bits();
    let k = k.at(bits);
    let log_x = Float::with_val(bits, x.at(bits).ln_ref());
    let exponent = -(Float::with_val(bits, k.square_ref()) * log_x.square());
    Ok(k / pi(bits).sqrt() * exponent.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ExactComplex;

    fn params(q: &str, n: u32) -> QParams {
        QParams::new(q.parse().unwrap(), n).unwrap()
    }

    fn real(s: &str) -> ExactComplex {
        ExactComplex::parse(s).unwrap()
    }

    #[test]
    fn value_at_origin_is_reciprocal_qq() {
        let ctx = PrecisionContext::default();
        for n in [0, 1, 7, 50] {
            let p = params("0.5", n);
            let scaled = stieltjes_wigert_scaled(&p, &real("0"), &ctx).unwrap();
            assert_eq!(scaled.value.re, 1);
            let s = stieltjes_wigert(&p, &real("0"), &ctx).unwrap();
            let qq = qq_table(&Float::with_val(256, 0.5), n, 256).pop().unwrap();
            let rel = Float::with_val(256, &s.value.re * &qq) - 1u32;
            assert!(rel.abs() < 1e-70);
        }
    }

    #[test]
    fn low_degree_closed_forms() {
        // S_1(z) = 1/(1−q) − q z/(1−q)
        let ctx = PrecisionContext::default();
        let s = stieltjes_wigert(&params("0.5", 1), &real("3"), &ctx).unwrap();
        assert!((s.value.re.to_f64() - (2.0 - 3.0)).abs() < 1e-15);
        // S_2(z) = 1/(q;q)_2 − q z/((1−q)^2) + q^4 z^2/(q;q)_2
        let (q, z): (f64, f64) = (0.5, 2.0);
        let qq2 = (1.0 - q) * (1.0 - q * q);
        let expect = 1.0 / qq2 - q * z / ((1.0 - q) * (1.0 - q)) + q.powi(4) * z * z / qq2;
        let s = stieltjes_wigert(&params("0.5", 2), &real("2"), &ctx).unwrap();
        assert!((s.value.re.to_f64() - expect).abs() < 1e-14);
    }

    #[test]
    fn sw_p_of_degree_zero_is_quarter_power() {
        let ctx = PrecisionContext::default();
        let v = sw_p(&params("0.5", 0), &real("1.7"), &ctx).unwrap();
        assert!((v.value.re.to_f64() - 0.5f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn symmetry_small_degree() {
        let ctx = PrecisionContext::default();
        let r = symmetry_residual(&params("0.5", 1), &real("3"), &ctx).unwrap();
        assert!(r < 1e-28, "{}", r.to_f64());
        assert!(symmetry_residual(&params("0.5", 1), &real("0"), &ctx).is_err());
    }

    #[test]
    fn weight_closed_forms() {
        let ctx = PrecisionContext::default();
        let w = weight_w(&"1".parse().unwrap(), &"2".parse().unwrap(), &ctx).unwrap();
        let expect = Float::with_val(256, 2) / pi(256).sqrt();
        assert!(Float::with_val(256, &w - &expect).abs() < 1e-70);
        assert!(weight_w(&"0".parse().unwrap(), &"1".parse().unwrap(), &ctx).is_err());
        assert!(weight_w(&"-1".parse().unwrap(), &"1".parse().unwrap(), &ctx).is_err());
        assert!(weight_w(&"1".parse().unwrap(), &"0".parse().unwrap(), &ctx).is_err());
    }

    #[test]
    fn k_round_trips_q() {
        let ctx = PrecisionContext::default();
        let k = k_from_q(&"0.9".parse().unwrap(), &ctx).unwrap();
        let q = (Float::with_val(256, -1) / (Float::with_val(256, k.square_ref()) * 2u32)).exp();
        assert!(Float::with_val(256, q - 0.9f64).abs() < 1e-15);
    }
}
