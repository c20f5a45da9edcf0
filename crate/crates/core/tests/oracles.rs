//! Library values against oracles built on the test side: exact rational
//! sums, Euler's pentagonal series, a Stirling-series Γ and brute-force
//! Simpson quadrature. Published values are matched at their printed digits.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use stieltjes_wigert::airy::{airy_ai_taylor, xi_map};
use stieltjes_wigert::harness::reference::PrintedCell;
use stieltjes_wigert::prelude::*;
use stieltjes_wigert::qcore::{qq_table, ArgFn};

const WIDE: u32 = 512;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn rat(s: &str) -> Rational {
    ExactReal::parse(s).unwrap().rational().clone()
}

fn rel(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(WIDE, a - b).abs();
    (d / Float::with_val(WIDE, b.abs_ref())).to_f64()
}

fn rel_c(a: &BigComplex, b: &BigComplex) -> f64 {
    let bits = a.prec().max(b.prec());
    ((&a.round_to(bits) - &b.round_to(bits)).abs() / b.round_to(bits).abs()).to_f64()
}

/// (q;q)_0 ..= (q;q)_n exactly.
fn qq_exact(q: &Rational, n: u32) -> Vec<Rational> {
    let mut out = vec![Rational::from(1)];
    let mut qj = q.clone();
    for _ in 0..n {
        let next = out.last().unwrap() * Rational::from(1 - &qj);
        out.push(next);
        qj *= q;
    }
    out
}

/// (q;q)_n S_n(z; q) as an exact rational, for rational q and real z.
fn sw_normalized_exact(q: &Rational, n: u32, z: &Rational) -> Rational {
    let qq = qq_exact(q, n);
    let mut sum = Rational::new();
    for j in 0..=n {
        let binom = Rational::from(&qq[n as usize] / &qq[j as usize]) / &qq[(n - j) as usize];
        let term = binom * q.clone().pow(j * j) * Rational::from(-z).pow(j);
        sum += term;
    }
    sum
}

#[test]
fn sw_table1_t0_matches_exact_rational_sum() {
    // [REFERENCE] published table value, u = 1, t = 0: 0.16076
    let q = rat("0.5");
    let exact = Float::with_val(WIDE, sw_normalized_exact(&q, 50, &Rational::from(1)));
    let params = QParams::new("0.5".parse().unwrap(), 50).unwrap();
    let s = stieltjes_wigert(&params, &ExactComplex::from_real(1.into()), &ctx()).unwrap();
    let qq = qq_table(&Float::with_val(WIDE, 0.5), 50, WIDE).pop().unwrap();
    let lib = Float::with_val(WIDE, &s.value.re * &qq);
    assert!(rel(&lib, &exact) < 1e-29, "{}", rel(&lib, &exact));
    assert!(PrintedCell::parse("0.16076")
        .unwrap()
        .matches(&BigComplex::from_real(lib)));
}

#[test]
fn sw_long_value_matches_text_to_15_digits() {
    // [REFERENCE] published 15-digit value -5.83981318477869e187, z = q^(−50)
    let q = rat("0.5");
    let z = Rational::from(Integer::from(1) << 50u32);
    let exact = Float::with_val(WIDE, sw_normalized_exact(&q, 50, &z));
    let printed = PrintedCell::parse("-5.83981318477869e187").unwrap();
    assert!(printed.matches(&BigComplex::from_real(exact.clone())));
    let params = QParams::new("0.5".parse().unwrap(), 50).unwrap();
    let point = EvalPoint::new(params.clone(), "1".parse().unwrap(), "1".parse().unwrap(), &ctx());
    let s = stieltjes_wigert(&params, &point, &ctx()).unwrap();
    let qq = qq_table(&Float::with_val(WIDE, 0.5), 50, WIDE).pop().unwrap();
    let lib = Float::with_val(WIDE, &s.value.re * &qq);
    assert!(rel(&lib, &exact) < 1e-28);
}

#[test]
fn sw_at_origin_is_reciprocal_factorial() {
    let params = QParams::new("0.3".parse().unwrap(), 17).unwrap();
    let s = stieltjes_wigert(&params, &ExactComplex::from_real(0.into()), &ctx()).unwrap();
    let qq = Float::with_val(WIDE, qq_exact(&rat("0.3"), 17).pop().unwrap());
    let expected = Float::with_val(WIDE, qq.recip_ref());
    assert!(rel(&s.value.re, &expected) < 1e-29);
}

#[test]
fn q_airy_matches_exact_partial_sum() {
    // terms beyond k = 40 are below 2^(−1600)
    let q = rat("0.5");
    let qq = qq_exact(&q, 40);
    for z in [Rational::from(1), Rational::from(-3), rat("12.5")] {
        let mut sum = Rational::new();
        for k in 0..=40u32 {
            sum += q.clone().pow(k * k) * Rational::from(-&z).pow(k) / &qq[k as usize];
        }
        let exact = Float::with_val(WIDE, sum);
        let lib = q_airy(
            &"0.5".parse().unwrap(),
            &ExactComplex::from_real(ExactReal::from_rational(z)),
            &ctx(),
        )
        .unwrap()
        .value
        .re;
        assert!(rel(&lib, &exact) < 1e-29);
    }
}

#[test]
fn q_airy_poly_degree_three_by_hand() {
    // 1 − q/(1−q) + q⁴/((1−q)(1−q²)) − q⁹/(q;q)_3 at q = 0.5, z = 1
    let q = Float::with_val(WIDE, 0.5);
    let one = Float::with_val(WIDE, 1);
    let a = Float::with_val(WIDE, &one - &q);
    let b = Float::with_val(WIDE, &one - q.clone().square());
    let c = Float::with_val(WIDE, &one - q.clone().pow(3u32));
    let expected = Float::with_val(WIDE, 1) - Float::with_val(WIDE, &q / &a) + q.clone().pow(4u32) / (a.clone() * &b)
        - q.clone().pow(9u32) / (a * b * c);
    let params = QParams::new("0.5".parse().unwrap(), 3).unwrap();
    let lib = q_airy_poly(&params, &ExactComplex::from_real(1.into()), &ctx())
        .unwrap()
        .value
        .re;
    assert!(rel(&lib, &expected) < 1e-29);
}

#[test]
fn q_airy_table2_first_cell() {
    // [REFERENCE] published table value, x = 0.5, q = 0.9: −2.325e-3
    let q: ExactReal = "0.9".parse().unwrap();
    let x: ExactReal = "0.5".parse().unwrap();
    let arg = ArgFn(|b: u32| BigComplex::from_real(q.at(b + 16).sqrt() * x.at(b + 16)).round_to(b));
    let v = q_airy(&q, &arg, &ctx()).unwrap().value;
    assert!(PrintedCell::parse("-2.325e-3").unwrap().matches(&v));
}

#[test]
fn qq_infinity_matches_pentagonal_series() {
    // (q;q)_∞ = Σ_k (−1)^k q^(k(3k−1)/2)
    for qs in ["0.3", "0.5", "0.9"] {
        let q = Float::with_val(WIDE, ExactReal::parse(qs).unwrap().at(WIDE));
        let mut sum = Float::with_val(WIDE, 0);
        for k in -200i64..=200 {
            let e = (k * (3 * k - 1) / 2) as i32;
            let term = Float::with_val(WIDE, q.clone().pow(e));
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let lib = q_pochhammer_inf(&BigComplex::from_real(q.clone()), &q, &ctx())
            .unwrap()
            .value
            .re;
        assert!(rel(&lib, &sum) < 1e-29, "q = {qs}");
    }
}

#[test]
fn theta_at_one_by_wide_bilateral_sum() {
    let q = Float::with_val(WIDE, 0.5);
    let mut sum = Float::with_val(WIDE, 0);
    for k in -60i32..=60 {
        sum += q.clone().pow(k * k);
    }
    let lib = theta_q(&"0.5".parse().unwrap(), &ExactComplex::from_real(1.into()), &ctx()).unwrap();
    assert!(rel(&lib.value.re, &sum) < 1e-29);
}

#[test]
fn weight_compositions() {
    let c = ctx();
    let pi = Float::with_val(WIDE, Constant::Pi);
    let w = weight_w(&"1".parse().unwrap(), &"2".parse().unwrap(), &c).unwrap();
    assert!(rel(&w, &(Float::with_val(WIDE, 2) / pi.clone().sqrt())) < 1e-29);

    let e = Float::with_val(WIDE, 1).exp();
    let w = weight_w(&ExactReal::from_float(&e).unwrap(), &"1".parse().unwrap(), &c).unwrap();
    let expected = Float::with_val(WIDE, -1).exp() / pi.clone().sqrt();
    assert!(rel(&w, &expected) < 1e-29);

    let k = Float::with_val(WIDE, 13) / 10u32;
    let l = Float::with_val(WIDE, 4).ln();
    let expected = k.clone() / pi.sqrt() * (-(k.clone().square() * l.square())).exp();
    let w = weight_w(&"4".parse().unwrap(), &"1.3".parse().unwrap(), &c).unwrap();
    assert!(rel(&w, &expected) < 1e-29);
}

#[test]
fn sw_p_degree_zero_is_quarter_power() {
    let params = QParams::new("0.5".parse().unwrap(), 0).unwrap();
    let p = sw_p(&params, &ExactComplex::from_real(3.into()), &ctx()).unwrap();
    let expected = Float::with_val(WIDE, 0.5).sqrt().sqrt();
    assert!(rel(&p.value.re, &expected) < 1e-29);
}

/// ln Γ(x) by the Stirling series after shifting x up by 40.
fn ln_gamma_stirling(x: &Float) -> Float {
    const SHIFT: u32 = 40;
    let bernoulli: [(i64, i64); 10] = [
        (1, 6),
        (-1, 30),
        (1, 42),
        (-1, 30),
        (5, 66),
        (-691, 2730),
        (7, 6),
        (-3617, 510),
        (43867, 798),
        (-174611, 330),
    ];
    let bits = x.prec();
    let z = Float::with_val(bits, x + SHIFT);
    let pi2 = Float::with_val(bits, Constant::Pi) * 2u32;
    let mut s = Float::with_val(bits, &z - 0.5f64) * Float::with_val(bits, z.ln_ref()) - &z
        + Float::with_val(bits, pi2.ln()) / 2u32;
    for (i, (num, den)) in bernoulli.iter().enumerate() {
        let k = 2 * (i as i32 + 1);
        let b = Float::with_val(bits, *num) / *den;
        let zp = Float::with_val(bits, z.clone().pow(k - 1));
        s += b / (k * (k - 1)) / zp;
    }
    let mut prod = Float::with_val(bits, 1);
    for j in 0..SHIFT {
        prod *= Float::with_val(bits, x + j);
    }
    s - prod.ln()
}

#[test]
fn airy_at_origin_by_stirling_gamma() {
    let x = Float::with_val(WIDE, 2) / 3u32;
    let gamma = ln_gamma_stirling(&x).exp();
    let three = Float::with_val(WIDE, 3);
    let expected = (-(three.ln() * 2u32 / 3u32)).exp() / gamma;
    let ai0 = airy_ai_taylor(&Float::with_val(256, 0), &ctx()).unwrap().value.re;
    assert!(rel(&ai0, &expected) < 1e-28, "{}", rel(&ai0, &expected));
}

#[test]
fn xi_by_composite_simpson() {
    // 10^6 panels on 2w·atan√(e^(w²) − 1) over [0, √ln 4]
    let bits = 256;
    let panels = 1_000_000u32;
    let top = Float::with_val(bits, 4).ln().sqrt();
    let h = Float::with_val(bits, &top / panels);
    let f = |w: &Float| -> Float {
        let e = Float::with_val(bits, w.square_ref()).exp_m1();
        Float::with_val(bits, w * 2u32) * e.sqrt().atan()
    };
    let mut sum = f(&Float::with_val(bits, 0)) + f(&top);
    for i in 1..panels {
        let w = Float::with_val(bits, &h * i);
        let weight = if i % 2 == 1 { 4u32 } else { 2u32 };
        sum += f(&w) * weight;
    }
    let integral = sum * &h / 3u32;
    // q = 9/10 exactly, not the nearest double
    let ln_inv_q = -(Float::with_val(bits, 9) / 10u32).ln();
    let xi_expected = (integral * 3u32 / (ln_inv_q * 2u32)).pow(Float::with_val(bits, 2) / 3u32);
    let lib = xi_map(&"1".parse().unwrap(), &"0.9".parse().unwrap(), &ctx()).unwrap();
    assert!(rel(&lib.xi, &xi_expected) < 1e-20, "{}", rel(&lib.xi, &xi_expected));
}

#[test]
fn outer_t4_against_escalated_series() {
    // finite certified output where q^(n²) z^n spans thousands of decades
    let c = ctx();
    let params = QParams::new("0.5".parse().unwrap(), 50).unwrap();
    let point = EvalPoint::new(params.clone(), "1".parse().unwrap(), "4".parse().unwrap(), &c);
    let report = approx_outer(&point, &ApproxOptions::default(), &c).unwrap();
    let q = rat("0.5");
    let z = Rational::from(Integer::from(1) << 200u32);
    let qq = Float::with_val(4096, qq_exact(&q, 50).pop().unwrap());
    let exact = Float::with_val(4096, sw_normalized_exact(&q, 50, &z)) / qq;
    assert!(report.approx.is_finite());
    let gap = rel_c(&report.approx, &BigComplex::from_real(exact.clone()));
    let bound = (report.bound.clone() / exact.abs()).to_f64();
    assert!(gap <= bound, "{gap} > {bound}");
}
