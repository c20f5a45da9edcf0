use rug::{Integer, Rational};

use crate::qcore::{BigComplex, BigReal, DecimalDigits, ExactComplex};
use crate::{Error, Result};

/// Digits requested from MPFR before any decimal rounding, so that the
/// single half-even rounding below sees an effectively exact expansion.
const LONG_DIGITS: usize = 80;

/// Decimal exponents printed without an `e` suffix in paper style.
const FIXED_EXPONENTS: std::ops::Range<i64> = -2..5;

fn long_digits(x: &BigReal) -> Option<DecimalDigits> {
    if x.is_zero() || !x.is_finite() {
        return None;
    }
    Some(DecimalDigits::of(x, LONG_DIGITS.max(sig_for(x))))
}

fn sig_for(x: &BigReal) -> usize {
    crate::qcore::round_trip_digits(x.prec())
}

fn special(x: &BigReal) -> Option<String> {
    if x.is_nan() {
        Some("nan".into())
    } else if x.is_infinite() {
        Some(if x.is_sign_negative() { "-inf" } else { "inf" }.into())
    } else {
        None
    }
}

/// `±d.ddd…e±E` with `sig_digits` significant digits for real values and
/// `(a±bi)eE` for complex ones, where E is the exponent of the
/// larger-magnitude component and each component keeps `sig_digits`
/// significant digits. Rounding is half to even; zero prints as `0`.
pub fn format_scientific(v: &BigComplex, sig_digits: usize) -> String {
    let sig = sig_digits.max(1);
    if let Some(s) = special(&v.re).or_else(|| special(&v.im)) {
        return s;
    }
    if v.im.is_zero() {
        return match long_digits(&v.re) {
            Some(d) => d.round_significant(sig).scientific(),
            None => "0".into(),
        };
    }
    let re = long_digits(&v.re).map(|d| d.round_significant(sig));
    let im = long_digits(&v.im).map(|d| d.round_significant(sig));
    let exponent = shared_exponent(re.as_ref(), im.as_ref());
    let place = |d: &Option<DecimalDigits>| d.as_ref().map(|d| d.point - sig as i64);
    let (re_place, im_place) = (place(&re), place(&im));
    let fallback = exponent - sig as i64 + 1;
    let body = complex_body(
        re.as_ref(),
        re_place.unwrap_or(fallback),
        im.as_ref(),
        im_place.unwrap_or(fallback),
        exponent,
    );
    format!("({body})e{exponent}")
}

/// Table-style rendering: both components of a complex value are rounded
/// at the last place of the larger one, and values whose exponent lies in
/// [−2, 5) are written in fixed notation (`0.16076`, `43744.8`,
/// `0.0117-0.6786i`). Other values use the same layout as
/// [`format_scientific`].
pub fn format_paper_style(v: &BigComplex, sig_digits: usize) -> String {
    let sig = sig_digits.max(1) as i64;
    if let Some(s) = special(&v.re).or_else(|| special(&v.im)) {
        return s;
    }
    let re = long_digits(&v.re);
    let im = long_digits(&v.im);
    let larger = match (&re, &im) {
        (None, None) => return "0".into(),
        (Some(r), None) => r,
        (None, Some(i)) => i,
        (Some(r), Some(i)) => {
            if (i.point, &i.digits) > (r.point, &r.digits) {
                i
            } else {
                r
            }
        }
    };
    let rounded = larger.round_significant(sig as usize);
    let exponent = rounded.exponent();
    let last_place = rounded.point - sig;
    if v.im.is_zero() {
        let r = re.expect("nonzero real part");
        if FIXED_EXPONENTS.contains(&exponent) {
            let sign = if r.negative { "-" } else { "" };
            return format!("{sign}{}", r.fixed_magnitude(last_place));
        }
        return r.round_at_place(last_place).scientific();
    }
    if FIXED_EXPONENTS.contains(&exponent) {
        return complex_body(re.as_ref(), last_place, im.as_ref(), last_place, 0);
    }
    let body = complex_body(re.as_ref(), last_place, im.as_ref(), last_place, exponent);
    format!("({body})e{exponent}")
}

fn shared_exponent(re: Option<&DecimalDigits>, im: Option<&DecimalDigits>) -> i64 {
    match (re, im) {
        (Some(r), Some(i)) => r.exponent().max(i.exponent()),
        (Some(r), None) => r.exponent(),
        (None, Some(i)) => i.exponent(),
        (None, None) => 0,
    }
}

/// `a±bi` with both components divided by 10^`exponent`.
fn complex_body(
    re: Option<&DecimalDigits>,
    re_place: i64,
    im: Option<&DecimalDigits>,
    im_place: i64,
    exponent: i64,
) -> String {
    let render = |d: Option<&DecimalDigits>, place: i64| -> (bool, String) {
        match d {
            Some(d) => {
                let rounded = d.round_at_place(place);
                let negative = d.negative && !rounded.is_zero();
                (negative, d.shifted(-exponent).fixed_magnitude(place - exponent))
            }
            None => (false, zero_at(place - exponent)),
        }
    };
    let (re_neg, re_mag) = render(re, re_place);
    let (im_neg, im_mag) = render(im, im_place);
    format!(
        "{}{}{}{}i",
        if re_neg { "-" } else { "" },
        re_mag,
        if im_neg { "-" } else { "+" },
        im_mag
    )
}

fn zero_at(place: i64) -> String {
    if place >= 0 {
        "0".into()
    } else {
        format!("0.{}", "0".repeat((-place) as usize))
    }
}

/// Parses the output of [`format_scientific`] or [`format_paper_style`]
/// back into an exact decimal value.
pub fn parse_formatted(s: &str) -> Result<ExactComplex> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        let (body, exponent) = rest.split_once(")e").ok_or_else(|| Error::Parse(s.to_string()))?;
        let exponent: i32 = exponent.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let scale = if exponent >= 0 {
            Rational::from(Integer::from(Integer::u_pow_u(10, exponent as u32)))
        } else {
            Rational::from((1, Integer::from(Integer::u_pow_u(10, exponent.unsigned_abs()))))
        };
        return Ok(ExactComplex::parse(body)?.scaled(&scale));
    }
    ExactComplex::parse(s)
}

/// Relative error printed with three significant digits.
pub fn format_rel_err(x: &BigReal) -> String {
    format_scientific(&BigComplex::from_real(x.clone()), 3)
}
