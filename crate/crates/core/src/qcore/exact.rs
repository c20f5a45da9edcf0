use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};

use super::complex::BigComplex;
use crate::{Error, Result};

/// Largest decimal exponent accepted when parsing; keeps a typo such as
/// `1e999999999` from allocating a gigantic integer.
const MAX_DECIMAL_EXPONENT: i64 = 100_000;

/// An exactly known real input.
///
/// Decimal strings are stored as the rational number they denote, so `0.99`
/// is exactly 99/100 and can be rounded afresh at any precision an
/// escalated evaluation asks for. The original spelling is kept for
/// display.
#[derive(Clone, Debug)]
pub struct ExactReal {
    value: Rational,
    text: String,
}

impl ExactReal {
    pub fn parse(src: &str) -> Result<Self> {
        let trimmed = src.trim();
        let value = parse_rational(trimmed).ok_or_else(|| Error::Parse(src.to_string()))?;
        Ok(Self {
            value,
            text: trimmed.to_string(),
        })
    }

    pub fn from_rational(value: Rational) -> Self {
        let text = if value.is_integer() {
            value.numer().to_string()
        } else {
            value.to_string()
        };
        Self { value, text }
    }

    /// The exact binary value of `x`.
    pub fn from_f64(x: f64) -> Result<Self> {
        let value = Rational::from_f64(x).ok_or_else(|| Error::Parse(x.to_string()))?;
        Ok(Self {
            value,
            text: format!("{x}"),
        })
    }

    /// The exact value of a finite float.
    pub fn from_float(x: &Float) -> Result<Self> {
        let value = x.to_rational().ok_or_else(|| Error::Parse(x.to_string()))?;
        Ok(Self {
            value,
            text: super::decimal::to_scientific(x, None),
        })
    }

    /// Correctly rounded value at `bits` of precision.
    pub fn at(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.value)
    }

    pub fn rational(&self) -> &Rational {
        &self.value
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn is_zero(&self) -> bool {
        self.value.cmp0() == Ordering::Equal
    }

    pub fn signum(&self) -> Ordering {
        self.value.cmp0()
    }

    /// Exact floor of `self · factor`.
    pub fn floor_times(&self, factor: &Rational) -> Integer {
        let product = Rational::from(&self.value * factor);
        let (_, floor) = product.fract_floor(Integer::new());
        floor
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for ExactReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<i32> for ExactReal {
    fn from(v: i32) -> Self {
        Self::from_rational(Rational::from(v))
    }
}

impl From<u32> for ExactReal {
    fn from(v: u32) -> Self {
        Self::from_rational(Rational::from(v))
    }
}

impl From<Rational> for ExactReal {
    fn from(v: Rational) -> Self {
        Self::from_rational(v)
    }
}

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` or `[+-]num/den` exactly.
fn parse_rational(src: &str) -> Option<Rational> {
    if src.is_empty() {
        return None;
    }
    if src.contains('/') {
        let r = Rational::parse(src).ok()?;
        return Some(Rational::from(r));
    }
    let (negative, body) = match src.as_bytes()[0] {
        b'-' => (true, &src[1..]),
        b'+' => (false, &src[1..]),
        _ => (false, src),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut exp10: i64 = match exponent {
        Some(e) => {
            let (sign, digits) = match e.as_bytes().first() {
                Some(b'-') => (-1, &e[1..]),
                Some(b'+') => (1, &e[1..]),
                _ => (1, e),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 12 {
                return None;
            }
            sign * digits.parse::<i64>().ok()?
        }
        None => 0,
    };
    exp10 -= frac_part.len() as i64;
    if exp10.abs() > MAX_DECIMAL_EXPONENT {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = Integer::from_str_radix(&digits, 10).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = Integer::from(Integer::u_pow_u(10, exp10.unsigned_abs() as u32));
    let value = if exp10 >= 0 {
        Rational::from(numer * scale)
    } else {
        Rational::from((numer, scale))
    };
    Some(value)
}

/// An exactly known complex input, written `RE` or `RE,IM` on the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactComplex {
    pub re: ExactReal,
    pub im: ExactReal,
}

impl ExactComplex {
    pub fn new(re: ExactReal, im: ExactReal) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: ExactReal) -> Self {
        Self {
            re,
            im: ExactReal::from(0),
        }
    }

    /// Accepts `RE`, `RE,IM` and the `a+bi` / `a-bi` / `bi` spellings.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        if let Some((re, im)) = s.split_once(',') {
            return Ok(Self::new(ExactReal::parse(re)?, ExactReal::parse(im)?));
        }
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for pos in (1..bytes.len()).rev() {
                if (bytes[pos] == b'+' || bytes[pos] == b'-') && !matches!(bytes[pos - 1], b'e' | b'E') {
                    split = Some(pos);
                    break;
                }
            }
            let (re, im) = match split {
                Some(pos) => (&body[..pos], &body[pos..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            return Ok(Self::new(
                ExactReal::parse(re).map_err(|_| Error::Parse(src.to_string()))?,
                ExactReal::parse(im).map_err(|_| Error::Parse(src.to_string()))?,
            ));
        }
        Ok(Self::from_real(ExactReal::parse(s)?))
    }

    pub fn at(&self, bits: u32) -> BigComplex {
        BigComplex::new(self.re.at(bits), self.im.at(bits))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// self·factor, exactly.
    pub fn scaled(&self, factor: &Rational) -> Self {
        Self::new(
            ExactReal::from_rational(Rational::from(self.re.rational() * factor)),
            ExactReal::from_rational(Rational::from(self.im.rational() * factor)),
        )
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{},{}", self.re, self.im)
        }
    }
}

impl FromStr for ExactComplex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<ExactReal> for ExactComplex {
    fn from(re: ExactReal) -> Self {
        Self::from_real(re)
    }
}

/// A complex argument that can be materialised at any precision.
///
/// Certified series re-run at escalated precision; every input they depend
/// on must be recomputed at that precision rather than reused from a
/// lower-precision run.
pub trait ComplexArg: Sync {
    fn at(&self, bits: u32) -> BigComplex;
}

impl ComplexArg for ExactComplex {
    fn at(&self, bits: u32) -> BigComplex {
        ExactComplex::at(self, bits)
    }
}

impl ComplexArg for ExactReal {
    fn at(&self, bits: u32) -> BigComplex {
        BigComplex::from_real(ExactReal::at(self, bits))
    }
}

/// A computed value is taken as exact at its own precision.
impl ComplexArg for BigComplex {
    fn at(&self, bits: u32) -> BigComplex {
        self.round_to(bits)
    }
}

impl<T: ComplexArg> ComplexArg for &T {
    fn at(&self, bits: u32) -> BigComplex {
        (**self).at(bits)
    }
}

/// Adapts a closure `bits -> value` into a [`ComplexArg`].
pub struct ArgFn<F>(pub F);

impl<F> ComplexArg for ArgFn<F>
where
    F: Fn(u32) -> BigComplex + Sync,
{
    fn at(&self, bits: u32) -> BigComplex {
        (self.0)(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        ExactReal::parse(s).unwrap().rational().clone()
    }

    #[test]
    fn decimal_strings_are_exact() {
        assert_eq!(r("0.99"), Rational::from((99, 100)));
        assert_eq!(r("-1.5e-3"), Rational::from((-3, 2000)));
        assert_eq!(r("+2E2"), Rational::from(200));
        assert_eq!(r(".5"), Rational::from((1, 2)));
        assert_eq!(r("3."), Rational::from(3));
        assert_eq!(r("1/3"), Rational::from((1, 3)));
    }

    #[test]
    fn malformed_numbers_are_rejected() {
        for bad in ["", "-", ".", "1e", "1.2.3", "abc", "1e+", "0x10", "1e1000000"] {
            assert!(ExactReal::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn floor_times_is_exact() {
        // 50 · 0.2 is exactly 10, which binary arithmetic can land just below
        let l = ExactReal::parse("0.2").unwrap();
        assert_eq!(l.floor_times(&Rational::from(50)), 10);
        let t = ExactReal::parse("-0.25").unwrap();
        assert_eq!(t.floor_times(&Rational::from(3)), -1);
    }

    #[test]
    fn complex_spellings() {
        let a = ExactComplex::parse("1,1").unwrap();
        let b = ExactComplex::parse("1+i").unwrap();
        let c = ExactComplex::parse("1+1i").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = ExactComplex::parse("-2.5e-3-4i").unwrap();
        assert_eq!(d.re.rational(), &Rational::from((-1, 400)));
        assert_eq!(d.im.rational(), &Rational::from(-4));
        let e = ExactComplex::parse("-i").unwrap();
        assert!(e.re.is_zero());
        assert_eq!(e.im.rational(), &Rational::from(-1));
        let f = ExactComplex::parse("1e-3+2e+1i").unwrap();
        assert_eq!(f.im.rational(), &Rational::from(20));
    }

    #[test]
    fn rounding_is_fresh_at_each_precision() {
        let q = ExactReal::parse("0.99").unwrap();
        let lo = q.at(64);
        let hi = q.at(512);
        assert_ne!(Float::with_val(512, &lo), hi);
        assert_eq!(Float::with_val(64, &hi), lo);
    }
}
