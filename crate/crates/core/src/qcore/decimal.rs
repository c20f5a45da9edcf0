//! Decimal scientific notation `±d.ddd…e±E` for [`BigReal`] values.
//!
//! Conversion to and from decimal happens only at I/O boundaries; all
//! arithmetic stays binary.

use rug::Float;

use super::complex::BigReal;
use crate::{Error, Result};

/// Significant digits that make `parse(format(x)) == x` for a `bits`-bit
/// mantissa: the smallest d with 10^(d−1) > 2^bits.
pub fn round_trip_digits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// Formats `x` as `d.ddd…e±E`, negative values with a leading `-`.
///
/// With `sig_digits = None` the output has enough digits to round-trip at
/// the precision of `x`. Zero prints as `0`.
pub fn to_scientific(x: &BigReal, sig_digits: Option<usize>) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let digits = sig_digits.unwrap_or_else(|| round_trip_digits(x.prec())).max(1);
    let d = DecimalDigits::of(x, digits);
    d.scientific()
}

/// Parses decimal scientific notation, rounding once to `bits`.
pub fn parse_scientific(src: &str, bits: u32) -> Result<BigReal> {
    let s = src.trim();
    let parsed = Float::parse(s).map_err(|_| Error::Parse(src.to_string()))?;
    let value = Float::with_val(bits, parsed);
    if !value.is_finite() {
        return Err(Error::Parse(src.to_string()));
    }
    Ok(value)
}

/// Correctly rounded decimal digits of a nonzero finite value:
/// `±0.d₁d₂…dₖ × 10^point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DecimalDigits {
    pub negative: bool,
    pub digits: Vec<u8>,
    pub point: i64,
}

impl DecimalDigits {
    pub fn of(x: &BigReal, count: usize) -> Self {
        let (negative, s, exp) = x.to_sign_string_exp(10, Some(count.max(1)));
        let digits = s.bytes().map(|b| b - b'0').collect();
        Self {
            negative,
            digits,
            point: i64::from(exp.unwrap_or(0)),
        }
    }

    /// Decimal exponent E of the leading digit: value = d₁.d₂… × 10^E.
    pub fn exponent(&self) -> i64 {
        self.point - 1
    }

    /// Rounds (half to even) so that the last kept digit has place value
    /// 10^`last_place`. The result may have no digits (it rounded to zero).
    pub fn round_at_place(&self, last_place: i64) -> Self {
        let keep = self.point - last_place;
        if keep >= self.digits.len() as i64 {
            let mut digits = self.digits.clone();
            digits.resize(keep as usize, 0);
            return Self { digits, ..self.clone() };
        }
        if keep < 0 {
            return Self {
                negative: self.negative,
                digits: Vec::new(),
                point: last_place + 1,
            };
        }
        let keep = keep as usize;
        let mut kept: Vec<u8> = self.digits[..keep].to_vec();
        let rest = &self.digits[keep..];
        let first = rest[0];
        let beyond_half = rest[1..].iter().any(|&d| d != 0);
        let last_odd = kept.last().map(|d| d % 2 == 1).unwrap_or(false);
        let round_up = first > 5 || (first == 5 && (beyond_half || last_odd));
        let mut point = self.point;
        if round_up {
            let mut i = kept.len();
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    point += 1;
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
            if kept.len() > keep.max(1) {
                kept.pop();
            }
        }
        // strip leading zeros only when everything rounded away
        if kept.iter().all(|&d| d == 0) {
            return Self {
                negative: self.negative,
                digits: Vec::new(),
                point: last_place + 1,
            };
        }
        Self {
            negative: self.negative,
            digits: kept,
            point,
        }
    }

    /// Rounds to `count` significant digits (half to even).
    pub fn round_significant(&self, count: usize) -> Self {
        self.round_at_place(self.point - count as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn scientific(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        out.push(char::from(b'0' + self.digits[0]));
        if self.digits.len() > 1 {
            out.push('.');
            out.extend(self.digits[1..].iter().map(|&d| char::from(b'0' + d)));
        }
        out.push('e');
        out.push_str(&self.exponent().to_string());
        out
    }

    /// The same digits with the decimal point moved: value · 10^`by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self {
            point: self.point + by,
            ..self.clone()
        }
    }

    /// Plain fixed-point magnitude (no sign) whose last printed digit has
    /// place value 10^`last_place`.
    pub fn fixed_magnitude(&self, last_place: i64) -> String {
        let rounded = self.round_at_place(last_place);
        let top = (rounded.point - 1).max(0);
        let bottom = last_place.min(0);
        let mut out = String::new();
        for place in (bottom..=top).rev() {
            if place == -1 {
                out.push('.');
            }
            let idx = rounded.point - 1 - place;
            let digit = if place >= last_place && idx >= 0 && (idx as usize) < rounded.digits.len() {
                rounded.digits[idx as usize]
            } else {
                0
            };
            out.push(char::from(b'0' + digit));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn formats_paper_style_examples() {
        let x = Float::with_val(128, -0.002325);
        assert_eq!(to_scientific(&x, Some(4)), "-2.325e-3");
        let y = Float::with_val(128, 18649) * Float::with_val(128, 10).pow(477u32);
        assert_eq!(to_scientific(&y, Some(5)), "1.8649e481");
        assert_eq!(to_scientific(&Float::new(64), Some(3)), "0");
        assert_eq!(to_scientific(&Float::with_val(64, 1), Some(1)), "1e0");
    }

    #[test]
    fn round_trip_digit_count() {
        assert_eq!(round_trip_digits(53), 17);
        assert_eq!(round_trip_digits(256), 79);
    }

    #[test]
    fn half_even_rounding() {
        let d = DecimalDigits {
            negative: false,
            digits: vec![1, 2, 5],
            point: 1,
        };
        assert_eq!(d.round_significant(2).digits, vec![1, 2]);
        let d = DecimalDigits {
            negative: false,
            digits: vec![1, 3, 5],
            point: 1,
        };
        assert_eq!(d.round_significant(2).digits, vec![1, 4]);
        let d = DecimalDigits {
            negative: false,
            digits: vec![9, 9, 9, 7],
            point: 1,
        };
        let r = d.round_significant(3);
        assert_eq!((r.digits.clone(), r.point), (vec![1, 0, 0], 2));
        let d = DecimalDigits {
            negative: false,
            digits: vec![4, 9],
            point: 0,
        };
        assert!(d.round_at_place(0).is_zero());
        let d = DecimalDigits {
            negative: false,
            digits: vec![7],
            point: 0,
        };
        let r = d.round_at_place(0);
        assert_eq!((r.digits.clone(), r.point), (vec![1], 1));
    }

    #[test]
    fn fixed_point_layout() {
        let d = DecimalDigits::of(&Float::with_val(128, 0.0117067), 20);
        assert_eq!(d.fixed_magnitude(-4), "0.0117");
        let d = DecimalDigits::of(&Float::with_val(128, 43744.83), 20);
        assert_eq!(d.fixed_magnitude(-1), "43744.8");
        assert_eq!(d.fixed_magnitude(1), "43740");
        let d = DecimalDigits::of(&Float::with_val(128, 8.3799), 20);
        assert_eq!(d.fixed_magnitude(-2), "8.38");
        assert_eq!(d.shifted(-1).fixed_magnitude(-3), "0.838");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_scientific("1.5e-3", 64).is_ok());
        assert!(parse_scientific("nope", 64).is_err());
    }
}
