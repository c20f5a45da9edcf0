//! Published table cells and printed-digit matching.

use crate::qcore::{BigComplex, BigReal, DecimalDigits, ExactReal};
use crate::{Error, Result};

/// One published Table 1 cell: n = 50, q = 0.5, z = u·q^(−nt).
#[derive(Clone, Copy, Debug)]
pub struct Table1Cell {
    pub u: &'static str,
    pub t: &'static str,
    pub true_value: &'static str,
    pub approx: &'static str,
    pub error: &'static str,
}

/// One published Table 2 cell: A_q(√q·x) against its q → 1 limit.
#[derive(Clone, Copy, Debug)]
pub struct Table2Cell {
    pub x: &'static str,
    pub q: &'static str,
    pub true_value: &'static str,
    pub approx: &'static str,
    pub error: &'static str,
}

macro_rules! t1 {
    ($u:expr, $t:expr, $tv:expr, $ap:expr, $er:expr) => {
        Table1Cell {
            u: $u,
            t: $t,
            true_value: $tv,
            approx: $ap,
            error: $er,
        }
    };
}

macro_rules! t2 {
    ($x:expr, $q:expr, $tv:expr, $ap:expr, $er:expr) => {
        Table2Cell {
            x: $x,
            q: $q,
            true_value: $tv,
            approx: $ap,
            error: $er,
        }
    };
}

pub const TABLE1: [Table1Cell; 16] = [
    t1!("1", "0", "0.16076", "0.16076", "2.99e-15"),
    t1!("1", "0.5", "-9.3534e42", "-9.3534e42", "2.98e-8"),
    t1!("1", "0.8", "1.0831e120", "1.0831e120", "1.78e-15"),
    t1!("1", "1.0", "-5.8398e187", "-5.8398e187", "1.18e-15"),
    t1!("1", "1.2", "3.5453e270", "3.5453e270", "6.05e-13"),
    t1!("1", "1.6", "1.8649e481", "1.8649e481", "6.36e-7"),
    t1!("-1", "0", "2.17267", "2.17267", "6.31e-16"),
    t1!("-1", "0.5", "8.0063e47", "8.0063e47", "6.12e-12"),
    t1!("-1", "0.8", "1.9036e121", "1.9306e121", "1.11e-9"),
    t1!("-1", "1.0", "1.0264e189", "1.0264e189", "3.54e-8"),
    t1!("-1", "1.2", "6.2313e271", "6.2312e271", "1.13e-6"),
    t1!("-1", "1.6", "3.2740e482", "3.2778e482", "1.16e-3"),
    t1!("1,1", "0", "0.0117-0.6786i", "0.0117-0.6786i", "8.83e-17"),
    t1!("1,1", "0.5", "(1.92+8.38i)e48", "(1.92+8.38i)e48", "3.16e-12"),
    t1!("1,1", "1.0", "(-8.18-1.87i)e191", "(-8.18-1.87i)e191", "1.39e-8"),
    t1!("1,1", "1.6", "(4.107-2.571i)e487", "(4.106-2.578i)e487", "4.55e-4"),
];

/// The 15-digit value of (q;q)_50 S_50(q^(−50); 0.5) quoted in the text.
pub const TABLE1_LONG_VALUE: &str = "-5.83981318477869e187";

pub const TABLE2: [Table2Cell; 30] = [
    t2!("0.5", "0.9", "-2.325e-3", "-2.320e-3", "0.0022"),
    t2!("0.5", "0.92", "-3.826e-4", "-3.819e-4", "0.0018"),
    t2!("0.5", "0.94", "1.120e-5", "1.118e-5", "0.0012"),
    t2!("0.5", "0.96", "-2.966e-8", "-2.964e-8", "0.00080"),
    t2!("0.5", "0.98", "5.080e-16", "5.078e-16", "0.00038"),
    t2!("0.5", "0.99", "4.9298e-32", "4.9303e-32", "0.0000995"),
    t2!("1.0", "0.9", "-5.171e-4", "-5.159e-4", "0.0022"),
    t2!("1.0", "0.92", "2.978e-5", "2.973e-5", "0.0018"),
    t2!("1.0", "0.94", "-2.556e-6", "-2.553e-6", "0.0013"),
    t2!("1.0", "0.96", "1.326e-9", "1.325e-9", "0.00087"),
    t2!("1.0", "0.98", "2.178e-18", "2.177e-18", "0.00043"),
    t2!("1.0", "0.99", "4.1417e-36", "4.1408e-36", "0.00021"),
    t2!("4.0", "0.9", "0.034973", "0.034891", "0.00235"),
    t2!("4.0", "0.92", "0.01680", "0.01677", "0.0018"),
    t2!("4.0", "0.94", "4.4202e-4", "4.1898e-4", "0.0028"),
    t2!("4.0", "0.96", "-1.0084e-4", "-1.0073e-4", "0.00107"),
    t2!("4.0", "0.98", "4.4912e-8", "4.4893e-8", "0.00043"),
    t2!("4.0", "0.99", "-5.6869e-16", "-5.6853e-16", "0.00028"),
    t2!("10", "0.9", "38.6522", "38.5316", "0.0031"),
    t2!("10", "0.92", "-247.876", "-247.372", "0.0020"),
    t2!("10", "0.94", "2715.83", "2712.29", "0.0013"),
    t2!("10", "0.96", "43744.8", "43745.2", "0.00022"),
    t2!("10", "0.98", "3.3978e10", "3.3961e10", "0.00051"),
    t2!("10", "0.99", "2.1941e21", "2.1944e21", "0.00014"),
    t2!("20", "0.9", "-2.0951e5", "-2.0884e5", "0.00320"),
    t2!("20", "0.92", "-3.5927e6", "-3.5801e6", "0.00349"),
    t2!("20", "0.94", "-5.9716e9", "-5.9645e9", "0.00119"),
    t2!("20", "0.96", "7.3472e14", "7.3418e14", "0.00073"),
    t2!("20", "0.98", "-6.1129e29", "-6.1124e29", "0.00007"),
    t2!("20", "0.99", "1.5900e61", "1.5897e61", "0.00023"),
];

/// A printed number: its exact decimal value and the place value of the
/// last printed digit of each component.
#[derive(Clone, Debug, PartialEq)]
pub struct PrintedCell {
    pub re: ExactReal,
    pub im: ExactReal,
    pub re_place: i64,
    pub im_place: Option<i64>,
}

impl PrintedCell {
    /// Accepts `d.ddd`, `d.ddde±E`, `a±bi` and `(a±bi)eE`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        let (body, shared) = match s.strip_prefix('(') {
            Some(rest) => {
                let (body, e) = rest.split_once(")e").ok_or_else(|| Error::Parse(src.into()))?;
                (body, e.parse::<i64>().map_err(|_| Error::Parse(src.into()))?)
            }
            None => (s, 0),
        };
        let (re_text, im_text) = match body.strip_suffix('i') {
            Some(inner) => {
                let split = inner
                    .char_indices()
                    .skip(1)
                    .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(inner.as_bytes()[i - 1], b'e' | b'E'))
                    .last()
                    .map(|(i, _)| i)
                    .ok_or_else(|| Error::Parse(src.into()))?;
                (&inner[..split], Some(&inner[split..]))
            }
            None => (body, None),
        };
        let component = |text: &str| -> Result<(ExactReal, i64)> {
            let text = text.trim_start_matches('+');
            let (mantissa, exp) = match text.split_once(['e', 'E']) {
                Some((m, e)) => (m, e.parse::<i64>().map_err(|_| Error::Parse(src.into()))?),
                None => (text, 0),
            };
            let decimals = mantissa.split_once('.').map(|(_, f)| f.len() as i64).unwrap_or(0);
            let value = ExactReal::parse(&format!("{mantissa}e{}", exp + shared))?;
            Ok((value, exp + shared - decimals))
        };
        let (re, re_place) = component(re_text)?;
        let (im, im_place) = match im_text {
            Some(t) => {
                let (v, p) = component(t)?;
                (v, Some(p))
            }
            None => (ExactReal::from(0), None),
        };
        Ok(Self {
            re,
            im,
            re_place,
            im_place,
        })
    }

    /// Whether `v` rounded (half to even) at the printed places reproduces
    /// the printed digits.
    pub fn matches(&self, v: &BigComplex) -> bool {
        let same = |x: &BigReal, printed: &ExactReal, place: i64| rounded_at(x, place) == *printed;
        let re_ok = same(&v.re, &self.re, self.re_place);
        match self.im_place {
            Some(place) => re_ok && same(&v.im, &self.im, place),
            None => re_ok,
        }
    }

    /// The printed value as a float pair.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `x` rounded half to even at place value 10^`place`, as an exact decimal.
pub fn rounded_at(x: &BigReal, place: i64) -> ExactReal {
    if x.is_zero() || !x.is_finite() {
        return ExactReal::from(0);
    }
    let d = DecimalDigits::of(x, 90).round_at_place(place);
    if d.is_zero() {
        return ExactReal::from(0);
    }
    ExactReal::parse(&d.scientific()).expect("formatted digits parse")
}

/// Whether `measured` lies within a factor `factor` of the printed error.
pub fn within_factor(measured: f64, printed: &str, factor: f64) -> bool {
    match printed.parse::<f64>() {
        Ok(p) if p > 0.0 && measured > 0.0 => {
            let ratio = measured / p;
            ratio <= factor && ratio >= 1.0 / factor
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn printed_places() {
        let c = PrintedCell::parse("-9.3534e42").unwrap();
        assert_eq!(c.re_place, 38);
        let c = PrintedCell::parse("0.16076").unwrap();
        assert_eq!(c.re_place, -5);
        let c = PrintedCell::parse("(1.92+8.38i)e48").unwrap();
        assert_eq!((c.re_place, c.im_place), (46, Some(46)));
        assert_eq!(c.im, ExactReal::parse("8.38e48").unwrap());
        let c = PrintedCell::parse("0.0117-0.6786i").unwrap();
        assert_eq!((c.re_place, c.im_place), (-4, Some(-4)));
        assert_eq!(c.im, ExactReal::parse("-0.6786").unwrap());
    }

    #[test]
    fn matching_rounds_half_even() {
        let c = PrintedCell::parse("0.16076").unwrap();
        let v = BigComplex::from_real(Float::with_val(256, 0.160763788932089));
        assert!(c.matches(&v));
        let v = BigComplex::from_real(Float::with_val(256, 0.16075));
        assert!(!c.matches(&v));
    }

    #[test]
    fn tables_parse() {
        for cell in TABLE1 {
            PrintedCell::parse(cell.true_value).unwrap();
            PrintedCell::parse(cell.approx).unwrap();
        }
        for cell in TABLE2 {
            PrintedCell::parse(cell.true_value).unwrap();
            PrintedCell::parse(cell.approx).unwrap();
        }
        assert!(within_factor(2.5e-15, "2.99e-15", 2.0));
        assert!(!within_factor(1.21e-15, "8.83e-17", 10.0));
    }
}
