use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

/// Binary floating point with an arbitrary working precision and an
/// exponent range far beyond ±10^10000.
pub type BigReal = Float;

/// Complex number with two [`BigReal`] components.
///
/// Results of binary operations carry the larger precision of the operands.
/// Addition, subtraction and multiplication are correctly rounded per
/// component (products are formed exactly before the final rounding);
/// division and modulus are within a few units in the last place.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Self::new(Float::new(bits), Float::new(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::new(Float::with_val(bits, 1), Float::new(bits))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn round_to(&self, bits: u32) -> Self {
        Self::new(Float::with_val(bits, &self.re), Float::with_val(bits, &self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Modulus |self|.
    pub fn abs(&self) -> BigReal {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn scale(&self, factor: &BigReal) -> Self {
        let bits = self.prec().max(factor.prec());
        Self::new(
            Float::with_val(bits, &self.re * factor),
            Float::with_val(bits, &self.im * factor),
        )
    }

    pub fn recip(&self) -> Self {
        let bits = self.prec();
        let wide = bits + 16;
        let denom = Float::with_val(wide, self.re.square_ref()) + Float::with_val(wide, self.im.square_ref());
        Self::new(
            Float::with_val(bits, &self.re / &denom),
            Float::with_val(bits, -Float::with_val(wide, &self.im / &denom)),
        )
    }

    /// self^n for integer n by repeated squaring.
    pub fn powi(&self, n: i64) -> Self {
        let bits = self.prec();
        let wide = bits + 2 * (64 - n.unsigned_abs().leading_zeros()) + 8;
        let mut base = self.round_to(wide);
        let mut acc = Self::one(wide);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        let acc = if n < 0 { acc.recip() } else { acc };
        acc.round_to(bits)
    }

    pub fn exp(&self) -> Self {
        let bits = self.prec();
        let modulus = Float::with_val(bits, self.re.exp_ref());
        let (sin, cos) = self.im.clone().sin_cos(Float::new(bits));
        Self::new(
            Float::with_val(bits, &modulus * &cos),
            Float::with_val(bits, &modulus * &sin),
        )
    }

    /// Principal logarithm: ln|z| + i·Arg z with Arg in (−π, π].
    pub fn ln(&self) -> Self {
        let bits = self.prec();
        let modulus = self.abs();
        Self::new(
            Float::with_val(bits, modulus.ln_ref()),
            Float::with_val(bits, self.im.atan2_ref(&self.re)),
        )
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> BigReal {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

pub(crate) fn pi(bits: u32) -> BigReal {
    Float::with_val(bits, Constant::Pi)
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(
            Float::with_val(self.re.prec(), -&self.re),
            Float::with_val(self.im.prec(), -&self.im),
        )
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let bits = self.prec().max(rhs.prec());
        BigComplex::new(
            Float::with_val(bits, &self.re + &rhs.re),
            Float::with_val(bits, &self.im + &rhs.im),
        )
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let bits = self.prec().max(rhs.prec());
        BigComplex::new(
            Float::with_val(bits, &self.re - &rhs.re),
            Float::with_val(bits, &self.im - &rhs.im),
        )
    }
}

/// Exact product of two floats.
fn exact_mul(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec() + b.prec(), a * b)
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let bits = self.prec().max(rhs.prec());
        if self.im.is_zero() && rhs.im.is_zero() {
            return BigComplex::new(Float::with_val(bits, &self.re * &rhs.re), Float::new(bits));
        }
        let ac = exact_mul(&self.re, &rhs.re);
        let bd = exact_mul(&self.im, &rhs.im);
        let ad = exact_mul(&self.re, &rhs.im);
        let bc = exact_mul(&self.im, &rhs.re);
        BigComplex::new(Float::with_val(bits, &ac - &bd), Float::with_val(bits, &ad + &bc))
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let bits = self.prec().max(rhs.prec());
        if rhs.im.is_zero() {
            return BigComplex::new(
                Float::with_val(bits, &self.re / &rhs.re),
                Float::with_val(bits, &self.im / &rhs.re),
            );
        }
        let wide = bits + 16;
        let num = &self.round_to(wide) * &rhs.conj().round_to(wide);
        let denom = Float::with_val(wide, rhs.re.square_ref()) + Float::with_val(wide, rhs.im.square_ref());
        BigComplex::new(
            Float::with_val(bits, &num.re / &denom),
            Float::with_val(bits, &num.im / &denom),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        if rhs.prec() <= self.prec() {
            self.re += &rhs.re;
            self.im += &rhs.im;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        if rhs.prec() <= self.prec() {
            self.re -= &rhs.re;
            self.im -= &rhs.im;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = &*self * rhs;
    }
}
