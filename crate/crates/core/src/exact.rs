//! Exact scalars: Gaussian rationals over `BigRational`, plus the dyadic
//! rounding helpers used by ball arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// Exact conversion of a finite double-precision complex value.
    pub fn from_complex64(z: Complex64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Both parts rounded to the nearest dyadic number with `bits` significant bits.
    pub fn round_to_bits(&self, bits: u32) -> Self {
        Self::new(round_to_bits(&self.re, bits), round_to_bits(&self.im, bits))
    }

    /// Total order by real part, then imaginary part. Used for deterministic output.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tra<&GaussianRational> for GaussianRational {
            fn $ma(&mut self, rhs: &GaussianRational) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{} + {}i", self.re, self.im)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dyadic helpers
// ---------------------------------------------------------------------------

#[cfg(test)]
fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << (e as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Approximate `floor(log2 |x|)` for nonzero `x` (off by at most one).
fn log2_estimate(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Nearest dyadic rational with `bits` significant bits.
pub fn round_to_bits(x: &BigRational, bits: u32) -> BigRational {
    round_dyadic(x, bits, false)
}

/// Dyadic upper bound of a non-negative rational, with `bits` significant bits.
pub fn round_up_bits(x: &BigRational, bits: u32) -> BigRational {
    round_dyadic(x, bits, true)
}

/// `m * 2^e` with `m = round(x / 2^e)` (or the ceiling), computed with
/// integer shifts and one division.
fn round_dyadic(x: &BigRational, bits: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    if x.denom().is_one() && x.numer().bits() <= bits as u64 {
        return x.clone();
    }
    let e = log2_estimate(x) - bits as i64;
    let (num, den) = if e <= 0 {
        (x.numer() << ((-e) as usize), x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (e as usize))
    };
    let (q, r) = num.div_mod_floor(&den);
    let m = if up {
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    } else if (r << 1usize) >= den {
        q + 1
    } else {
        q
    };
    if m.is_zero() {
        return BigRational::zero();
    }
    if e >= 0 {
        return BigRational::from_integer(m << (e as usize));
    }
    let tz = m.trailing_zeros().unwrap_or(0).min((-e) as u64);
    BigRational::new_raw(m >> (tz as usize), BigInt::one() << ((-e) as u64 - tz) as usize)
}

/// Integer square root scaled so the result carries at least ~64 significant bits.
fn scaled_isqrt(x: &BigRational) -> (BigInt, BigInt) {
    // sqrt(a/b) = sqrt(a*b)/b, shifted by 4^k to keep precision.
    let prod = x.numer() * x.denom();
    let want = 160u64;
    let k = if prod.bits() < want {
        ((want - prod.bits()) / 2 + 1) as usize
    } else {
        0
    };
    let shifted = prod << (2 * k);
    let root = shifted.sqrt();
    let den = x.denom() << k;
    (root, den)
}

/// A rational `s >= sqrt(x)` for `x >= 0`, tight to roughly 64 bits.
pub fn sqrt_upper(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    debug_assert!(x.is_positive());
    let (root, den) = scaled_isqrt(x);
    round_up_bits(&BigRational::new(root + 1, den), 64)
}

/// A rational `s <= sqrt(x)` for `x >= 0`, tight to roughly 64 bits.
pub fn sqrt_lower(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let (root, den) = scaled_isqrt(x);
    let s = BigRational::new(root, den);
    // Round down by taking the upper rounding of a slightly reduced value.
    let approx = round_to_bits(&s, 64);
    if &approx * &approx <= *x {
        approx
    } else {
        s
    }
}

/// Scientific decimal rendering with `digits` significant digits.
/// With `round_up`, the rendered magnitude is never below `|x|`.
pub fn decimal_string(x: &BigRational, digits: usize, round_up: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);
    // e10 with 10^e10 <= a < 10^(e10+1)
    let mut e10 = ((log2_estimate(&a) as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while pow10(e10) > a {
        e10 -= 1;
    }
    while pow10(e10 + 1) <= a {
        e10 += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - e10);
    let mut m = if round_up { scaled.ceil() } else { scaled.round() }.to_integer();
    if m >= num_traits::pow(ten.clone(), digits) {
        m /= &ten;
        e10 += 1;
    }
    let s = m.to_str_radix(10);
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    out.push_str(&format!("e{}", e10));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(q(re.0, re.1), q(im.0, im.1))
    }

    #[test]
    fn conjugate_product_is_norm() {
        let a = gr((1, 1), (1, 1));
        let b = gr((1, 1), (-1, 1));
        assert_eq!(&a * &b, GaussianRational::from_integer(2));
    }

    #[test]
    fn additive_identity() {
        let a = gr((3, 7), (-2, 5));
        assert_eq!(&a + &GaussianRational::zero(), a);
    }

    #[test]
    fn rational_division() {
        let a = GaussianRational::from_ratio(3, 2);
        let b = GaussianRational::from_ratio(1, 2);
        assert_eq!(a.checked_div(&b).unwrap(), GaussianRational::from_integer(3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = GaussianRational::from_integer(1);
        assert!(matches!(
            a.checked_div(&GaussianRational::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        for (n, d) in [(2, 1), (1, 3), (10_i64.pow(12) + 7, 3), (1, 10_i64.pow(15))] {
            let x = q(n, d);
            let hi = sqrt_upper(&x);
            let lo = sqrt_lower(&x);
            assert!(&hi * &hi >= x);
            assert!(&lo * &lo <= x);
            assert!(hi >= lo);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&q(1, 3), 5, false), "3.3333e-1");
        assert_eq!(decimal_string(&q(1, 3), 5, true), "3.3334e-1");
        assert_eq!(decimal_string(&q(-250, 1), 3, false), "-2.50e2");
        assert_eq!(decimal_string(&q(999, 1000), 2, false), "1.0e0");
    }

    #[test]
    fn dyadic_rounding_error_is_small() {
        let x = q(1, 3);
        let r = round_to_bits(&x, 53);
        let err = (&x - &r).abs();
        assert!(err * pow2(54) <= x);
        assert!(round_up_bits(&x, 20) >= x);
    }
}
