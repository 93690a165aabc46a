//! Complex ball arithmetic with dyadic centers.
//!
//! A [`ComplexBall`] is a disk `{ z : |z - center| <= radius }`. Centers are
//! rounded to `precision` significant bits after every operation and the
//! rounding error is folded into the radius, so every operation is
//! conservative: if the inputs contain exact values `a` and `b`, the output
//! contains `a op b`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{decimal_string, round_up_bits, sqrt_lower, sqrt_upper, GaussianRational};

pub const DEFAULT_PRECISION: u32 = 128;
pub const PRECISION_CAP: u32 = 4096;
const RADIUS_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    center: GaussianRational,
    radius: BigRational,
    precision: u32,
}

/// Outcome of asking whether a ball may contain zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroTest {
    CertainlyNonzero,
    PossiblyZero,
}

impl ComplexBall {
    /// Builds a ball, rounding the center to `precision` bits and widening the
    /// radius by the rounding error.
    pub fn new(center: GaussianRational, radius: BigRational, precision: u32) -> Self {
        assert!(!radius.is_negative(), "ball radius must be non-negative");
        let rounded = center.round_to_bits(precision);
        let err = (&center - &rounded).norm_sqr();
        let radius = if err.is_zero() {
            radius
        } else {
            radius + sqrt_upper(&err)
        };
        Self {
            center: rounded,
            radius: round_up_bits(&radius, RADIUS_BITS),
            precision,
        }
    }

    pub fn exact(value: GaussianRational, precision: u32) -> Self {
        Self::new(value, BigRational::zero(), precision)
    }

    pub fn from_f64(re: f64, im: f64, radius: f64, precision: u32) -> Self {
        let c = GaussianRational::new(
            BigRational::from_float(re).expect("finite center"),
            BigRational::from_float(im).expect("finite center"),
        );
        Self::new(c, BigRational::from_float(radius).expect("finite radius"), precision)
    }

    pub fn center(&self) -> &GaussianRational {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::new(self.center.clone(), self.radius.clone(), precision)
    }

    /// Upper bound of `|z|` over the ball.
    pub fn abs_upper(&self) -> BigRational {
        sqrt_upper(&self.center.norm_sqr()) + &self.radius
    }

    /// Lower bound of `|z|` over the ball (zero if the ball may contain zero).
    pub fn abs_lower(&self) -> BigRational {
        let c = sqrt_lower(&self.center.norm_sqr());
        if c > self.radius {
            c - &self.radius
        } else {
            BigRational::zero()
        }
    }

    pub fn zero_test(&self) -> ZeroTest {
        if self.center.norm_sqr() > &self.radius * &self.radius {
            ZeroTest::CertainlyNonzero
        } else {
            ZeroTest::PossiblyZero
        }
    }

    /// Certified containment of an exact value.
    pub fn contains(&self, v: &GaussianRational) -> bool {
        (v - &self.center).norm_sqr() <= &self.radius * &self.radius
    }

    /// True unless the two disks are certainly disjoint.
    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        let d2 = (&self.center - &other.center).norm_sqr();
        let r = &self.radius + &other.radius;
        d2 <= &r * &r
    }

    /// `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &ComplexBall) -> bool {
        if other.radius > self.radius {
            return false;
        }
        let d2 = (&self.center - &other.center).norm_sqr();
        let slack = &self.radius - &other.radius;
        d2 <= &slack * &slack
    }

    fn prec_with(&self, other: &ComplexBall) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &ComplexBall) -> ComplexBall {
        ComplexBall::new(
            &self.center + &other.center,
            &self.radius + &other.radius,
            self.prec_with(other),
        )
    }

    pub fn sub(&self, other: &ComplexBall) -> ComplexBall {
        ComplexBall::new(
            &self.center - &other.center,
            &self.radius + &other.radius,
            self.prec_with(other),
        )
    }

    pub fn neg(&self) -> ComplexBall {
        Self {
            center: -&self.center,
            radius: self.radius.clone(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &ComplexBall) -> ComplexBall {
        let mut radius = &self.radius * &other.radius;
        if !other.radius.is_zero() {
            radius += sqrt_upper(&self.center.norm_sqr()) * &other.radius;
        }
        if !self.radius.is_zero() {
            radius += sqrt_upper(&other.center.norm_sqr()) * &self.radius;
        }
        ComplexBall::new(&self.center * &other.center, radius, self.prec_with(other))
    }

    pub fn mul_exact(&self, k: &GaussianRational) -> ComplexBall {
        let radius = if self.radius.is_zero() {
            BigRational::zero()
        } else {
            sqrt_upper(&k.norm_sqr()) * &self.radius
        };
        ComplexBall::new(&self.center * k, radius, self.precision)
    }

    pub fn recip(&self) -> Result<ComplexBall> {
        let low = sqrt_lower(&self.center.norm_sqr());
        if low <= self.radius {
            return Err(Error::NeedPrecision {
                bits: self.precision,
                next: self.precision.saturating_mul(2),
            });
        }
        let center = self.center.inv()?;
        // |1/z - 1/c| <= r / (|c| (|c| - r))
        let radius = if self.radius.is_zero() {
            BigRational::zero()
        } else {
            &self.radius / (&low * (&low - &self.radius))
        };
        Ok(ComplexBall::new(center, radius, self.precision))
    }

    pub fn div(&self, other: &ComplexBall) -> Result<ComplexBall> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        self.center.to_complex64()
    }

    /// Deterministic ordering by center (real part, then imaginary part).
    pub fn center_cmp(&self, other: &ComplexBall) -> Ordering {
        self.center.lex_cmp(&other.center)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = decimal_digits(self.precision);
        write!(
            f,
            "[{} {} {}i +/- {}]",
            decimal_string(self.center.re(), digits, false),
            if self.center.im().is_negative() { "-" } else { "+" },
            decimal_string(&self.center.im().abs(), digits, false),
            decimal_string(&self.radius, 3, true)
        )
    }
}

/// Significant decimal digits printed for a given binary precision (capped).
fn decimal_digits(precision: u32) -> usize {
    ((precision as f64 * std::f64::consts::LOG10_2) as usize).clamp(6, 40)
}

#[derive(Serialize)]
struct BallRepr {
    re: String,
    im: String,
    radius: String,
    precision_bits: u32,
}

impl Serialize for ComplexBall {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = decimal_digits(self.precision);
        BallRepr {
            re: decimal_string(self.center.re(), digits, false),
            im: decimal_string(self.center.im(), digits, false),
            radius: decimal_string(&self.radius, 3, true),
            precision_bits: self.precision,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_test_cases() {
        let p = DEFAULT_PRECISION;
        assert_eq!(
            ComplexBall::from_f64(5.0, 0.0, 1.0, p).zero_test(),
            ZeroTest::CertainlyNonzero
        );
        assert_eq!(
            ComplexBall::from_f64(0.0, 0.0, 0.1, p).zero_test(),
            ZeroTest::PossiblyZero
        );
        assert_eq!(
            ComplexBall::from_f64(0.05, 0.0, 0.1, p).zero_test(),
            ZeroTest::PossiblyZero
        );
    }

    #[test]
    fn rounding_widens_radius() {
        let third = GaussianRational::from_ratio(1, 3);
        let b = ComplexBall::exact(third.clone(), 64);
        assert!(b.contains(&third));
        assert!(!b.radius().is_zero());
    }

    #[test]
    fn recip_of_ball_around_zero_needs_precision() {
        let b = ComplexBall::from_f64(0.0, 0.0, 0.5, 128);
        assert!(matches!(b.recip(), Err(Error::NeedPrecision { .. })));
    }
}
