//! Gaussian-integer helpers for fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    pub fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    /// `c * l`, where `l` is a common multiple of the denominators of `c`.
    pub fn scaled(c: &GaussianRational, l: &BigInt) -> Self {
        Self {
            re: c.re().numer() * (l / c.re().denom()),
            im: c.im().numer() * (l / c.im().denom()),
        }
    }

    pub fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn pow(&self, e: usize) -> GInt {
        (0..e).fold(GInt::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, d: &GInt) -> GInt {
        if d.im.is_zero() {
            return GInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        GInt {
            re: re / &norm,
            im: im / &norm,
        }
    }
}

/// Least common multiple of all denominators in `xs`.
pub fn common_denominator<'a>(xs: impl Iterator<Item = &'a GaussianRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()).lcm(c.im().denom()))
}

/// Coefficients (constant first) scaled to Gaussian integers; zero
/// polynomial gives an empty vector.
pub fn integer_coeffs(c: &[GaussianRational]) -> Vec<GInt> {
    let l = common_denominator(c.iter());
    c.iter().map(|x| GInt::scaled(x, &l)).collect()
}

fn trim(mut v: Vec<GInt>) -> Vec<GInt> {
    while v.last().is_some_and(GInt::is_zero) {
        v.pop();
    }
    v
}

/// `lc(b)^(deg a - deg b + 1) a mod b`, computed without division.
fn pseudo_rem(a: &[GInt], b: &[GInt]) -> Vec<GInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for (i, c) in r.iter_mut().enumerate() {
            *c = c.mul(lb);
            if i >= shift {
                *c = c.sub(&lr.mul(&b[i - shift]));
            }
        }
        r = trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e);
        for c in &mut r {
            *c = c.mul(&f);
        }
    }
    r
}

/// Last nonzero member of the subresultant remainder sequence of two
/// nonzero integer polynomials; an associate of their gcd.
pub fn subresultant_gcd(a: Vec<GInt>, b: Vec<GInt>) -> Vec<GInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = GInt::one();
    let mut h = GInt::one();
    loop {
        let delta = a.len() - b.len();
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return r;
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.div_exact(&div)).collect();
        g = a.last().expect("nonzero").clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g.pow(d).div_exact(&h.pow(d - 1)),
        };
    }
}

/// Integer multiple of a polynomial, evaluated with integer Horner steps.
#[derive(Clone, Debug)]
pub(crate) struct IntPoly {
    coeffs: Vec<GInt>,
}

impl IntPoly {
    pub fn new(c: &[GaussianRational]) -> Self {
        Self {
            coeffs: trim(integer_coeffs(c)),
        }
    }

    pub fn leading(&self) -> GaussianRational {
        self.coeffs.last().map(GInt::to_rational).unwrap_or_else(GaussianRational::zero)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let k = BigInt::from(k);
                GInt {
                    re: &c.re * &k,
                    im: &c.im * &k,
                }
            })
            .collect();
        Self { coeffs: trim(coeffs) }
    }

    /// Exact value at `z = (a + bi)/L`: the Horner recurrence runs on
    /// `L^n p(z)` so only the final division normalizes.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let Some((last, rest)) = self.coeffs.split_last() else {
            return GaussianRational::zero();
        };
        let l = z.re().denom().lcm(z.im().denom());
        let w = GInt::scaled(z, &l);
        let mut acc = last.clone();
        let mut pw = BigInt::one();
        for c in rest.iter().rev() {
            pw *= &l;
            acc = acc.mul(&w);
            acc.re += &c.re * &pw;
            acc.im += &c.im * &pw;
        }
        let den = BigRational::from_integer(pw);
        GaussianRational::new(
            BigRational::from_integer(acc.re) / &den,
            BigRational::from_integer(acc.im) / &den,
        )
    }
}
