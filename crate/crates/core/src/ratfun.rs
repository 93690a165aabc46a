//! Reduced rational functions `A/B` with the degree conventions
//! `deg(F) = max(deg A, deg B)`, `gamma(P)` = number of distinct zeros, and
//! `lambda(F) = min(gamma(A), gamma(B))`.

use std::fmt;

use num_traits::{One, Zero};

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::poly::Poly;

/// `numer / denom` with `gcd(numer, denom) = 1` and `denom` monic.
/// The zero function is stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    numer: Poly,
    denom: Poly,
}

impl RatFun {
    /// Removes the common factor and makes the denominator monic.
    pub fn reduce(a: Poly, b: Poly) -> Result<RatFun> {
        if b.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if a.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = a.gcd(&b)?;
        let (a, b) = if g.is_constant() {
            (a, b)
        } else {
            (a.div_exact(&g)?, b.div_exact(&g)?)
        };
        let lc = b.leading().expect("nonzero").clone();
        if lc.is_one() {
            return Ok(RatFun { numer: a, denom: b });
        }
        let inv = lc.inv()?;
        Ok(RatFun {
            numer: a.scale(&inv),
            denom: b.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    pub fn x() -> RatFun {
        RatFun::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.numer.is_constant() && self.denom.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_constant()
    }

    /// `max(deg numer, deg denom)`; the zero function has degree 0.
    pub fn degree(&self) -> usize {
        self.numer.degree_or_zero().max(self.denom.degree_or_zero())
    }

    /// `min(gamma(numer), gamma(denom))`; 0 for the zero function.
    pub fn lambda(&self) -> usize {
        if self.numer.is_zero() {
            return 0;
        }
        let a = gamma(&self.numer).expect("numerator is nonzero");
        let b = gamma(&self.denom).expect("denominator is nonzero");
        a.min(b)
    }

    /// Quotient rule `(A'B - AB') / B^2`, reduced.
    pub fn derivative(&self) -> RatFun {
        let top = &(&self.numer.derivative() * &self.denom) - &(&self.numer * &self.denom.derivative());
        RatFun::reduce(top, self.denom.pow(2)).expect("denominator is nonzero")
    }

    /// `B / A`, renormalized.
    pub fn reciprocal(&self) -> Result<RatFun> {
        if self.numer.is_zero() {
            return Err(Error::ReciprocalOfZero);
        }
        RatFun::reduce(self.denom.clone(), self.numer.clone())
    }

    /// `F + h = (A + hB) / B`.
    pub fn shift(&self, h: &GaussianRational) -> RatFun {
        RatFun {
            numer: &self.numer + &self.denom.scale(h),
            denom: self.denom.clone(),
        }
    }

    /// Leading coefficient of the numerator equals 1.
    pub fn is_numer_monic(&self) -> bool {
        self.numer.is_monic()
    }

    /// Exact value, `None` at a pole.
    pub fn eval(&self, a: &GaussianRational) -> Option<GaussianRational> {
        let d = self.denom.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.numer.eval(a).checked_div(&d).expect("nonzero"))
    }

    pub fn eval_ball(&self, b: &ComplexBall) -> Result<ComplexBall> {
        self.numer.eval_ball(b).div(&self.denom.eval_ball(b))
    }

    pub fn eval_f64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.numer.eval_f64(z) / self.denom.eval_f64(z)
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        let n = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
        RatFun::reduce(n, &self.denom * &rhs.denom).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        RatFun::reduce(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
            .expect("nonzero denominator")
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFun::reduce(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        // gcd(A^e, B^e) = 1 and B^e stays monic.
        RatFun {
            numer: self.numer.pow(e),
            denom: self.denom.pow(e),
        }
    }

    /// `self(inner(x))`, reduced.
    pub fn compose(&self, inner: &RatFun) -> RatFun {
        let d = self.degree();
        // Homogenize: A(u/v) v^d / (B(u/v) v^d)
        let hom = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &inner.numer.pow(k as u32) * &inner.denom.pow((d - k) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        RatFun::reduce(hom(&self.numer), hom(&self.denom)).expect("composition denominator is nonzero")
    }
}

/// Number of distinct complex zeros of a nonzero polynomial.
pub fn gamma(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("gamma"));
    }
    Ok(p.squarefree_part()?.degree_or_zero())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_ratfun(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(a: &[i64], b: &[i64]) -> RatFun {
        RatFun::reduce(p(a), p(b)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFun::from_poly(p(&[1, 1])));
        let f = rf(&[-1, 0, 1], &[0, 0, 1]);
        assert_eq!(f.numer(), &p(&[-1, 0, 1]));
        assert_eq!(f.denom(), &p(&[0, 0, 1]));
        assert_eq!(rf(&[0, 2], &[2]), RatFun::x());
        assert!(matches!(RatFun::reduce(p(&[1]), Poly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[0, 0, 1]).degree(), 2);
        assert_eq!(RatFun::constant(GaussianRational::from_integer(4)).degree(), 0);
        assert_eq!(rf(&[1, 0, 0, 1], &[2, 1]).degree(), 3);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&p(&[0, 0, 0, 1])).unwrap(), 1);
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(gamma(&f).unwrap(), 2);
        assert_eq!(gamma(&p(&[7])).unwrap(), 0);
        assert!(gamma(&Poly::zero()).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(rf(&[0, 0, 1], &[-1, 0, 1]).lambda(), 1);
        assert_eq!(RatFun::x().lambda(), 0);
        assert_eq!(rf(&[1, 0, 0, 1], &[2, 1]).lambda(), 1);
    }

    #[test]
    fn derivative_examples() {
        // ((x^2 - 1)/x^2)' = 2/x^3
        assert_eq!(rf(&[-1, 0, 1], &[0, 0, 1]).derivative(), rf(&[2], &[0, 0, 0, 1]));
        assert!(RatFun::constant(GaussianRational::from_integer(3)).derivative().is_zero());
        assert_eq!(rf(&[0, 0, 1], &[1]).derivative(), rf(&[0, 2], &[1]));
    }

    #[test]
    fn reciprocal_examples() {
        let f = rf(&[-1, 0, 1], &[0, 0, 1]);
        assert_eq!(f.reciprocal().unwrap(), rf(&[0, 0, 1], &[-1, 0, 1]));
        assert_eq!(f.reciprocal().unwrap().reciprocal().unwrap(), f);
        assert_eq!(RatFun::x().reciprocal().unwrap(), rf(&[1], &[0, 1]));
        assert!(RatFun::zero().reciprocal().is_err());
    }

    #[test]
    fn shift_examples() {
        let one = GaussianRational::one();
        assert_eq!(rf(&[0, 0, 1], &[1]).shift(&one), rf(&[1, 0, 1], &[1]));
        let g = rf(&[1, 0, 0, 1], &[2, 1]);
        assert_eq!(g.shift(&GaussianRational::zero()), g);
        assert_eq!(g.shift(&one), rf(&[3, 1, 0, 1], &[2, 1]));
    }

    #[test]
    fn numerator_monicity() {
        assert!(rf(&[0, 0, 1], &[-1, 0, 1]).is_numer_monic());
        assert!(!rf(&[0, 2], &[1]).is_numer_monic());
        assert!(rf(&[1, 0, 0, 1], &[2, 1]).is_numer_monic());
    }

    #[test]
    fn composition() {
        // F(x) = (x^2 - 1)/x^2 composed with 1/x gives 1 - x^2.
        let f = rf(&[-1, 0, 1], &[0, 0, 1]);
        let inv = rf(&[1], &[0, 1]);
        assert_eq!(f.compose(&inv), rf(&[1, 0, -1], &[1]));
    }
}
