//! Dense univariate polynomials over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::zi::{self, GInt};

/// Coefficients are stored constant term first; the last stored coefficient
/// is never zero. The zero polynomial has no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: &GaussianRational) -> Self {
        Self::new(vec![-a, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0. Only for bookkeeping where
    /// the zero case has been excluded or does not matter.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &GaussianRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder with `self = divisor * q + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussianRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor, computed from a subresultant remainder
    /// sequence.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        Ok(subresultant_last(self, other).monic())
    }

    /// True iff the two polynomials share no complex root.
    pub fn is_coprime(&self, other: &Poly) -> Result<bool> {
        Ok(self.gcd(other)?.is_constant())
    }

    /// Resultant of two nonzero polynomials (equals the Sylvester determinant
    /// at their actual degrees).
    pub fn resultant(&self, other: &Poly) -> Result<GaussianRational> {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Err(Error::ZeroPolynomial("resultant"));
        };
        if n == 0 {
            return Ok(other.coeffs[0].pow(m as u32));
        }
        if m == 0 {
            return Ok(self.coeffs[0].pow(n as u32));
        }
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r), r = a mod b
        let r = self.rem(other)?;
        let Some(dr) = r.degree() else {
            return Ok(GaussianRational::zero());
        };
        let mut res = other.coeffs[n].pow((m - dr) as u32) * other.resultant(&r)?;
        if (m * n) % 2 == 1 {
            res = -res;
        }
        Ok(res)
    }

    /// Monic polynomial with the same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        if self.is_constant() {
            return Ok(Poly::one());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_exact(&g)?.monic())
    }

    /// Yun's algorithm: monic, pairwise coprime, squarefree factors with
    /// multiplicities such that `self = lc * prod factor^mult`. Ordered by
    /// increasing multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_decomposition"));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df)?;
        let mut a = f.div_exact(&g)?;
        let mut b = df.div_exact(&g)?;
        let mut c = &b - &a.derivative();
        let mut mult = 1u32;
        loop {
            if c.is_zero() {
                if !a.is_constant() {
                    out.push((a.monic(), mult));
                }
                break;
            }
            let d = a.gcd(&c)?;
            if !d.is_constant() {
                out.push((d.clone(), mult));
            }
            a = a.div_exact(&d)?;
            b = c.div_exact(&d)?;
            c = &b - &a.derivative();
            mult += 1;
            if a.is_constant() {
                break;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, a: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    pub fn eval_ball(&self, b: &ComplexBall) -> ComplexBall {
        let prec = b.precision();
        let mut acc = ComplexBall::exact(GaussianRational::zero(), prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(b).add(&ComplexBall::exact(c.clone(), prec));
        }
        acc
    }

    pub fn eval_f64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex64();
        }
        acc
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct nodes,
    /// via Newton divided differences.
    pub fn interpolate(points: &[(GaussianRational, GaussianRational)]) -> Result<Poly> {
        let n = points.len();
        let mut dd: Vec<GaussianRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num.checked_div(&den)?;
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear_root(&points[i].0)) + &Poly::constant(dd[i].clone());
        }
        Ok(acc)
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `x^deg * self(1/x)` taken with respect to the given formal degree.
    pub fn reversed(&self, formal_degree: usize) -> Poly {
        let mut coeffs = vec![GaussianRational::zero(); formal_degree + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[formal_degree - k] = c.clone();
        }
        Poly::new(coeffs)
    }
}

/// Associate of `gcd(a, b)` for nonzero `a` and `b`, from a subresultant
/// remainder sequence over the Gaussian integers.
fn subresultant_last(a: &Poly, b: &Poly) -> Poly {
    let g = zi::subresultant_gcd(zi::integer_coeffs(&a.coeffs), zi::integer_coeffs(&b.coeffs));
    Poly::new(g.iter().map(GInt::to_rational).collect())
}

/// Determinant of the Sylvester matrix of `p` and `q` taken at formal
/// degrees `m >= deg p` and `n >= deg q` (leading coefficients may vanish).
pub fn sylvester_resultant(p: &Poly, q: &Poly, m: usize, n: usize) -> GaussianRational {
    let size = m + n;
    if size == 0 {
        return GaussianRational::one();
    }
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![GaussianRational::zero(); size];
        for k in 0..=m {
            row[i + k] = p.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![GaussianRational::zero(); size];
        for k in 0..=n {
            row[i + k] = q.coeff(n - k);
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Exact determinant. Rows are scaled to Gaussian integers and reduced with
/// fraction-free (Bareiss) elimination, which keeps intermediate entries as
/// minors of the scaled matrix.
pub(crate) fn determinant(a: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = a.len();
    if n == 0 {
        return GaussianRational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<GInt>> = Vec::with_capacity(n);
    for row in &a {
        let l = zi::common_denominator(row.iter());
        m.push(row.iter().map(|c| GInt::scaled(c, &l)).collect());
        scale *= l;
    }
    let mut negate = false;
    let mut prev = GInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return GaussianRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = GInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = &m[n - 1][n - 1];
    let q = BigRational::from_integer(scale);
    let det = GaussianRational::new(
        BigRational::from_integer(d.re.clone()) / &q,
        BigRational::from_integer(d.im.clone()) / &q,
    );
    if negate {
        -det
    } else {
        det
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        Poly::new(out)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_poly(self, "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn product_of_linear_factors() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        // x^3 + 1 = (x + 2)(x^2 - 2x + 4) - 7
        let (q, r) = p(&[1, 0, 0, 1]).divmod(&p(&[2, 1])).unwrap();
        assert_eq!(q, p(&[4, -2, 1]));
        assert_eq!(r, p(&[-7]));
        assert!(matches!(p(&[1]).divmod(&Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(p(&[1, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), Poly::one());
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero()).unwrap(), p(&[1, 2]).monic());
        assert!(Poly::zero().gcd(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_with_gaussian_coefficients() {
        // (x - i)(x + 2) and (x - i)(x - 3)
        let xi = Poly::linear_root(&GaussianRational::i());
        let a = &xi * &p(&[2, 1]);
        let b = &xi * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), xi);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            p(&[1, 0, 1]).resultant(&p(&[-1, 1])).unwrap(),
            GaussianRational::from_integer(2)
        );
        let a = GaussianRational::from_ratio(3, 7);
        let xa = Poly::linear_root(&a);
        assert!(xa.resultant(&xa).unwrap().is_zero());
        assert_eq!(
            p(&[1, 0, 0, 1]).resultant(&p(&[0, 0, 3])).unwrap(),
            GaussianRational::from_integer(27)
        );
        assert!(Poly::zero().resultant(&p(&[1, 1])).is_err());
    }

    #[test]
    fn formal_sylvester_matches_actual_degrees() {
        let a = p(&[1, 0, 0, 1]);
        let b = p(&[0, 0, 3]);
        assert_eq!(sylvester_resultant(&a, &b, 3, 2), a.resultant(&b).unwrap());
        // Leading-zero padding of the second argument multiplies by lc(first).
        let padded = sylvester_resultant(&p(&[1, 2]), &p(&[3, 1]), 1, 2);
        assert_eq!(padded, p(&[1, 2]).resultant(&p(&[3, 1])).unwrap().scale(
            &num_rational::BigRational::from_integer(2.into())
        ));
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        // (x-1)^2 (x+2) -> (x-1)(x+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(f.squarefree_part().unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(p(&[2, 4]).squarefree_part().unwrap(), p(&[2, 4]).monic());
        assert!(Poly::zero().squarefree_part().is_err());
    }

    #[test]
    fn squarefree_decomposition_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(
            f.squarefree_decomposition().unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(p(&[0, 1]).squarefree_decomposition().unwrap(), vec![(p(&[0, 1]), 1)]);
        assert_eq!(
            p(&[0, 0, 0, 0, 1]).squarefree_decomposition().unwrap(),
            vec![(p(&[0, 1]), 4)]
        );
    }

    #[test]
    fn exact_evaluation() {
        assert!(p(&[-1, 0, 1]).eval(&GaussianRational::one()).is_zero());
        assert_eq!(
            p(&[1, 0, 0, 1]).eval(&GaussianRational::from_integer(-2)),
            GaussianRational::from_integer(-7)
        );
        let b = ComplexBall::from_f64(2.0, 0.0, 0.1, 128);
        assert!(p(&[0, 1]).eval_ball(&b).contains(&GaussianRational::from_integer(2)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4)
            .map(|t| {
                let x = GaussianRational::from_integer(t);
                let y = f.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(Poly::interpolate(&pts).unwrap(), f);
    }
}
