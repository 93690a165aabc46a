//! Certified isolation of the distinct complex roots of a polynomial.
//!
//! Roots of the squarefree part are approximated by Aberth iteration, first
//! in double precision and then in dyadic arithmetic rounded to the requested
//! number of bits. Each approximation `z_i` gets the inclusion radius
//! `n * |W_i|`, where `W_i = p(z_i) / prod_{j != i} (z_i - z_j)` is the
//! Weierstrass correction of the monic squarefree part. When these disks are
//! pairwise disjoint, each contains exactly one root. All radius and
//! separation computations are exact rational comparisons.
//!
//! Balls only localize roots. Equality and distinctness decisions elsewhere
//! in the crate are made with gcd and resultant computations.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::exact::{round_up_bits, sqrt_upper, GaussianRational};
use crate::poly::Poly;
use crate::zi::IntPoly;

const F64_MAX_ITER: usize = 600;
const REFINE_MAX_ITER: usize = 80;

/// Isolates the distinct roots of `p` at `precision` bits.
///
/// Returns exactly `deg(squarefree_part(p))` pairwise-disjoint balls sorted by
/// center. If the disks cannot be separated at this precision the error is
/// [`Error::NeedPrecision`] carrying the doubled precision.
pub fn isolate_roots(p: &Poly, precision: u32) -> Result<Vec<ComplexBall>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("isolate_roots"));
    }
    if p.is_constant() {
        return Err(Error::Internal("isolate_roots needs degree >= 1".into()));
    }
    let sf = p.squarefree_part()?;
    let n = sf.degree_or_zero();
    if n == 1 {
        let root = -sf.coeff(0);
        return Ok(vec![ComplexBall::exact(root, precision)]);
    }

    let mut approx = match initial_f64(&sf) {
        Some(zs) => zs,
        None => circle_start(n),
    };
    refine(&sf, &mut approx, precision);

    match certify(&sf, &approx, precision) {
        Some(mut balls) => {
            balls.sort_by(|a, b| a.center_cmp(b));
            Ok(balls)
        }
        None => Err(Error::NeedPrecision {
            bits: precision,
            next: precision.saturating_mul(2),
        }),
    }
}

/// [`isolate_roots`] with automatic precision doubling up to `cap` bits.
pub fn isolate_roots_auto(p: &Poly, precision: u32, cap: u32) -> Result<Vec<ComplexBall>> {
    with_precision(precision, cap, |bits| isolate_roots(p, bits))
}

/// Runs `f` at `start` bits, doubling on [`Error::NeedPrecision`] until `cap`.
pub fn with_precision<T>(start: u32, cap: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut bits = start.max(64);
    loop {
        match f(bits) {
            Err(Error::NeedPrecision { .. }) if bits < cap => bits = (bits * 2).min(cap),
            Err(Error::NeedPrecision { .. }) => return Err(Error::PrecisionExhausted { cap }),
            other => return other,
        }
    }
}

fn initial_f64(sf: &Poly) -> Option<Vec<GaussianRational>> {
    let c: Vec<Complex64> = sf.coeffs().iter().map(|c| c.to_complex64()).collect();
    if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return None;
    }
    let zs = aberth_f64(&c)?;
    zs.into_iter().map(GaussianRational::from_complex64).collect()
}

fn circle_start(n: usize) -> Vec<GaussianRational> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            GaussianRational::from_complex64(Complex64::from_polar(1.0, t)).expect("finite")
        })
        .collect()
}

fn horner_f64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Double-precision Aberth iteration on monic `c` (constant term first).
fn aberth_f64(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    // Fujiwara bound for the root moduli.
    let bound = (1..=n)
        .map(|k| {
            let a = c[n - k].norm();
            if k == n {
                (a / 2.0).powf(1.0 / k as f64)
            } else {
                a.powf(1.0 / k as f64)
            }
        })
        .fold(0.0_f64, f64::max)
        * 2.0;
    let center = -c[n - 1] / n as f64;
    let radius = (bound * 0.5).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, t)
        })
        .collect();

    let mut settled = 0;
    for _ in 0..F64_MAX_ITER {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let (p, dp) = horner_f64(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let mut w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                w = Complex64::new(1e-8 * (i as f64 + 1.0), 1e-8);
            }
            z[i] -= w;
            max_step = max_step.max(w.norm() / z[i].norm().max(1.0));
        }
        if !max_step.is_finite() {
            return None;
        }
        if max_step < 1e-15 {
            settled += 1;
            if settled >= 2 {
                break;
            }
        }
    }
    if z.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return None;
    }
    Some(z)
}

fn log2_norm_sqr(x: &BigRational) -> i64 {
    if x.is_zero() {
        i64::MIN / 4
    } else {
        x.numer().bits() as i64 - x.denom().bits() as i64
    }
}

/// Aberth iteration in dyadic arithmetic, rounding to `precision` bits.
fn refine(sf: &Poly, z: &mut [GaussianRational], precision: u32) {
    let n = z.len();
    let sf = IntPoly::new(sf.coeffs());
    let dsf = sf.derivative();
    let one = GaussianRational::one();
    let target = -2 * precision as i64 + 4;
    for _ in 0..REFINE_MAX_ITER {
        let mut worst = i64::MIN / 4;
        for i in 0..n {
            let pz = sf.eval(&z[i]);
            if pz.is_zero() {
                continue;
            }
            // Only the rounded Newton step is needed; shrink the operands first.
            let pz = pz.round_to_bits(precision + 16);
            let dpz = dsf.eval(&z[i]).round_to_bits(precision + 16);
            let Ok(ratio) = pz.checked_div(&dpz) else {
                z[i] = (&z[i] + &GaussianRational::from_ratio(1, 1 << 20)).round_to_bits(precision);
                worst = worst.max(0);
                continue;
            };
            let ratio = ratio.round_to_bits(precision);
            let mut s = GaussianRational::zero();
            for j in 0..n {
                if j == i {
                    continue;
                }
                match (&z[i] - &z[j]).inv() {
                    Ok(v) => s += &v.round_to_bits(precision),
                    Err(_) => {
                        s = GaussianRational::zero();
                        break;
                    }
                }
            }
            let denom = &one - &(&ratio * &s);
            let w = match ratio.checked_div(&denom) {
                Ok(w) => w.round_to_bits(precision),
                Err(_) => ratio.clone(),
            };
            z[i] = (&z[i] - &w).round_to_bits(precision);
            let scale = log2_norm_sqr(&z[i].norm_sqr()).max(0);
            worst = worst.max(log2_norm_sqr(&w.norm_sqr()) - scale);
        }
        if worst < target {
            break;
        }
    }
}

/// Inclusion disks `D(z_i, n |W_i|)`; `None` unless pairwise disjoint.
fn certify(sf: &Poly, z: &[GaussianRational], precision: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    // sf is monic; ip = lc * sf has integer coefficients.
    let ip = IntPoly::new(sf.coeffs());
    let lc2 = ip.leading().norm_sqr();
    let nq = BigRational::from_integer((n as i64).into());
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = ip.eval(&z[i]).norm_sqr();
        let mut den = lc2.clone();
        for j in 0..n {
            if j != i {
                let d = (&z[i] - &z[j]).norm_sqr();
                if d.is_zero() {
                    return None;
                }
                den *= d;
            }
        }
        let w2 = round_up_bits(&(num / den), 64);
        radii.push(&nq * sqrt_upper(&w2));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = (&z[i] - &z[j]).norm_sqr();
            let r = &radii[i] + &radii[j];
            if d2 <= &r * &r {
                return None;
            }
        }
    }
    Some(
        z.iter()
            .zip(radii)
            .map(|(c, r)| ComplexBall::new(c.clone(), r, precision))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn two_real_roots() {
        let balls = isolate_roots(&p(&[-1, 0, 1]), 128).unwrap();
        assert_eq!(balls.len(), 2);
        assert!(balls[0].contains(&GaussianRational::from_integer(-1)));
        assert!(balls[1].contains(&GaussianRational::from_integer(1)));
        assert!(!balls[0].overlaps(&balls[1]));
    }

    #[test]
    fn double_root_gives_one_ball() {
        let balls = isolate_roots(&p(&[0, 0, 1]), 128).unwrap();
        assert_eq!(balls.len(), 1);
        assert!(balls[0].contains(&GaussianRational::zero()));
    }

    #[test]
    fn cube_roots_of_minus_one() {
        let balls = isolate_roots(&p(&[1, 0, 0, 1]), 128).unwrap();
        assert_eq!(balls.len(), 3);
        let expected = [
            Complex64::new(-1.0, 0.0),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3),
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_3),
        ];
        for e in expected {
            let hits = balls
                .iter()
                .filter(|b| (b.to_complex64() - e).norm() < 1e-12)
                .count();
            assert_eq!(hits, 1);
        }
        // The rational root is enclosed exactly.
        assert!(balls.iter().any(|b| b.contains(&GaussianRational::from_integer(-1))));
    }

    #[test]
    fn close_roots_are_separated() {
        // (x - 1)(x - 1 - 2^-60)
        let eps = GaussianRational::new(
            BigRational::new(1.into(), num_bigint::BigInt::one() << 60),
            BigRational::zero(),
        );
        let a = GaussianRational::one();
        let b = &a + &eps;
        let f = &Poly::linear_root(&a) * &Poly::linear_root(&b);
        let balls = isolate_roots_auto(&f, 64, 1024).unwrap();
        assert_eq!(balls.len(), 2);
        assert!(balls.iter().any(|x| x.contains(&a)));
        assert!(balls.iter().any(|x| x.contains(&b)));
    }

    #[test]
    fn gaussian_coefficients() {
        // (x - i)^2 (x + 2 - i)
        let xi = Poly::linear_root(&GaussianRational::i());
        let other = Poly::linear_root(&GaussianRational::new(
            BigRational::from_integer((-2).into()),
            BigRational::one(),
        ));
        let f = &xi.pow(2) * &other;
        let balls = isolate_roots(&f, 128).unwrap();
        assert_eq!(balls.len(), 2);
        assert!(balls.iter().any(|b| b.contains(&GaussianRational::i())));
    }
}
