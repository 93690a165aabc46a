//! Zeros and poles of `h = outer(base)` inside a disk, pulled back through
//! the explicit level sets of the base function.
//!
//! A root `w0` of multiplicity `mu` of an outer polynomial gives, for every
//! `z0` with `base(z0) = w0`, a point of order `mu` (or `2 mu` where
//! `base'(z0) = 0`). The level sets are lattices:
//!
//! * `exp z = w`: `log w + 2 pi i k`, empty for `w = 0`;
//! * `sin z = w`: `asin w + 2 pi k` and `pi - asin w + 2 pi k`, merged and
//!   doubled for `w = +-1`;
//! * `cos z = w`: `+-acos w + 2 pi k`, merged and doubled for `w = +-1`;
//! * `tan z = w`: `atan w + pi k`, empty for `w = +-i`.
//!
//! `tan` also reaches `w = infinity` at `pi/2 + pi k`, where `h` has a pole
//! or `h - b` a zero depending on the outer degrees.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};
use ratdec_core::GaussianRational;

use crate::error::{LabError, Result};
use crate::mero::{roots_with_multiplicity, Base, MeroExpr, WRoot};

/// Points closer than this to the origin count as the origin.
pub const ORIGIN_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub z: Complex64,
    pub mult: u32,
}

/// Zeros of `h - b`, or poles of `h`, as an enumerable set.
#[derive(Clone, Debug)]
pub struct Inventory {
    base: Base,
    roots: Vec<WRoot>,
    /// Order at each preimage of `w = infinity`.
    at_infinity: u32,
}

impl Inventory {
    /// Zeros of `h - b`.
    pub fn zeros(h: &MeroExpr, b: Complex64) -> Result<Inventory> {
        let bq = GaussianRational::from_complex64(b).ok_or(LabError::NonFinite("target"))?;
        let outer = h.outer();
        let p = outer.numer() - &outer.denom().scale(&bq);
        if p.is_zero() {
            return Err(LabError::Degenerate("h - b vanishes identically".into()));
        }
        let dq = outer.denom().degree_or_zero();
        let dp = p.degree_or_zero();
        Ok(Inventory {
            base: h.base(),
            roots: roots_with_multiplicity(&p, &special(h.base()))?,
            at_infinity: dq.saturating_sub(dp) as u32,
        })
    }

    /// Poles of `h`.
    pub fn poles(h: &MeroExpr) -> Result<Inventory> {
        let (dp, dq) = h.degrees();
        Ok(Inventory {
            base: h.base(),
            roots: roots_with_multiplicity(h.outer().denom(), &special(h.base()))?,
            at_infinity: dp.saturating_sub(dq) as u32,
        })
    }

    /// All points with `|z| <= r`, unsorted.
    pub fn within(&self, r: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for root in &self.roots {
            preimages(self.base, root, r, &mut out);
        }
        if self.at_infinity > 0 && self.base == Base::Tan {
            lattice(Complex64::new(PI / 2.0, 0.0), Complex64::new(PI, 0.0), r, self.at_infinity, &mut out);
        }
        out
    }

    /// Fails when a point lies within `rel_gap * max(1, r)` of the circle.
    pub fn check_radius(&self, r: f64, rel_gap: f64) -> Result<()> {
        let gap = rel_gap * r.max(1.0);
        for p in self.within(r + gap) {
            let m = p.z.norm();
            if (m - r).abs() <= gap {
                return Err(LabError::RadiusCollision { r, modulus: m, gap });
            }
        }
        Ok(())
    }

    /// Integrated counting function with and without multiplicity:
    /// `sum_{0<|a|<=r} mult log(r/|a|) + n(0) log r`.
    pub fn counting(&self, r: f64) -> (f64, f64) {
        counting_from(&self.within(r), r)
    }

    /// Number of points in `|z| < r`, with multiplicity.
    pub fn count(&self, r: f64) -> u32 {
        self.within(r).iter().filter(|p| p.z.norm() < r).map(|p| p.mult).sum()
    }
}

pub fn counting_from(points: &[Point], r: f64) -> (f64, f64) {
    let (mut n, mut nbar) = (0.0, 0.0);
    let log_r = r.ln();
    for p in points {
        let m = p.z.norm();
        if m > r {
            continue;
        }
        let term = if m < ORIGIN_EPS { log_r } else { (r / m).ln() };
        n += p.mult as f64 * term;
        nbar += term;
    }
    (n, nbar)
}

fn special(base: Base) -> Vec<GaussianRational> {
    match base {
        Base::Identity => vec![],
        Base::Exp => vec![GaussianRational::zero()],
        Base::Sin | Base::Cos => vec![GaussianRational::one(), -GaussianRational::one()],
        Base::Tan => vec![GaussianRational::i(), -GaussianRational::i()],
    }
}

fn preimages(base: Base, root: &WRoot, r: f64, out: &mut Vec<Point>) {
    let w = root.value;
    let mu = root.mult;
    let two_pi = Complex64::new(2.0 * PI, 0.0);
    match base {
        Base::Identity => {
            if w.norm() <= r {
                out.push(Point { z: w, mult: mu });
            }
        }
        Base::Exp => {
            if root.exact.is_none() {
                lattice(w.ln(), Complex64::new(0.0, 2.0 * PI), r, mu, out);
            }
        }
        Base::Sin => match &root.exact {
            Some(s) => {
                let a = if s.is_one() { PI / 2.0 } else { -PI / 2.0 };
                lattice(Complex64::new(a, 0.0), two_pi, r, 2 * mu, out);
            }
            None => {
                let a = w.asin();
                lattice(a, two_pi, r, mu, out);
                lattice(PI - a, two_pi, r, mu, out);
            }
        },
        Base::Cos => match &root.exact {
            Some(s) => {
                let a = if s.is_one() { 0.0 } else { PI };
                lattice(Complex64::new(a, 0.0), two_pi, r, 2 * mu, out);
            }
            None => {
                let a = w.acos();
                lattice(a, two_pi, r, mu, out);
                lattice(-a, two_pi, r, mu, out);
            }
        },
        Base::Tan => {
            if root.exact.is_none() {
                lattice(w.atan(), Complex64::new(PI, 0.0), r, mu, out);
            }
        }
    }
}

/// Points `z0 + k * step` with `|z| <= r`; `step` is real or imaginary.
fn lattice(z0: Complex64, step: Complex64, r: f64, mult: u32, out: &mut Vec<Point>) {
    let (along, across, len) = if step.im == 0.0 {
        (z0.re, z0.im, step.re)
    } else {
        (z0.im, z0.re, step.im)
    };
    if across.abs() > r {
        return;
    }
    let half = (r * r - across * across).sqrt();
    let lo = ((-half - along) / len).ceil() as i64;
    let hi = ((half - along) / len).floor() as i64;
    for k in lo..=hi {
        let z = z0 + step * k as f64;
        if z.norm() <= r {
            out.push(Point { z, mult });
        }
    }
}
