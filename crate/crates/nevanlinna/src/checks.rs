//! Finite-radius checks of asymptotic relations between characteristic
//! functions, and a pointwise sampler for `F(f) = G(g)`.
//!
//! A relation holding "outside a set of radii of measure zero" cannot be
//! decided from finitely many radii. The checks below use a tail policy
//! instead: the relative residual must stay within a tolerance on the last
//! fraction of the radius grid.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratdec_core::critical::Lemma1Report;
use ratdec_core::RatFun;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::functionals::{characteristic_t, CountingTable};
use crate::mero::{horner, MeroExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` radii from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl RadiusGrid {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<RadiusGrid> {
        let g = RadiusGrid { start, stop, count, spacing };
        if !(start.is_finite() && stop.is_finite() && start > 0.0) {
            return Err(LabError::Grid(format!("start must be positive (got {start})")));
        }
        if count == 0 || (count > 1 && stop <= start) || (count == 1 && stop != start) {
            return Err(LabError::Grid(format!("{g} is not strictly increasing")));
        }
        Ok(g)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl fmt::Display for RadiusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{}", self.start, self.stop, self.count, s)
    }
}

impl FromStr for RadiusGrid {
    type Err = LabError;

    /// `start:stop:count:spacing` with spacing `linear` or `log`.
    fn from_str(s: &str) -> Result<RadiusGrid> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(LabError::Grid(format!("expected start:stop:count:spacing, got '{s}'")));
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| LabError::Grid(format!("bad number '{t}'")));
        let count = parts[2]
            .parse::<usize>()
            .map_err(|_| LabError::Grid(format!("bad count '{}'", parts[2])))?;
        let spacing = match parts[3] {
            "linear" | "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            other => return Err(LabError::Grid(format!("unknown spacing '{other}'"))),
        };
        RadiusGrid::new(num(parts[0])?, num(parts[1])?, count, spacing)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailPolicy {
    /// Fraction of the grid, counted from the largest radius, that is judged.
    pub fraction: f64,
    pub tolerance: f64,
}

impl TailPolicy {
    pub const LEMMA2: TailPolicy = TailPolicy { fraction: 0.25, tolerance: 0.05 };
    pub const THEOREM_N: TailPolicy = TailPolicy { fraction: 0.25, tolerance: 0.10 };

    fn tail_start(&self, n: usize) -> usize {
        let len = ((n as f64) * self.fraction).ceil() as usize;
        n - len.clamp(1, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `phi <= psi` up to a negligible error.
    TildeLess,
    /// `phi = psi` up to a negligible error.
    TildeEqual,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticVerdict {
    pub check: String,
    pub relation: Relation,
    pub policy: TailPolicy,
    pub radii: Vec<f64>,
    /// `theta(r)`: ratio minus degree for `lemma2`, the counting-function
    /// margin for `theoremN`.
    pub residuals: Vec<f64>,
    /// Quantity each residual is judged against.
    pub reference: Vec<f64>,
    pub relative: Vec<f64>,
    pub tail_start: usize,
    pub worst_tail: f64,
    pub pass: bool,
}

impl AsymptoticVerdict {
    fn judge(
        check: String,
        relation: Relation,
        policy: TailPolicy,
        radii: Vec<f64>,
        residuals: Vec<f64>,
        reference: Vec<f64>,
    ) -> AsymptoticVerdict {
        let relative: Vec<f64> = residuals.iter().zip(&reference).map(|(r, t)| r / t).collect();
        let tail_start = policy.tail_start(relative.len());
        let tail = &relative[tail_start..];
        let (worst_tail, pass) = match relation {
            Relation::TildeEqual => {
                let w = tail.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                (w, w < policy.tolerance)
            }
            Relation::TildeLess => {
                let w = tail.iter().fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
                (w, w <= policy.tolerance)
            }
        };
        AsymptoticVerdict {
            check,
            relation,
            policy,
            radii,
            residuals,
            reference,
            relative,
            tail_start,
            worst_tail,
            pass,
        }
    }
}

const DEGENERATE_T: f64 = 1e-12;

/// `T(r, R(h)) / T(r, h)` against `deg R`.
pub fn check_lemma2(
    r_map: &RatFun,
    base: &MeroExpr,
    radii: &[f64],
    tol: f64,
    policy: TailPolicy,
) -> Result<(AsymptoticVerdict, CountingTable, CountingTable)> {
    let d = r_map.degree();
    if d == 0 {
        return Err(LabError::Degenerate("R must have degree at least 1".into()));
    }
    if base.is_constant() {
        return Err(LabError::Degenerate("base must be nonconstant".into()));
    }
    let composed = base.compose_outer(r_map);
    let tb = characteristic_t(base, radii, &[], tol)?;
    let tc = characteristic_t(&composed, radii, &[], tol)?;
    let mut residuals = Vec::with_capacity(radii.len());
    for (rb, rc) in tb.rows.iter().zip(&tc.rows) {
        if rb.t < DEGENERATE_T {
            return Err(LabError::Degenerate(format!(
                "T(r) = {:.3e} at r = {}; extend the radius range",
                rb.t, rb.r
            )));
        }
        residuals.push(rc.t / rb.t - d as f64);
    }
    let verdict = AsymptoticVerdict::judge(
        format!("lemma2: T(r, R(h))/T(r, h) vs deg R = {d}, R = {r_map}, h = {base}"),
        Relation::TildeEqual,
        policy,
        radii.to_vec(),
        residuals,
        vec![d as f64; radii.len()],
    );
    Ok((verdict, tb, tc))
}

/// `theta(r) = (n - 1) T(r) - sum_j Zbar(r, h - b_j) - Nbar(r)`, judged
/// relative to `T(r)`.
pub fn check_theorem_n(
    h: &MeroExpr,
    targets: &[Complex64],
    radii: &[f64],
    tol: f64,
    policy: TailPolicy,
) -> Result<(AsymptoticVerdict, CountingTable)> {
    if h.is_constant() {
        return Err(LabError::Degenerate("h must be nonconstant".into()));
    }
    for (i, a) in targets.iter().enumerate() {
        if targets[..i].contains(a) {
            return Err(LabError::Degenerate("targets must be pairwise distinct".into()));
        }
    }
    let table = characteristic_t(h, radii, targets, tol)?;
    let n = targets.len() as f64;
    let mut residuals = Vec::with_capacity(radii.len());
    let mut reference = Vec::with_capacity(radii.len());
    for row in &table.rows {
        if row.t < DEGENERATE_T {
            return Err(LabError::Degenerate(format!(
                "T(r) = {:.3e} at r = {}; extend the radius range",
                row.t, row.r
            )));
        }
        residuals.push((n - 1.0) * row.t - row.zbar.iter().sum::<f64>() - row.nbar);
        reference.push(row.t);
    }
    let verdict = AsymptoticVerdict::judge(
        format!("theoremN: (n-1)T <= sum Zbar + Nbar, h = {h}, n = {}", targets.len()),
        Relation::TildeLess,
        policy,
        radii.to_vec(),
        residuals,
        reference,
    );
    Ok((verdict, table))
}

/// Deterministic points, uniform in the disk `|z| <= radius`.
pub fn disk_samples(count: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rho = radius * rng.gen::<f64>().sqrt();
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(rho, t)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Identity3Options {
    pub tol: f64,
    /// Samples where any denominator is smaller than this are skipped.
    pub skip_below: f64,
}

impl Default for Identity3Options {
    fn default() -> Self {
        Identity3Options { tol: 1e-9, skip_below: 1e-6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity3Result {
    pub used: usize,
    pub skipped: usize,
    /// Largest `|F(f) - G(g)| / (1 + |F(f)|)`.
    pub max_deviation: f64,
    /// Largest deviation between each side and its factored form, when
    /// root data was supplied.
    pub max_middle_deviation: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm())
}

/// Compares `F(f(z))` with `G(g(z))` at each sample. With `lemma1`, also
/// compares, for each admissible value `y` with witness `c`,
/// `F(f) - y` with `(f - c)^s R(f) / B(f)` and `G(g) - y` with
/// `lc(C - yD) prod_l (g - b_l) / D(g)`.
pub fn check_identity3(
    big_f: &RatFun,
    big_g: &RatFun,
    f: &MeroExpr,
    g: &MeroExpr,
    samples: &[Complex64],
    lemma1: Option<&Lemma1Report>,
    opts: Identity3Options,
) -> Result<Identity3Result> {
    let coeffs = |p: &ratdec_core::Poly| -> Vec<Complex64> { p.coeffs().iter().map(|c| c.to_complex64()).collect() };
    let (fa, fb) = (coeffs(big_f.numer()), coeffs(big_f.denom()));
    let (gc, gd) = (coeffs(big_g.numer()), coeffs(big_g.denom()));
    let lead = |cs: &[Complex64]| cs.last().copied().unwrap_or_default();

    let mut used = 0;
    let mut skipped = 0;
    let mut max_dev = 0.0f64;
    let mut max_mid: Option<f64> = lemma1.map(|_| 0.0);
    for &z in samples {
        let (fz, gz) = (f.eval(z), g.eval(z));
        let (bf, dg) = (horner(&fb, fz), horner(&gd, gz));
        let small = |v: Complex64| !(v.norm() >= opts.skip_below) || !v.norm().is_finite();
        if small(f.denom_at(z)) || small(g.denom_at(z)) || small(bf) || small(dg) {
            skipped += 1;
            continue;
        }
        let lhs = horner(&fa, fz) / bf;
        let rhs = horner(&gc, gz) / dg;
        if !(lhs.norm().is_finite() && rhs.norm().is_finite()) {
            skipped += 1;
            continue;
        }
        used += 1;
        max_dev = max_dev.max(rel(lhs, rhs));
        if let (Some(rep), Some(mid)) = (lemma1, max_mid.as_mut()) {
            for e in &rep.entries {
                let y = e.value_ball.to_complex64();
                let c = e.witness.to_complex64();
                let rnum: Vec<Complex64> = e.r_numerator.iter().map(|b| b.to_complex64()).collect();
                let factored_f = (fz - c).powu(e.s) * horner(&rnum, fz) / bf;
                let lc = match gc.len().cmp(&gd.len()) {
                    std::cmp::Ordering::Greater => lead(&gc),
                    std::cmp::Ordering::Less => -y * lead(&gd),
                    std::cmp::Ordering::Equal => lead(&gc) - y * lead(&gd),
                };
                let prod = e.roots.iter().fold(lc, |acc, b| acc * (gz - b.to_complex64()));
                let factored_g = prod / dg;
                *mid = mid.max(rel(lhs - y, factored_f)).max(rel(rhs - y, factored_g));
            }
        }
    }
    if used == 0 {
        return Err(LabError::NoSamples);
    }
    let pass = max_dev <= opts.tol && max_mid.map_or(true, |m| m <= opts.tol);
    Ok(Identity3Result {
        used,
        skipped,
        max_deviation: max_dev,
        max_middle_deviation: max_mid,
        tol: opts.tol,
        pass,
    })
}
