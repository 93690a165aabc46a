//! Proximity, counting and characteristic functions on circles `|z| = r`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::inventory::Inventory;
use crate::mero::{roots_with_multiplicity, MeroExpr};
use crate::quadrature::{integrate, MAX_PANELS};

/// Relative distance below which a radius is said to hit a zero or pole.
pub const COLLISION_GAP: f64 = 1e-9;

/// Uniform panels laid down before adaptive refinement.
const INITIAL_PANELS: usize = 16;

/// `log|outer(w)|` as `log|lc| + sum mu log|w - root|` over numerator minus
/// denominator, which stays accurate next to zeros and poles.
#[derive(Clone, Debug)]
struct LogModulus {
    log_lc: f64,
    numer: Vec<(Complex64, f64)>,
    denom: Vec<(Complex64, f64)>,
}

impl LogModulus {
    fn new(h: &MeroExpr) -> Result<LogModulus> {
        let outer = h.outer();
        let lc = |p: &ratdec_core::Poly| p.leading().map_or(0.0, |c| c.to_complex64().norm());
        let roots = |p: &ratdec_core::Poly| -> Result<Vec<(Complex64, f64)>> {
            Ok(roots_with_multiplicity(p, &[])?
                .into_iter()
                .map(|r| (r.value, r.mult as f64))
                .collect())
        };
        Ok(LogModulus {
            log_lc: lc(outer.numer()).ln() - lc(outer.denom()).ln(),
            numer: roots(outer.numer())?,
            denom: roots(outer.denom())?,
        })
    }

    fn eval(&self, h: &MeroExpr, z: Complex64) -> f64 {
        let w = h.base().eval(z);
        if !(w.re.is_finite() && w.im.is_finite()) {
            return h.eval(z).norm().ln();
        }
        let mut acc = self.log_lc;
        for &(a, m) in &self.numer {
            acc += m * (w - a).norm().ln();
        }
        for &(a, m) in &self.denom {
            acc -= m * (w - a).norm().ln();
        }
        acc
    }
}

/// Precomputed data for repeated evaluation of the functionals of one `h`.
#[derive(Clone, Debug)]
pub struct Functionals {
    h: MeroExpr,
    poles: Inventory,
    logmod: LogModulus,
    max_panels: usize,
}

impl Functionals {
    pub fn new(h: &MeroExpr) -> Result<Functionals> {
        Ok(Functionals {
            h: h.clone(),
            poles: Inventory::poles(h)?,
            logmod: LogModulus::new(h)?,
            max_panels: MAX_PANELS,
        })
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Functionals {
        self.max_panels = max_panels;
        self
    }

    pub fn expr(&self) -> &MeroExpr {
        &self.h
    }

    pub fn poles(&self) -> &Inventory {
        &self.poles
    }

    /// `m(r) = (1/2 pi) int_0^{2 pi} log+ |h(r e^{it})| dt` to absolute
    /// accuracy `tol`.
    pub fn proximity(&self, r: f64, tol: f64) -> Result<f64> {
        check_r(r)?;
        if self.h.is_constant() {
            return Ok(self.h.eval(Complex64::new(0.0, 0.0)).norm().ln().max(0.0));
        }
        self.poles.check_radius(r, COLLISION_GAP)?;
        let band = 0.5f64.max(0.05 * r);
        let mut breaks: Vec<f64> = (1..INITIAL_PANELS).map(|k| 2.0 * PI * k as f64 / INITIAL_PANELS as f64).collect();
        for p in self.poles.within(r + band) {
            if (p.z.norm() - r).abs() < band {
                breaks.push(p.z.arg().rem_euclid(2.0 * PI));
            }
        }
        let integrand = |t: f64| {
            let z = Complex64::from_polar(r, t);
            self.logmod.eval(&self.h, z).max(0.0)
        };
        let q = integrate(integrand, 0.0, 2.0 * PI, &breaks, tol * 2.0 * PI, self.max_panels)?;
        Ok(q.value / (2.0 * PI))
    }

    /// `(N(r), Nbar(r))`.
    pub fn counting_poles(&self, r: f64) -> Result<(f64, f64)> {
        check_r(r)?;
        self.poles.check_radius(r, COLLISION_GAP)?;
        Ok(self.poles.counting(r))
    }

    /// `(Z(r, h - b), Zbar(r, h - b))`.
    pub fn counting_zeros(&self, b: Complex64, r: f64) -> Result<(f64, f64)> {
        check_r(r)?;
        let inv = Inventory::zeros(&self.h, b)?;
        inv.check_radius(r, COLLISION_GAP)?;
        Ok(inv.counting(r))
    }

    pub fn characteristic(&self, r: f64, tol: f64) -> Result<f64> {
        Ok(self.proximity(r, tol)? + self.counting_poles(r)?.0)
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(LabError::Grid(format!("radius must be positive and finite (got {r})")))
    }
}

pub fn proximity_m(h: &MeroExpr, r: f64, tol: f64) -> Result<f64> {
    Functionals::new(h)?.proximity(r, tol)
}

pub fn counting_n(h: &MeroExpr, r: f64) -> Result<(f64, f64)> {
    Functionals::new(h)?.counting_poles(r)
}

pub fn counting_z(h: &MeroExpr, b: Complex64, r: f64) -> Result<(f64, f64)> {
    Functionals::new(h)?.counting_zeros(b, r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub r: f64,
    pub m: f64,
    pub n: f64,
    pub nbar: f64,
    pub z: Vec<f64>,
    pub zbar: Vec<f64>,
    pub t: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingTable {
    pub expr: String,
    #[serde(serialize_with = "ser_complex_list")]
    pub targets: Vec<Complex64>,
    pub tol: f64,
    pub rows: Vec<TableRow>,
}

fn ser_complex_list<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&[c.re, c.im])?;
    }
    seq.end()
}

impl CountingTable {
    pub fn radii(&self) -> Vec<f64> {
        self.rows.iter().map(|row| row.r).collect()
    }

    pub fn t(&self) -> Vec<f64> {
        self.rows.iter().map(|row| row.t).collect()
    }

    /// `T` never drops by more than `tol` between consecutive radii.
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].t >= w[0].t - tol)
    }
}

/// `m`, `N`, `Nbar`, `T` and `Z`, `Zbar` for each target at every radius.
/// Radii are processed in parallel; rows come back in input order.
pub fn characteristic_t(h: &MeroExpr, radii: &[f64], targets: &[Complex64], tol: f64) -> Result<CountingTable> {
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::Grid("radii must be strictly increasing".into()));
    }
    let lab = Functionals::new(h)?;
    let zeros = targets
        .iter()
        .map(|&b| Inventory::zeros(h, b))
        .collect::<Result<Vec<_>>>()?;
    let rows = radii
        .par_iter()
        .map(|&r| -> Result<TableRow> {
            let m = lab.proximity(r, tol)?;
            let (n, nbar) = lab.counting_poles(r)?;
            let mut z = Vec::with_capacity(zeros.len());
            let mut zbar = Vec::with_capacity(zeros.len());
            for inv in &zeros {
                inv.check_radius(r, COLLISION_GAP)?;
                let (a, b) = inv.counting(r);
                z.push(a);
                zbar.push(b);
            }
            Ok(TableRow { r, m, n, nbar, z, zbar, t: m + n })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountingTable {
        expr: h.to_string(),
        targets: targets.to_vec(),
        tol,
        rows,
    })
}

/// Number of zeros minus number of poles of `h - b` in `|z| < r`, from the
/// winding number of `h(r e^{it}) - b`. Independent of the inventories.
pub fn argument_principle(h: &MeroExpr, b: Complex64, r: f64) -> Result<i64> {
    const START: usize = 512;
    const MAX_STEP: f64 = 0.2;
    const MAX_DEPTH: u32 = 40;

    let g = |t: f64| h.eval(Complex64::from_polar(r, t)) - b;
    fn turn(a: Complex64, b: Complex64) -> f64 {
        (b / a).arg()
    }
    fn walk(g: &impl Fn(f64) -> Complex64, t0: f64, t1: f64, v0: Complex64, v1: Complex64, depth: u32) -> f64 {
        let d = turn(v0, v1);
        let tm = 0.5 * (t0 + t1);
        let vm = g(tm);
        let d0 = turn(v0, vm);
        let d1 = turn(vm, v1);
        if depth == 0 || (d.abs() < MAX_STEP && (d0 + d1 - d).abs() < 1e-12) {
            return d0 + d1;
        }
        walk(g, t0, tm, v0, vm, depth - 1) + walk(g, tm, t1, vm, v1, depth - 1)
    }

    let step = 2.0 * PI / START as f64;
    let mut total = 0.0;
    let mut prev = g(0.0);
    for k in 0..START {
        let t1 = step * (k + 1) as f64;
        let next = if k + 1 == START { g(0.0) } else { g(t1) };
        if !(prev.norm().is_finite() && prev.norm() > 0.0) {
            return Err(LabError::Winding(f64::NAN));
        }
        total += walk(&g, step * k as f64, t1, prev, next, MAX_DEPTH);
        prev = next;
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.05 {
        return Err(LabError::Winding(winding));
    }
    Ok(rounded as i64)
}
