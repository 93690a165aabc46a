//! Critical values of `F` and the per-value admissibility decisions for a
//! pair `(F, G)`.
//!
//! Every accept/reject decision is made with exact gcd and resultant
//! computations over the Gaussian rationals. Balls are used to attach
//! locations and reasons to the values that were decided exactly.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::ball::{ComplexBall, ZeroTest, DEFAULT_PRECISION, PRECISION_CAP};
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::parser::format_poly;
use crate::poly::{sylvester_resultant, Poly};
use crate::ratfun::RatFun;
use crate::roots::{isolate_roots, with_precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    M,
    #[serde(rename = "M-prime")]
    MPrime,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::M => "M",
            Variant::MPrime => "M-prime",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "M" | "m" => Ok(Variant::M),
            "M-prime" | "M'" | "m-prime" | "Mprime" => Ok(Variant::MPrime),
            other => Err(format!("unknown variant '{other}' (expected M or M-prime)")),
        }
    }
}

/// A zero `c` of `F'` that is not a pole of `F`.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    pub location: ComplexBall,
    /// Order of vanishing of `F - F(c)` at `c`; always at least 2.
    pub multiplicity_s: u32,
    pub value_ball: ComplexBall,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueRecord {
    pub value_ball: ComplexBall,
    /// Sorted by decreasing `multiplicity_s`, then by center.
    pub witnesses: Vec<CriticalPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalValueData {
    #[serde(serialize_with = "poly_in_y")]
    pub value_poly: Poly,
    pub records: Vec<ValueRecord>,
    pub precision: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExclusionReason {
    #[serde(rename = "condition3-value-equals-1")]
    Condition3ValueEqualsOne,
    #[serde(rename = "condition4-G-hits-value")]
    Condition4GHitsValue,
    #[serde(rename = "condition4-D-vanishes")]
    Condition4DVanishes,
    #[serde(rename = "condition4prime-C-vanishes")]
    Condition4PrimeCVanishes,
    #[serde(rename = "monicity-failure-global")]
    MonicityFailureGlobal,
    #[serde(rename = "value-at-pole")]
    ValueAtPole,
}

impl ExclusionReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Condition3ValueEqualsOne => "condition3-value-equals-1",
            Self::Condition4GHitsValue => "condition4-G-hits-value",
            Self::Condition4DVanishes => "condition4-D-vanishes",
            Self::Condition4PrimeCVanishes => "condition4prime-C-vanishes",
            Self::MonicityFailureGlobal => "monicity-failure-global",
            Self::ValueAtPole => "value-at-pole",
        }
    }
}

/// For [`ExclusionReason::ValueAtPole`] the ball locates the multiple pole
/// rather than a value.
#[derive(Clone, Debug, Serialize)]
pub struct Exclusion {
    pub value_ball: ComplexBall,
    pub reason: ExclusionReason,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleValue {
    pub value_ball: ComplexBall,
    pub witness: CriticalPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub variant: Variant,
    #[serde(rename = "F")]
    pub f_text: String,
    #[serde(rename = "G")]
    pub g_text: String,
    pub p: usize,
    pub q: usize,
    pub checked_condition1: bool,
    pub applicable: bool,
    pub k: usize,
    pub admissible_values: Vec<AdmissibleValue>,
    pub exclusions: Vec<Exclusion>,
    pub trace: Vec<String>,
    #[serde(serialize_with = "poly_in_y")]
    pub value_poly: Poly,
    /// Monic polynomial whose roots are exactly the admissible values.
    #[serde(serialize_with = "poly_in_y")]
    pub admissible_poly: Poly,
    pub precision: u32,
}

fn poly_in_y<S: Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_poly(p, "y"))
}

/// The three resultants in `y` governing the second-curve conditions.
#[derive(Clone, Debug)]
pub struct Condition4Resultants {
    /// Vanishes at `y` iff some zero `d` of `C' - yD'` has `G(d) = y`.
    /// Factors removed at degenerate values of `y` make it a nonzero
    /// multiple of the plain formal resultant elsewhere.
    pub r1: Poly,
    /// Vanishes at `y` iff some zero `d` of `C' - yD'` has `D(d) = 0`.
    pub r2: Poly,
    /// Vanishes at `y` iff some zero `d` of `C' - yD'` has `C(d) = 0`.
    pub r3: Option<Poly>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub precision: u32,
    pub cap: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            precision: DEFAULT_PRECISION,
            cap: PRECISION_CAP,
        }
    }
}

/// Hypotheses that are taken from an original pair when analysing a shifted
/// copy of it.
#[derive(Clone, Debug)]
pub(crate) struct Hypothesis {
    pub condition1: bool,
    /// The forbidden value when `deg C = deg D`.
    pub condition3_value: Option<GaussianRational>,
}

impl Hypothesis {
    fn from_g(g: &RatFun) -> Self {
        let same_degree = g.numer().degree() == g.denom().degree();
        Self {
            condition1: g.is_numer_monic(),
            condition3_value: same_degree.then(GaussianRational::one),
        }
    }
}

fn nonconstant(f: &RatFun, what: &'static str) -> Result<()> {
    if f.is_constant() {
        Err(Error::ConstantFunction(what))
    } else {
        Ok(())
    }
}

fn raw_critical_numerator(f: &RatFun) -> Poly {
    let (a, b) = (f.numer(), f.denom());
    &(&a.derivative() * b) - &(a * &b.derivative())
}

/// `A'B - AB'` with every factor shared with `B` removed. Its roots are the
/// zeros of `F'` that are not poles of `F`.
pub fn critical_numerator(f: &RatFun) -> Result<Poly> {
    nonconstant(f, "critical_numerator")?;
    let mut n = raw_critical_numerator(f);
    loop {
        let g = n.gcd(f.denom())?;
        if g.is_constant() {
            return Ok(n);
        }
        n = n.div_exact(&g)?;
    }
}

/// Squarefree polynomial whose roots are the multiple poles of `F`.
pub fn multiple_poles(f: &RatFun) -> Result<Poly> {
    nonconstant(f, "multiple_poles")?;
    let g = raw_critical_numerator(f).gcd(f.denom())?;
    g.squarefree_part()
}

/// `Res_x(N, A - yB)` with `N` the critical numerator; its roots are the
/// critical values of `F`.
pub fn value_poly(f: &RatFun) -> Result<Poly> {
    let n = critical_numerator(f)?;
    Ok(value_poly_from(f, &n))
}

fn value_poly_from(f: &RatFun, n: &Poly) -> Poly {
    let m = n.degree_or_zero();
    let p = f.degree();
    let points: Vec<_> = (0..=m as i64)
        .map(|t| {
            let y = GaussianRational::from_integer(t);
            let s = f.numer() - &f.denom().scale(&y);
            (y, sylvester_resultant(n, &s, m, p))
        })
        .collect();
    Poly::interpolate(&points).expect("distinct integer nodes")
}

/// Critical values with witnesses, retrying with more precision as needed.
pub fn critical_values(f: &RatFun) -> Result<CriticalValueData> {
    critical_values_with(f, &AnalysisOptions::default())
}

pub fn critical_values_with(f: &RatFun, opts: &AnalysisOptions) -> Result<CriticalValueData> {
    with_precision(opts.precision, opts.cap, |bits| critical_values_at(f, bits))
}

const CACHE_SLOTS: usize = 8;

thread_local! {
    /// Recent results of [`critical_values_at`]; the theorem evaluations ask
    /// for the same function several times.
    static VALUE_CACHE: RefCell<VecDeque<(RatFun, u32, CriticalValueData)>> =
        const { RefCell::new(VecDeque::new()) };
}

/// One attempt at `precision` bits; fails with [`Error::NeedPrecision`] if a
/// witness cannot be matched to a unique value ball.
pub fn critical_values_at(f: &RatFun, precision: u32) -> Result<CriticalValueData> {
    let hit = VALUE_CACHE.with(|c| {
        c.borrow()
            .iter()
            .find(|(g, bits, _)| *bits == precision && g == f)
            .map(|(_, _, d)| d.clone())
    });
    if let Some(d) = hit {
        return Ok(d);
    }
    let data = compute_critical_values(f, precision)?;
    VALUE_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() == CACHE_SLOTS {
            c.pop_front();
        }
        c.push_back((f.clone(), precision, data.clone()));
    });
    Ok(data)
}

fn compute_critical_values(f: &RatFun, precision: u32) -> Result<CriticalValueData> {
    let n = critical_numerator(f)?;
    let vp = value_poly_from(f, &n);
    if n.is_constant() {
        return Ok(CriticalValueData {
            value_poly: vp,
            records: Vec::new(),
            precision,
        });
    }
    let value_balls = isolate_roots(&vp, precision)?;
    let mut points: Vec<(ComplexBall, u32)> = Vec::new();
    for (factor, mult) in n.squarefree_decomposition()? {
        if factor.is_constant() {
            continue;
        }
        for ball in isolate_roots(&factor, precision)? {
            points.push((ball, mult + 1));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].0.overlaps(&points[j].0) {
                return Err(need(precision));
            }
        }
    }

    let mut records: Vec<ValueRecord> = value_balls
        .into_iter()
        .map(|value_ball| ValueRecord {
            value_ball,
            witnesses: Vec::new(),
        })
        .collect();
    for (location, s) in points {
        let fc = f.eval_ball(&location)?;
        let idx = unique_overlap(records.iter().map(|r| &r.value_ball), &fc, precision)?;
        records[idx].witnesses.push(CriticalPoint {
            location,
            multiplicity_s: s,
            value_ball: fc,
        });
    }
    for r in &mut records {
        if r.witnesses.is_empty() {
            return Err(Error::Internal(format!("critical value {} has no witness", r.value_ball)));
        }
        r.witnesses.sort_by(|a, b| {
            b.multiplicity_s
                .cmp(&a.multiplicity_s)
                .then_with(|| a.location.center_cmp(&b.location))
        });
    }
    Ok(CriticalValueData {
        value_poly: vp,
        records,
        precision,
    })
}

fn need(bits: u32) -> Error {
    Error::NeedPrecision {
        bits,
        next: bits.saturating_mul(2),
    }
}

/// Index of the single ball in `balls` that meets `probe`.
fn unique_overlap<'a>(
    balls: impl Iterator<Item = &'a ComplexBall>,
    probe: &ComplexBall,
    precision: u32,
) -> Result<usize> {
    let hits: Vec<usize> = balls
        .enumerate()
        .filter(|(_, b)| b.overlaps(probe))
        .map(|(i, _)| i)
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(need(precision)),
    }
}

fn formal_resultant_in_y(
    samples: usize,
    eval: impl Fn(&GaussianRational) -> GaussianRational,
) -> Poly {
    let points: Vec<_> = (0..samples as i64)
        .map(|t| {
            let y = GaussianRational::from_integer(t);
            let v = eval(&y);
            (y, v)
        })
        .collect();
    Poly::interpolate(&points).expect("distinct integer nodes")
}

/// Resultants `R1 = Res_x(S_y, S_y')`, `R2 = Res_x(D, S_y')` and, for the
/// primed variant, `R3 = Res_x(C, S_y')`, where `S_y = C - yD`.
///
/// `R1` is taken at the formal degrees `(q, q - 1)`. At the values of `y`
/// where both leading coefficients vanish, or where `S_y'` vanishes
/// identically, the formal determinant is zero regardless of the geometry;
/// those factors are removed and restored only when an exact gcd confirms
/// a shared root.
pub fn condition4_resultants(g: &RatFun, which: Variant) -> Result<Condition4Resultants> {
    nonconstant(g, "condition4_resultants")?;
    let (c, d) = (g.numer(), g.denom());
    let (dc, dd) = (c.degree_or_zero(), d.degree_or_zero());
    let q = g.degree();
    let (c1, d1) = (c.derivative(), d.derivative());
    let s = |y: &GaussianRational| c - &d.scale(y);
    let s1 = |y: &GaussianRational| &c1 - &d1.scale(y);

    let mut r1 = formal_resultant_in_y(2 * q, |y| sylvester_resultant(&s(y), &s1(y), q, q - 1));
    let mut special: Vec<GaussianRational> = Vec::new();
    if dd == q {
        // lc(S_y) = lc(C)[dc = q] - y lc(D) vanishes together with lc(S_y').
        let lc_c = if dc == q { c.coeff(q) } else { GaussianRational::zero() };
        special.push(lc_c.checked_div(&d.coeff(q))?);
    }
    if let Some(y0) = proportional_derivatives(&c1, &d1)? {
        if !special.contains(&y0) {
            special.push(y0);
        }
    }
    for y in &special {
        if r1.is_zero() {
            return Err(Error::Internal("R1 vanishes identically".into()));
        }
        let lin = Poly::linear_root(y);
        while r1.eval(y).is_zero() {
            r1 = r1.div_exact(&lin)?;
        }
        if !s(y).gcd(&s1(y))?.is_constant() {
            r1 = &r1 * &lin;
        }
    }

    let r2 = formal_resultant_in_y(dd + 1, |y| sylvester_resultant(d, &s1(y), dd, q - 1));
    let r3 = match which {
        Variant::M => None,
        Variant::MPrime => Some(formal_resultant_in_y(dc + 1, |y| {
            sylvester_resultant(c, &s1(y), dc, q - 1)
        })),
    };
    Ok(Condition4Resultants { r1, r2, r3 })
}

/// The `y0` with `C' = y0 D'`, if any.
fn proportional_derivatives(c1: &Poly, d1: &Poly) -> Result<Option<GaussianRational>> {
    let Some(dd) = d1.degree() else {
        return Ok(c1.is_zero().then(GaussianRational::zero));
    };
    let y0 = c1.coeff(dd).checked_div(&d1.coeff(dd))?;
    Ok((c1 - &d1.scale(&y0)).is_zero().then_some(y0))
}

/// Decides Condition M or M' for the pair with the maximal admissible `k`.
pub fn check_conditions(f: &RatFun, g: &RatFun, variant: Variant) -> Result<ConditionReport> {
    check_conditions_with(f, g, variant, &AnalysisOptions::default())
}

pub fn check_conditions_with(
    f: &RatFun,
    g: &RatFun,
    variant: Variant,
    opts: &AnalysisOptions,
) -> Result<ConditionReport> {
    nonconstant(f, "check_conditions (F)")?;
    nonconstant(g, "check_conditions (G)")?;
    let hyp = Hypothesis::from_g(g);
    with_precision(opts.precision, opts.cap, |bits| analyze_at(f, g, variant, &hyp, bits))
}

pub(crate) fn analyze_with_hypothesis(
    f: &RatFun,
    g: &RatFun,
    variant: Variant,
    hyp: &Hypothesis,
    opts: &AnalysisOptions,
) -> Result<ConditionReport> {
    with_precision(opts.precision, opts.cap, |bits| analyze_at(f, g, variant, hyp, bits))
}

fn analyze_at(
    f: &RatFun,
    g: &RatFun,
    variant: Variant,
    hyp: &Hypothesis,
    precision: u32,
) -> Result<ConditionReport> {
    let mut report = ConditionReport {
        variant,
        f_text: f.to_string(),
        g_text: g.to_string(),
        p: f.degree(),
        q: g.degree(),
        checked_condition1: hyp.condition1,
        applicable: hyp.condition1,
        k: 0,
        admissible_values: Vec::new(),
        exclusions: Vec::new(),
        trace: Vec::new(),
        value_poly: Poly::zero(),
        admissible_poly: Poly::one(),
        precision,
    };

    let poles = multiple_poles(f)?;
    if !poles.is_constant() {
        for ball in isolate_roots(&poles, precision)? {
            report.exclusions.push(Exclusion {
                value_ball: ball,
                reason: ExclusionReason::ValueAtPole,
            });
        }
        report
            .trace
            .push("multiple poles of F are not critical points (infinite value)".into());
    }

    let data = critical_values_at(f, precision)?;
    report.value_poly = data.value_poly.clone();
    if data.records.is_empty() {
        report.trace.push("no critical points".into());
        return Ok(report);
    }
    report.trace.push(format!(
        "{} distinct critical value(s) of F",
        data.records.len()
    ));

    if !hyp.condition1 {
        report
            .trace
            .push("condition 1 fails: numerator of G is not monic".into());
        report.applicable = false;
        for r in &data.records {
            report.exclusions.push(Exclusion {
                value_ball: r.value_ball.clone(),
                reason: ExclusionReason::MonicityFailureGlobal,
            });
        }
        return Ok(report);
    }

    let mut marks: Vec<Option<ExclusionReason>> = vec![None; data.records.len()];
    let mut remaining = data.value_poly.squarefree_part()?;

    if let Some(u) = &hyp.condition3_value {
        if remaining.eval(u).is_zero() {
            let hits: Vec<usize> = (0..data.records.len())
                .filter(|&i| data.records[i].value_ball.contains(u))
                .collect();
            let [idx] = hits.as_slice() else {
                return Err(need(precision));
            };
            marks[*idx] = Some(ExclusionReason::Condition3ValueEqualsOne);
            remaining = remaining.div_exact(&Poly::linear_root(u))?;
            report
                .trace
                .push(format!("condition 3: critical value {} excluded", format_value(u)));
        }
    }

    let res = condition4_resultants(g, variant)?;
    let mut stages = vec![
        (res.r1, ExclusionReason::Condition4GHitsValue),
        (res.r2, ExclusionReason::Condition4DVanishes),
    ];
    if let Some(r3) = res.r3 {
        stages.push((r3, ExclusionReason::Condition4PrimeCVanishes));
    }
    for (r, reason) in stages {
        if remaining.is_constant() {
            break;
        }
        let common = remaining.gcd(&r)?;
        if common.is_constant() {
            continue;
        }
        let balls = isolate_roots(&common, precision)?;
        for ball in &balls {
            let idx = unique_overlap(data.records.iter().map(|r| &r.value_ball), ball, precision)?;
            if marks[idx].is_some() {
                return Err(Error::Internal("critical value excluded twice".into()));
            }
            marks[idx] = Some(reason);
        }
        report
            .trace
            .push(format!("{}: {} value(s) excluded", reason.as_str(), balls.len()));
        remaining = remaining.div_exact(&common)?.monic();
    }

    for (rec, mark) in data.records.iter().zip(&marks) {
        match mark {
            Some(reason) => report.exclusions.push(Exclusion {
                value_ball: rec.value_ball.clone(),
                reason: *reason,
            }),
            None => report.admissible_values.push(AdmissibleValue {
                value_ball: rec.value_ball.clone(),
                witness: rec.witnesses[0].clone(),
            }),
        }
    }
    report.k = report.admissible_values.len();
    if report.k != remaining.degree_or_zero() {
        return Err(Error::Internal(format!(
            "{} admissible balls but admissible polynomial of degree {}",
            report.k,
            remaining.degree_or_zero()
        )));
    }
    report.admissible_poly = remaining;
    report.trace.push(format!("k = {}", report.k));
    Ok(report)
}

fn format_value(v: &GaussianRational) -> String {
    format_poly(&Poly::constant(v.clone()), "y")
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Entry {
    pub value_ball: ComplexBall,
    pub witness: ComplexBall,
    pub s: u32,
    /// Coefficients (constant first) of the numerator of `R_j`; its
    /// denominator is the denominator of `F`.
    pub r_numerator: Vec<ComplexBall>,
    /// `R_j(c_j)`, certified nonzero.
    pub r_at_witness: ComplexBall,
    /// The `q` roots `b_{j,l}` of `C - y_j D`.
    pub roots: Vec<ComplexBall>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Lemma1Report {
    pub entries: Vec<Lemma1Entry>,
    /// `prod_j (C - y_j D)` is squarefree of degree `qk` (exact).
    pub combined_squarefree: bool,
    /// All `qk` root balls are pairwise disjoint.
    pub pairwise_disjoint: bool,
    pub precision: u32,
}

impl Lemma1Report {
    pub fn root_count(&self) -> usize {
        self.entries.iter().map(|e| e.roots.len()).sum()
    }
}

/// Certifies the factorizations `F - y_j = (x - c_j)^{s_j} R_j` with
/// `R_j(c_j) != 0`, and that the `qk` roots of the `C - y_j D` are distinct.
pub fn verify_lemma1(
    f: &RatFun,
    g: &RatFun,
    report: &ConditionReport,
    precision: u32,
) -> Result<Lemma1Report> {
    if report.k == 0 {
        return Ok(Lemma1Report {
            precision,
            ..Default::default()
        });
    }
    if !report.applicable {
        return Err(Error::Inapplicable("condition 1 fails".into()));
    }
    let cap = PRECISION_CAP.max(precision);
    with_precision(precision, cap, |bits| lemma1_at(f, g, report, bits))
}

fn lemma1_at(f: &RatFun, g: &RatFun, report: &ConditionReport, bits: u32) -> Result<Lemma1Report> {
    let (c, d) = (g.numer(), g.denom());
    let q = g.degree();
    let k = report.k;
    let pa = &report.admissible_poly;
    if pa.degree_or_zero() != k {
        return Err(Error::Internal("admissible polynomial does not match k".into()));
    }

    // H(x) = prod_j (C - y_j D) = sum_i P_i C^i D^{k-i} for monic P of degree k.
    let mut h = Poly::zero();
    for (i, pi) in pa.coeffs().iter().enumerate() {
        h = &h + &(&c.pow(i as u32) * &d.pow((k - i) as u32)).scale(pi);
    }
    if h.degree_or_zero() != q * k {
        return Err(Error::Lemma1Failure(format!(
            "product of C - y_j D has degree {} instead of qk = {}",
            h.degree_or_zero(),
            q * k
        )));
    }
    if !h.gcd(&h.derivative())?.is_constant() {
        return Err(Error::Lemma1Failure(
            "two of the points b_{j,l} coincide (C - y_j D not jointly squarefree)".into(),
        ));
    }

    let data = critical_values_at(f, bits)?;
    let values = isolate_roots(pa, bits)?;
    let mut entries: Vec<Lemma1Entry> = Vec::with_capacity(k);
    for v in &values {
        let idx = unique_overlap(data.records.iter().map(|r| &r.value_ball), v, bits)?;
        let w = data.records[idx].witnesses[0].clone();
        entries.push(Lemma1Entry {
            value_ball: v.clone(),
            witness: w.location,
            s: w.multiplicity_s,
            r_numerator: Vec::new(),
            r_at_witness: ComplexBall::exact(GaussianRational::zero(), bits),
            roots: Vec::new(),
        });
    }

    let roots = isolate_roots(&h, bits)?;
    for b in roots {
        let gb = g.eval_ball(&b)?;
        let idx = unique_overlap(values.iter(), &gb, bits)?;
        entries[idx].roots.push(b);
    }
    if entries.iter().any(|e| e.roots.len() != q) {
        return Err(need(bits));
    }

    let a = f.numer();
    let bden = f.denom();
    for e in &mut entries {
        let y = &e.value_ball;
        let top = a.degree_or_zero().max(bden.degree_or_zero());
        let mut coeffs: Vec<ComplexBall> = (0..=top)
            .map(|i| {
                let ai = ComplexBall::exact(a.coeff(i), bits);
                let bi = ComplexBall::exact(bden.coeff(i), bits);
                ai.sub(&bi.mul(y))
            })
            .collect();
        for _ in 0..e.s {
            let (quot, rem) = synthetic_division(&coeffs, &e.witness);
            if rem.zero_test() == ZeroTest::CertainlyNonzero {
                return Err(Error::Internal(format!(
                    "F - F(c) does not vanish to order {} at the witness",
                    e.s
                )));
            }
            coeffs = quot;
        }
        let num_at_c = horner(&coeffs, &e.witness);
        let den_at_c = bden.eval_ball(&e.witness);
        let r = num_at_c.div(&den_at_c)?;
        if r.zero_test() != ZeroTest::CertainlyNonzero {
            return Err(need(bits));
        }
        e.r_numerator = coeffs;
        e.r_at_witness = r;
    }

    let all: Vec<&ComplexBall> = entries.iter().flat_map(|e| e.roots.iter()).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i].overlaps(all[j]) {
                return Err(need(bits));
            }
        }
    }
    Ok(Lemma1Report {
        entries,
        combined_squarefree: true,
        pairwise_disjoint: true,
        precision: bits,
    })
}

/// Divides `sum a_i x^i` by `x - c`; returns quotient and remainder.
fn synthetic_division(a: &[ComplexBall], c: &ComplexBall) -> (Vec<ComplexBall>, ComplexBall) {
    let n = a.len();
    if n <= 1 {
        let rem = a.first().cloned().unwrap_or_else(|| ComplexBall::exact(GaussianRational::zero(), c.precision()));
        return (Vec::new(), rem);
    }
    let mut quot = vec![a[n - 1].clone(); n - 1];
    for i in (1..n - 1).rev() {
        quot[i - 1] = a[i].add(&quot[i].mul(c));
    }
    let rem = a[0].add(&quot[0].mul(c));
    (quot, rem)
}

fn horner(a: &[ComplexBall], z: &ComplexBall) -> ComplexBall {
    let mut acc = ComplexBall::exact(GaussianRational::zero(), z.precision());
    for c in a.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// True iff the reciprocal pair `(1/F, 1/G)` satisfies Condition M' at the
/// reciprocals of every admissible value of `(F, G)`.
///
/// Decided exactly: the reversed admissible polynomial of `(F, G)` must
/// divide the admissible polynomial of the reciprocal pair.
pub fn reciprocal_pair_check(f: &RatFun, g: &RatFun) -> Result<bool> {
    let rep = check_conditions(f, g, Variant::MPrime)?;
    if !rep.applicable {
        return Err(Error::Inapplicable("condition 1 fails".into()));
    }
    if rep.k == 0 {
        return Err(Error::Inapplicable("no admissible critical values".into()));
    }
    let pa = &rep.admissible_poly;
    if pa.coeff(0).is_zero() {
        return Err(Error::Inapplicable("0 is an admissible critical value".into()));
    }
    let rf = f.reciprocal()?;
    let rg = g.reciprocal()?;
    let rep2 = check_conditions(&rf, &rg, Variant::MPrime)?;
    let rev = pa.reversed(rep.k).monic();
    Ok(rep2.k >= rep.k && rep2.admissible_poly.rem(&rev)?.is_zero())
}

/// Smallest integer `h >= 0` such that no critical value of `F` equals `-h`,
/// together with `F + h` and `G + h`.
pub fn shift_to_nonzero_values(f: &RatFun, g: &RatFun) -> Result<(RatFun, RatFun, GaussianRational)> {
    let vp = value_poly(f)?;
    let mut h = 0i64;
    let h = loop {
        let cand = GaussianRational::from_integer(-h);
        if critical_numerator(f)?.is_constant() || !vp.eval(&cand).is_zero() {
            break GaussianRational::from_integer(h);
        }
        h += 1;
    };
    Ok((f.shift(&h), g.shift(&h), h))
}

/// A root of the critical numerator of `F` with nonzero value, matched with
/// the corresponding root of the critical numerator of `1/F`.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityMatch {
    pub location: ComplexBall,
    pub in_f: u32,
    pub in_reciprocal: u32,
}

fn roots_with_multiplicity(p: &Poly, bits: u32) -> Result<Vec<(ComplexBall, u32)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition()? {
        if !factor.is_constant() {
            for b in isolate_roots(&factor, bits)? {
                out.push((b, mult));
            }
        }
    }
    Ok(out)
}

/// Pairs each critical point of `F` with nonzero value with the matching
/// critical point of `1/F`, reporting both multiplicities.
pub fn reciprocal_multiplicities(f: &RatFun, precision: u32) -> Result<Vec<MultiplicityMatch>> {
    with_precision(precision, PRECISION_CAP.max(precision), |bits| {
        let nf = critical_numerator(f)?;
        if nf.is_constant() {
            return Ok(Vec::new());
        }
        let nr = critical_numerator(&f.reciprocal()?)?;
        let zero_valued = nf.squarefree_part()?.gcd(f.numer())?;
        let zero_balls = if zero_valued.is_constant() {
            Vec::new()
        } else {
            isolate_roots(&zero_valued, bits)?
        };
        let theirs = if nr.is_constant() {
            Vec::new()
        } else {
            roots_with_multiplicity(&nr, bits)?
        };
        let mut out = Vec::new();
        for (ball, m) in roots_with_multiplicity(&nf, bits)? {
            if zero_balls.iter().any(|z| z.overlaps(&ball)) {
                if zero_balls.iter().any(|z| z.encloses(&ball) || ball.encloses(z)) {
                    continue;
                }
                return Err(need(bits));
            }
            let idx = unique_overlap(theirs.iter().map(|(b, _)| b), &ball, bits)?;
            out.push(MultiplicityMatch {
                location: ball,
                in_f: m,
                in_reciprocal: theirs[idx].1,
            });
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_str;

    fn rf(s: &str) -> RatFun {
        parse_str(s).unwrap()
    }

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn numerator_examples() {
        assert!(critical_numerator(&rf("(x^2-1)/x^2")).unwrap().is_constant());
        assert_eq!(critical_numerator(&rf("x^2")).unwrap(), Poly::from_ints(&[0, 2]));
        assert_eq!(critical_numerator(&rf("x^3-3x")).unwrap(), Poly::from_ints(&[-3, 0, 3]));
        assert!(critical_numerator(&rf("5")).is_err());
    }

    #[test]
    fn value_examples() {
        let d = critical_values(&rf("x^2")).unwrap();
        // Res_x(2x, x^2 - y) = -4y
        assert_eq!(d.value_poly, Poly::from_ints(&[0, -4]));
        assert_eq!(d.records.len(), 1);
        assert_eq!(d.records[0].witnesses[0].multiplicity_s, 2);
        assert!(d.records[0].witnesses[0].location.contains(&gi(0)));

        assert!(critical_values(&rf("(x^2-1)/x^2")).unwrap().records.is_empty());

        let d = critical_values(&rf("x^3-3x")).unwrap();
        assert_eq!(d.records.len(), 2);
        for (val, loc) in [(-2, 1), (2, -1)] {
            let r = d.records.iter().find(|r| r.value_ball.contains(&gi(val))).unwrap();
            assert_eq!(r.witnesses.len(), 1);
            assert!(r.witnesses[0].location.contains(&gi(loc)));
            assert_eq!(r.witnesses[0].multiplicity_s, 2);
        }
    }

    #[test]
    fn resultants_at_zero() {
        let res = condition4_resultants(&rf("(x^3+1)/(x+2)"), Variant::M).unwrap();
        assert_eq!(res.r1.eval(&gi(0)), gi(27));
        assert_eq!(res.r2.eval(&gi(0)), gi(12));
        assert!(res.r3.is_none());
        let res = condition4_resultants(&rf("x^2/(x^2-1)"), Variant::M).unwrap();
        // Res(2x^2 - 1, 4x) = -16; R1 differs from it by a power of (y - 1).
        let r = Res(&Poly::from_ints(&[-1, 0, 2]), &Poly::from_ints(&[0, 4]));
        assert_eq!(r, gi(-16));
        assert_eq!(res.r1.eval(&gi(-1)), r.checked_div(&gi(4)).unwrap());
    }

    #[allow(non_snake_case)]
    fn Res(a: &Poly, b: &Poly) -> GaussianRational {
        a.resultant(b).unwrap()
    }

    #[test]
    fn check_examples() {
        let r = check_conditions(&rf("(x^2-1)/x^2"), &rf("x^2/(x^2-1)"), Variant::M).unwrap();
        assert_eq!(r.k, 0);
        assert!(r.trace.iter().any(|t| t == "no critical points"));

        let r = check_conditions(&rf("x^2"), &rf("(x^3+1)/(x+2)"), Variant::M).unwrap();
        assert_eq!((r.k, r.p, r.q), (1, 2, 3));
        assert!(r.admissible_values[0].value_ball.contains(&gi(0)));

        let r = check_conditions(&rf("x^2"), &rf("x^3/(x+2)"), Variant::M).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.exclusions[0].reason, ExclusionReason::Condition4GHitsValue);
    }

    #[test]
    fn non_monic_g_is_inapplicable() {
        let r = check_conditions(&rf("x^2"), &rf("2x^3/(x+2)"), Variant::M).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.k, 0);
        assert_eq!(r.exclusions[0].reason, ExclusionReason::MonicityFailureGlobal);
    }

    #[test]
    fn condition3_excludes_one() {
        // F = x^2 + 1 has the single critical value 1; deg C = deg D for G.
        let r = check_conditions(&rf("x^2+1"), &rf("x^2/(x^2-3)"), Variant::M).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.exclusions[0].reason, ExclusionReason::Condition3ValueEqualsOne);
    }

    #[test]
    fn value_at_pole_recorded() {
        let r = check_conditions(&rf("(x^3+1)/x^2"), &rf("x^3/(x+2)"), Variant::M).unwrap();
        assert!(r.exclusions.iter().any(|e| e.reason == ExclusionReason::ValueAtPole));
    }

    #[test]
    fn degenerate_leading_coefficients_are_not_spurious() {
        // deg D > deg C: both leading coefficients of S_y and S_y' vanish at
        // y = 0, yet C = x + 1 is squarefree.
        let res = condition4_resultants(&rf("(x+1)/(x^2+3)"), Variant::M).unwrap();
        assert!(!res.r1.eval(&gi(0)).is_zero());
        // C = x^2 has a double root, so y = 0 is a genuine hit.
        let res = condition4_resultants(&rf("x^2/(x^3+3)"), Variant::M).unwrap();
        assert!(res.r1.eval(&gi(0)).is_zero());
    }

    #[test]
    fn root_factorization_worked_pair() {
        let (f, g) = (rf("x^2"), rf("(x^3+1)/(x+2)"));
        let r = check_conditions(&f, &g, Variant::M).unwrap();
        let l = verify_lemma1(&f, &g, &r, 128).unwrap();
        assert_eq!(l.entries.len(), 1);
        assert_eq!(l.root_count(), 3);
        assert_eq!(l.entries[0].s, 2);
        assert!(l.entries[0].roots.iter().any(|b| b.contains(&gi(-1))));
        // R(x) = 1 for F = x^2 at c = 0.
        assert!(l.entries[0].r_at_witness.contains(&gi(1)));
    }

    #[test]
    fn root_factorization_empty_for_k0() {
        let (f, g) = (rf("(x^2-1)/x^2"), rf("x^2/(x^2-1)"));
        let r = check_conditions(&f, &g, Variant::M).unwrap();
        assert!(verify_lemma1(&f, &g, &r, 128).unwrap().entries.is_empty());
    }

    #[test]
    fn shift_examples() {
        let g = rf("x^3/(x+2)");
        assert_eq!(shift_to_nonzero_values(&rf("x^2+1"), &g).unwrap().2, gi(0));
        assert_eq!(shift_to_nonzero_values(&rf("x^2"), &g).unwrap().2, gi(1));
        // Critical values 0, -1, -2 at x = 0, 1, 2 (plus one more).
        let f = RatFun::from_poly(hermite_values());
        let vp = value_poly(&f).unwrap();
        for t in 0..3 {
            assert!(vp.eval(&gi(-t)).is_zero());
        }
        assert!(!vp.eval(&gi(-3)).is_zero());
        assert_eq!(shift_to_nonzero_values(&f, &g).unwrap().2, gi(3));
    }

    /// `w v - x` with `w = x(x-1)(x-2)` and `v(t) = 1/w'(t)` at the nodes, so
    /// that `F(t) = -t` and `F'(t) = 0` for `t = 0, 1, 2`.
    fn hermite_values() -> Poly {
        let w = &(&Poly::x() * &Poly::linear_root(&gi(1))) * &Poly::linear_root(&gi(2));
        let wd = w.derivative();
        let pts: Vec<_> = (0..3)
            .map(|t| (gi(t), wd.eval(&gi(t)).inv().unwrap()))
            .collect();
        let v = Poly::interpolate(&pts).unwrap();
        &(&w * &v) - &Poly::x()
    }

    #[test]
    fn reciprocal_pair() {
        assert!(reciprocal_pair_check(&rf("x^2+1"), &rf("(x^3+1)/(x+2)")).unwrap());
        assert!(matches!(
            reciprocal_pair_check(&rf("x^2"), &rf("(x^3+1)/(x+2)")),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn multiplicities_survive_reciprocal() {
        let m = reciprocal_multiplicities(&rf("(x^3+2)/(x-1)"), 128).unwrap();
        assert!(!m.is_empty());
        assert!(m.iter().all(|e| e.in_f == e.in_reciprocal));
    }
}
