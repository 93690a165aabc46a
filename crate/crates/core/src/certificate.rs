//! Degree inequalities for `F(f) = G(g)` and the certificates emitted when
//! one of them is violated.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::critical::{
    analyze_with_hypothesis, check_conditions_with, shift_to_nonzero_values, AnalysisOptions,
    ConditionReport, Exclusion, Hypothesis, Variant,
};
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::parser::{format_ratfun, EXPR_GRAMMAR};
use crate::ratfun::{gamma, RatFun};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    #[serde(rename = "T1-entire")]
    T1Entire,
    #[serde(rename = "T2-meromorphic")]
    T2Meromorphic,
    #[serde(rename = "T3-meromorphic")]
    T3Meromorphic,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::T1Entire => "T1-entire",
            Theorem::T2Meromorphic => "T2-meromorphic",
            Theorem::T3Meromorphic => "T3-meromorphic",
        }
    }

    fn variant(&self) -> Variant {
        match self {
            Theorem::T3Meromorphic => Variant::MPrime,
            _ => Variant::M,
        }
    }

    fn conclusion(&self) -> &'static str {
        match self {
            Theorem::T1Entire => "no nonconstant entire f, g with F(f) = G(g)",
            _ => "no nonconstant meromorphic f, g with F(f) = G(g)",
        }
    }
}

/// Whether the pair was evaluated as given or with the roles exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AsGiven,
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub bound: usize,
    pub inequality: String,
    pub conclusion: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    pub grammar: String,
    pub exclusions: Vec<ExclusionEntry>,
    /// SHA-256 of the canonical JSON of the condition report.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionEntry {
    pub value: String,
    pub reason: String,
}

impl From<&Exclusion> for ExclusionEntry {
    fn from(e: &Exclusion) -> Self {
        Self {
            value: e.value_ball.to_string(),
            reason: e.reason.as_str().to_string(),
        }
    }
}

impl Certificate {
    /// Compact JSON with a fixed key order; identical inputs give identical
    /// bytes.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certificate,
    BoundSatisfied,
    Inapplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub direction: Direction,
    pub status: Status,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    /// Right-hand side of the inequality `kq <= bound`.
    pub bound: usize,
    pub inequality: String,
    pub note: String,
    /// Shift constant used before the analysis, if any.
    pub shift: Option<String>,
    pub certificate: Option<Certificate>,
    pub report: ConditionReport,
}

impl TheoremReport {
    pub fn has_certificate(&self) -> bool {
        self.certificate.is_some()
    }
}

pub fn report_digest(report: &ConditionReport) -> String {
    let json = serde_json::to_string(report).expect("report serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn finish(
    theorem: Theorem,
    direction: Direction,
    f: &RatFun,
    g: &RatFun,
    report: ConditionReport,
    bound: usize,
    bound_expr: &str,
    shift: Option<String>,
) -> TheoremReport {
    let (p, q, k) = (f.degree(), g.degree(), report.k);
    let kq = k * q;
    let mut out = TheoremReport {
        theorem,
        direction,
        status: Status::BoundSatisfied,
        p,
        q,
        k,
        bound,
        inequality: String::new(),
        note: String::new(),
        shift,
        certificate: None,
        report,
    };
    if !out.report.applicable {
        out.status = Status::Inapplicable;
        out.inequality = format!("{bound_expr} = {bound}");
        out.note = "numerator of G is not monic; the hypothesis does not hold".into();
        return out;
    }
    if k == 0 {
        out.status = Status::Inapplicable;
        out.inequality = format!("k*q = 0 <= {bound_expr} = {bound}");
        out.note = format!(
            "Condition {} admits no critical value (k = 0); the hypothesis is void",
            theorem.variant()
        );
        return out;
    }
    if kq <= bound {
        out.inequality = format!("k*q = {kq} <= {bound_expr} = {bound}");
        out.note = "bound satisfied; no conclusion".into();
        return out;
    }
    out.status = Status::Certificate;
    out.inequality = format!("k*q = {kq} > {bound_expr} = {bound}");
    out.note = theorem.conclusion().into();
    out.certificate = Some(Certificate {
        theorem,
        p,
        q,
        k,
        bound,
        inequality: out.inequality.clone(),
        conclusion: theorem.conclusion().into(),
        f: format_ratfun(f),
        g: format_ratfun(g),
        grammar: EXPR_GRAMMAR.into(),
        exclusions: out.report.exclusions.iter().map(ExclusionEntry::from).collect(),
        provenance: report_digest(&out.report),
    });
    out
}

/// Entire solutions: certificate iff `kq > p` under Condition M.
pub fn evaluate_theorem1(f: &RatFun, g: &RatFun) -> Result<TheoremReport> {
    evaluate_theorem1_with(f, g, &AnalysisOptions::default())
}

pub fn evaluate_theorem1_with(f: &RatFun, g: &RatFun, opts: &AnalysisOptions) -> Result<TheoremReport> {
    let report = check_conditions_with(f, g, Variant::M, opts)?;
    let p = f.degree();
    Ok(finish(Theorem::T1Entire, Direction::AsGiven, f, g, report, p, "p", None))
}

/// Meromorphic solutions: certificate iff `kq > p (1 + k gamma(D))` under
/// Condition M. The analysis runs on `(F + h, G + h)` where `h` moves every
/// critical value away from zero; monicity and the excluded value are taken
/// from the original pair.
pub fn evaluate_theorem2(f: &RatFun, g: &RatFun) -> Result<TheoremReport> {
    evaluate_theorem2_with(f, g, &AnalysisOptions::default())
}

pub fn evaluate_theorem2_with(f: &RatFun, g: &RatFun, opts: &AnalysisOptions) -> Result<TheoremReport> {
    let original = check_conditions_with(f, g, Variant::M, opts)?;
    let (fs, gs, h) = shift_to_nonzero_values(f, g)?;
    let same_degree = g.numer().degree() == g.denom().degree();
    let hyp = Hypothesis {
        condition1: g.is_numer_monic(),
        condition3_value: same_degree.then(|| &GaussianRational::from_integer(1) + &h),
    };
    let shifted = analyze_with_hypothesis(&fs, &gs, Variant::M, &hyp, opts)?;
    if shifted.k != original.k {
        return Err(Error::Internal(format!(
            "shift by {h} changed k from {} to {}",
            original.k, shifted.k
        )));
    }
    let k = shifted.k;
    let bound = f.degree() * (1 + k * gamma(g.denom())?);
    let shift = Some(crate::parser::format_poly(&crate::poly::Poly::constant(h), "x"));
    Ok(finish(
        Theorem::T2Meromorphic,
        Direction::AsGiven,
        f,
        g,
        shifted,
        bound,
        "p*(1 + k*gamma(D))",
        shift,
    ))
}

/// Meromorphic solutions: certificate iff `kq > p (1 + k lambda(G))` under
/// Condition M'.
pub fn evaluate_theorem3(f: &RatFun, g: &RatFun) -> Result<TheoremReport> {
    evaluate_theorem3_with(f, g, &AnalysisOptions::default())
}

pub fn evaluate_theorem3_with(f: &RatFun, g: &RatFun, opts: &AnalysisOptions) -> Result<TheoremReport> {
    let report = check_conditions_with(f, g, Variant::MPrime, opts)?;
    let bound = f.degree() * (1 + report.k * g.lambda());
    let mut out = finish(
        Theorem::T3Meromorphic,
        Direction::AsGiven,
        f,
        g,
        report,
        bound,
        "p*(1 + k*lambda(G))",
        None,
    );
    if out.status == Status::Inapplicable && out.report.applicable {
        let m = check_conditions_with(f, g, Variant::M, opts)?;
        if m.k > 0 {
            out.note.push_str(&format!(
                "; Condition M holds with k = {}, so the T1 and T2 bounds may still apply",
                m.k
            ));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Bundle {
    pub reports: Vec<TheoremReport>,
}

impl Bundle {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.reports.iter().filter_map(|r| r.certificate.as_ref())
    }
}

/// All three evaluations, and with `symmetric` also on `(G, F)`.
pub fn evaluate_all(f: &RatFun, g: &RatFun, symmetric: bool) -> Result<Bundle> {
    evaluate_all_with(f, g, symmetric, &AnalysisOptions::default())
}

pub fn evaluate_all_with(
    f: &RatFun,
    g: &RatFun,
    symmetric: bool,
    opts: &AnalysisOptions,
) -> Result<Bundle> {
    let mut reports = Vec::new();
    let mut directions = vec![(f, g, Direction::AsGiven)];
    if symmetric {
        directions.push((g, f, Direction::Swapped));
    }
    for (a, b, dir) in directions {
        for mut r in [
            evaluate_theorem1_with(a, b, opts)?,
            evaluate_theorem2_with(a, b, opts)?,
            evaluate_theorem3_with(a, b, opts)?,
        ] {
            r.direction = dir;
            reports.push(r);
        }
    }
    Ok(Bundle { reports })
}
