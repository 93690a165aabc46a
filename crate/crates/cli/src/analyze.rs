use std::fmt::Write as _;

use clap::Args;
use ratdec_core::critical::{check_conditions_with, verify_lemma1, ConditionReport, Lemma1Report};
use serde_json::json;

use crate::out::{emit, envelope, REPORT_FORMATS};
use crate::{parse_pair, CmdResult, Common, Failure, VariantArg};

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// F, inline or `@path`.
    pub f: String,
    /// G, inline or `@path`.
    pub g: String,
    #[arg(long, value_enum, default_value = "M")]
    pub variant: VariantArg,
}

pub fn run(common: &Common, args: &AnalyzeArgs) -> CmdResult {
    let opts = common.options()?;
    let (f, g) = parse_pair(&args.f, &args.g)?;
    let report = check_conditions_with(&f, &g, args.variant.into(), &opts)?;
    let lemma1 = if report.k > 0 {
        Some(verify_lemma1(&f, &g, &report, opts.precision).map_err(|e| Failure::numeric(e.to_string()))?)
    } else {
        None
    };
    let config = json!({
        "F": args.f,
        "G": args.g,
        "variant": report.variant,
        "precision": opts.precision,
        "precision_cap": opts.cap,
    });
    let result = json!({ "condition_report": report, "lemma1_report": lemma1 });
    let formats = common.formats(&REPORT_FORMATS);
    emit(common, "analyze", &envelope("analyze", config, &result), &text(&report, lemma1.as_ref()), &formats)?;
    Ok(0)
}

fn text(r: &ConditionReport, lemma1: Option<&Lemma1Report>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "F = {}", r.f_text);
    let _ = writeln!(s, "G = {}", r.g_text);
    let _ = writeln!(s, "condition {}: p = {}, q = {}", r.variant, r.p, r.q);
    let _ = writeln!(s, "numerator and denominator of G monic: {}", if r.checked_condition1 { "yes" } else { "no" });
    if !r.applicable {
        let _ = writeln!(s, "inapplicable");
    }
    let _ = writeln!(s, "k = {}", r.k);
    for a in &r.admissible_values {
        let _ = writeln!(
            s,
            "  value {} at c = {} (s = {})",
            a.value_ball, a.witness.location, a.witness.multiplicity_s
        );
    }
    if !r.exclusions.is_empty() {
        let _ = writeln!(s, "excluded values:");
        for e in &r.exclusions {
            let _ = writeln!(s, "  {}: {}", e.value_ball, e.reason.as_str());
        }
    }
    let _ = writeln!(s, "trace:");
    for t in &r.trace {
        let _ = writeln!(s, "  {t}");
    }
    if let Some(l) = lemma1 {
        let _ = writeln!(
            s,
            "root factorization: {} roots, pairwise disjoint: {}, product squarefree: {}",
            l.root_count(),
            l.pairwise_disjoint,
            l.combined_squarefree
        );
    }
    s
}
