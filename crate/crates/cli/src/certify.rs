use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use ratdec_core::certificate::{
    evaluate_theorem1_with, evaluate_theorem2_with, evaluate_theorem3_with, Direction, Status, TheoremReport,
};
use ratdec_core::RatFun;
use serde_json::json;

use crate::out::{emit, envelope, write, REPORT_FORMATS};
use crate::{parse_pair, CmdResult, Common, Format};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Entire f, g: the bound `kq <= p`.
    Entire,
    /// Meromorphic f, g: the bounds with `gamma(D)` and `lambda(G)`.
    Meromorphic,
    /// Both.
    All,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// F, inline or `@path`.
    pub f: String,
    /// G, inline or `@path`.
    pub g: String,
    #[arg(long, value_enum, default_value = "all")]
    pub model: Model,
    /// Also evaluate the pair with the roles of F and G exchanged.
    #[arg(long)]
    pub symmetric: bool,
}

pub fn run(common: &Common, args: &CertifyArgs) -> CmdResult {
    let opts = common.options()?;
    let (f, g) = parse_pair(&args.f, &args.g)?;
    let mut dirs: Vec<(&RatFun, &RatFun, Direction)> = vec![(&f, &g, Direction::AsGiven)];
    if args.symmetric {
        dirs.push((&g, &f, Direction::Swapped));
    }
    let mut reports: Vec<TheoremReport> = Vec::new();
    for (a, b, dir) in dirs {
        let mut batch = Vec::new();
        if args.model != Model::Meromorphic {
            batch.push(evaluate_theorem1_with(a, b, &opts)?);
        }
        if args.model != Model::Entire {
            batch.push(evaluate_theorem2_with(a, b, &opts)?);
            batch.push(evaluate_theorem3_with(a, b, &opts)?);
        }
        for mut r in batch {
            r.direction = dir;
            reports.push(r);
        }
    }

    let certified = reports.iter().any(|r| r.has_certificate());
    let formats = common.formats(&REPORT_FORMATS);
    if common.out.is_some() && formats.contains(&Format::Json) {
        for r in &reports {
            if let Some(c) = &r.certificate {
                let dir = match r.direction {
                    Direction::AsGiven => "as-given",
                    Direction::Swapped => "swapped",
                };
                let mut body = c.to_canonical_json();
                body.push('\n');
                write(common, &format!("certificate-{}-{dir}.json", r.theorem.as_str()), &body)?;
            }
        }
    }
    let config = json!({
        "F": args.f,
        "G": args.g,
        "model": format!("{:?}", args.model).to_lowercase(),
        "symmetric": args.symmetric,
        "precision": opts.precision,
        "precision_cap": opts.cap,
    });
    let env = envelope("certify", config, &reports);
    emit(common, "certify", &env, &text(&reports), &formats)?;
    Ok(if certified { 0 } else { 1 })
}

fn text(reports: &[TheoremReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let dir = match r.direction {
            Direction::AsGiven => "",
            Direction::Swapped => " (F and G exchanged)",
        };
        let status = match r.status {
            Status::Certificate => "CERTIFICATE",
            Status::BoundSatisfied => "bound satisfied",
            Status::Inapplicable => "inapplicable",
        };
        let _ = writeln!(s, "{}{}: {} [k = {}; {}]", r.theorem.as_str(), dir, status, r.k, r.inequality);
        if r.certificate.is_none() && !r.note.is_empty() {
            let _ = writeln!(s, "  {}", r.note);
        }
        if let Some(c) = &r.certificate {
            let _ = writeln!(s, "  {}", c.conclusion);
            let _ = writeln!(s, "  provenance {}", c.provenance);
        }
    }
    s
}
