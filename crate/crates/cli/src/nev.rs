use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use ratdec_core::critical::{check_conditions, verify_lemma1};
use ratdec_core::parser::{parse_constant, parse_ratfun};
use ratdec_core::Variant;
use ratdec_nevanlinna::output::{svg_plot, write_csv, Series};
use ratdec_nevanlinna::{
    characteristic_t, check_identity3, check_lemma2, check_theorem_n, disk_samples, AsymptoticVerdict,
    CountingTable, Identity3Options, MeroExpr, RadiusGrid, TailPolicy, MERO_GRAMMAR,
};
use serde_json::{json, Value};

use crate::out::{envelope, to_json, write};
use crate::{read_expr, CmdResult, Common, Failure, Format, VERSION};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Counting table only.
    #[value(name = "table")]
    Table,
    /// `(n-1) T <= sum Zbar(h - b_j) + Nbar` on the tail of the grid.
    #[value(name = "theoremN")]
    TheoremN,
    /// `T(R(h)) / T(h)` close to `deg R` on the tail of the grid.
    #[value(name = "lemma2")]
    Lemma2,
    /// Pointwise `F(f) = G(g)` on random samples.
    #[value(name = "identity3")]
    Identity3,
}

#[derive(Args, Debug)]
pub struct NevArgs {
    /// Meromorphic expression, e.g. `tan` or `((sin)^2 - 1)/(sin)^2`.
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub check: Check,
    /// Radius grid `start:stop:count:spacing`, spacing `linear` or `log`.
    #[arg(long, default_value = "1:50:25:linear")]
    pub radii: String,
    /// Absolute tolerance of the proximity quadrature.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Comma-separated target values `b` (default `0,1` for theoremN).
    #[arg(long, value_delimiter = ',')]
    pub targets: Vec<String>,
    /// Rational map `R` for lemma2.
    #[arg(long)]
    pub map: Option<String>,
    /// Tail fraction of the grid judged by the verdict.
    #[arg(long, default_value_t = 0.25)]
    pub tail: f64,
    /// Relative tolerance of the verdict (default 0.05 for lemma2, 0.10 for theoremN).
    #[arg(long)]
    pub policy_tol: Option<f64>,
    /// identity3: left map `F`.
    #[arg(long = "lhs", default_value = "(x^2 - 1)/x^2")]
    pub big_f: String,
    /// identity3: right map `G`.
    #[arg(long = "rhs", default_value = "x^2/(x^2 - 1)")]
    pub big_g: String,
    /// identity3: inner function `f`.
    #[arg(long = "f", default_value = "sin")]
    pub f: String,
    /// identity3: inner function `g`.
    #[arg(long = "g", default_value = "cos")]
    pub g: String,
    #[arg(long, default_value_t = 1200)]
    pub samples: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sample_radius: f64,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// identity3: maximal relative deviation.
    #[arg(long, default_value_t = 1e-9)]
    pub identity_tol: f64,
}

const NEV_FORMATS: [Format; 4] = [Format::Json, Format::Csv, Format::Svg, Format::Text];

fn mero(text: &str) -> Result<MeroExpr, Failure> {
    let src = read_expr(text)?;
    MeroExpr::parse(&src.text).map_err(|e| Failure::usage(format!("expression: {e}")))
}

fn targets(list: &[String]) -> Result<Vec<Complex64>, Failure> {
    list.iter()
        .map(|t| {
            parse_constant(t)
                .map(|c| c.to_complex64())
                .map_err(|e| Failure::usage(format!("target '{t}': {e}")))
        })
        .collect()
}

pub fn run(common: &Common, args: &NevArgs) -> CmdResult {
    if !(args.tol > 0.0) {
        return Err(Failure::usage("--tol must be positive"));
    }
    if !(args.tail > 0.0 && args.tail <= 1.0) {
        return Err(Failure::usage("--tail must lie in (0, 1]"));
    }
    let formats = common.formats(&NEV_FORMATS);
    if args.check == Check::Identity3 {
        return identity3(common, args, &formats);
    }
    let grid: RadiusGrid = args.radii.parse().map_err(|e: ratdec_nevanlinna::LabError| Failure::usage(e.to_string()))?;
    let radii = grid.points();
    let expr_text = args.expr.as_deref().ok_or_else(|| Failure::usage("--expr is required"))?;
    let h = mero(expr_text)?;
    let mut tgts = targets(&args.targets)?;

    let mut config = json!({
        "check": format!("{:?}", args.check),
        "expr": h.to_string(),
        "grammar": MERO_GRAMMAR,
        "radii": grid.to_string(),
        "tol": args.tol,
    });

    let (table, verdict, extra): (CountingTable, Option<AsymptoticVerdict>, Option<CountingTable>) = match args.check {
        Check::Table => (characteristic_t(&h, &radii, &tgts, args.tol)?, None, None),
        Check::TheoremN => {
            if tgts.is_empty() {
                tgts = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
            }
            let policy = TailPolicy {
                fraction: args.tail,
                tolerance: args.policy_tol.unwrap_or(TailPolicy::THEOREM_N.tolerance),
            };
            let (v, t) = check_theorem_n(&h, &tgts, &radii, args.tol, policy)?;
            (t, Some(v), None)
        }
        Check::Lemma2 => {
            let map_text = args.map.as_deref().ok_or_else(|| Failure::usage("lemma2 needs --map"))?;
            let map = parse_ratfun(&read_expr(map_text)?).map_err(|e| Failure::usage(format!("--map: {e}")))?;
            config["map"] = json!(map.to_string());
            let policy = TailPolicy {
                fraction: args.tail,
                tolerance: args.policy_tol.unwrap_or(TailPolicy::LEMMA2.tolerance),
            };
            let (v, base_t, comp_t) = check_lemma2(&map, &h, &radii, args.tol, policy)?;
            (base_t, Some(v), Some(comp_t))
        }
        Check::Identity3 => unreachable!("handled above"),
    };
    config["targets"] = json!(tgts.iter().map(|b| [b.re, b.im]).collect::<Vec<_>>());

    let header: Vec<String> = vec![
        format!("ratdec {VERSION}"),
        format!("expr = {}", h),
        format!("grammar = {MERO_GRAMMAR}"),
        format!("radii = {grid}"),
        format!("tol = {:e}", args.tol),
        format!("check = {:?}", args.check),
    ];

    let mut text = String::new();
    let _ = writeln!(text, "h = {h}");
    let _ = writeln!(text, "{:>10} {:>14} {:>14} {:>14}", "r", "m", "N", "T");
    for row in &table.rows {
        let _ = writeln!(text, "{:>10.4} {:>14.8} {:>14.8} {:>14.8}", row.r, row.m, row.n, row.t);
    }
    if let Some(v) = &verdict {
        let _ = writeln!(
            text,
            "{}: {} (worst tail relative residual {:.4e}, tolerance {})",
            v.check,
            if v.pass { "PASS" } else { "FAIL" },
            v.worst_tail,
            v.policy.tolerance
        );
    }

    if common.out.is_some() {
        if formats.contains(&Format::Csv) {
            write(common, "table.csv", &csv_text(&table, &header)?)?;
            if let Some(t) = &extra {
                write(common, "table_composed.csv", &csv_text(t, &header)?)?;
            }
        }
        if formats.contains(&Format::Svg) {
            let banner = format!("ratdec {VERSION}");
            let mut series = vec![Series { name: "T(r, h)", points: pairs(&table.radii(), &table.t()) }];
            if let Some(t) = &extra {
                series.push(Series { name: "T(r, R(h))", points: pairs(&t.radii(), &t.t()) });
            }
            write(common, "characteristic.svg", &svg_plot(&format!("T(r) for {h}"), "r", "T(r)", &series, &banner))?;
            if let Some(v) = &verdict {
                let s = [Series { name: "relative residual", points: pairs(&v.radii, &v.relative) }];
                write(common, "residual.svg", &svg_plot(&v.check, "r", "residual / reference", &s, &banner))?;
            }
        }
        if formats.contains(&Format::Json) {
            let result = json!({ "table": table, "verdict": verdict, "composed_table": extra });
            write(common, "nev.json", &to_json(&envelope("nev", config.clone(), &result)))?;
        }
        if formats.contains(&Format::Text) {
            write(common, "nev.txt", &text)?;
        }
    }
    if common.out.is_none() && formats.contains(&Format::Csv) && !formats.contains(&Format::Text) {
        print!("{}", csv_text(&table, &header)?);
    } else {
        print!("{text}");
    }
    Ok(match verdict {
        Some(v) if !v.pass => 1,
        _ => 0,
    })
}

fn pairs(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    x.iter().copied().zip(y.iter().copied()).collect()
}

fn csv_text(table: &CountingTable, header: &[String]) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_csv(table, header, &mut buf).map_err(|e| Failure::io(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

fn identity3(common: &Common, args: &NevArgs, formats: &[Format]) -> CmdResult {
    let parse = |s: &str, name: &str| {
        parse_ratfun(&read_expr(s)?).map_err(|e| Failure::usage(format!("{name}: {e}")))
    };
    let big_f = parse(&args.big_f, "--lhs")?;
    let big_g = parse(&args.big_g, "--rhs")?;
    let f = mero(&args.f)?;
    let g = mero(&args.g)?;
    let opts = common.options()?;
    let lemma1 = match check_conditions(&big_f, &big_g, Variant::M) {
        Ok(rep) if rep.k > 0 && rep.applicable => Some(verify_lemma1(&big_f, &big_g, &rep, opts.precision)?),
        _ => None,
    };
    let samples = disk_samples(args.samples, args.sample_radius, args.seed);
    let res = check_identity3(
        &big_f,
        &big_g,
        &f,
        &g,
        &samples,
        lemma1.as_ref(),
        Identity3Options { tol: args.identity_tol, ..Default::default() },
    )?;
    let config: Value = json!({
        "check": "Identity3",
        "F": big_f.to_string(),
        "G": big_g.to_string(),
        "f": f.to_string(),
        "g": g.to_string(),
        "samples": args.samples,
        "sample_radius": args.sample_radius,
        "seed": args.seed,
        "tol": args.identity_tol,
        "skip_below": Identity3Options::default().skip_below,
    });
    let mut text = String::new();
    let _ = writeln!(text, "F(f) = G(g) with F = {big_f}, G = {big_g}, f = {f}, g = {g}");
    let _ = writeln!(text, "samples used {}, skipped {}", res.used, res.skipped);
    let _ = writeln!(text, "max relative deviation {:.3e}", res.max_deviation);
    if let Some(m) = res.max_middle_deviation {
        let _ = writeln!(text, "max deviation of factored forms {m:.3e}");
    }
    let _ = writeln!(text, "{}", if res.pass { "PASS" } else { "FAIL" });
    if common.out.is_some() {
        if formats.contains(&Format::Json) {
            write(common, "identity3.json", &to_json(&envelope("nev", config, &res)))?;
        }
        if formats.contains(&Format::Text) {
            write(common, "identity3.txt", &text)?;
        }
    }
    print!("{text}");
    Ok(if res.pass { 0 } else { 1 })
}
