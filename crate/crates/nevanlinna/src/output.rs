//! CSV tables and static SVG line plots.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;

use crate::functionals::CountingTable;

fn target_label(b: Complex64) -> String {
    if b.im == 0.0 {
        format!("{}", b.re)
    } else {
        format!("{}{:+}i", b.re, b.im)
    }
}

/// Writes `header` as `# `-prefixed lines, then the table with columns
/// `r, m, N, Nbar, Z[b]..., Zbar[b]..., T`.
pub fn write_csv<W: Write>(table: &CountingTable, header: &[String], mut out: W) -> csv::Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    let mut cols = vec!["r".to_string(), "m".into(), "N".into(), "Nbar".into()];
    cols.extend(table.targets.iter().map(|&b| format!("Z[{}]", target_label(b))));
    cols.extend(table.targets.iter().map(|&b| format!("Zbar[{}]", target_label(b))));
    cols.push("T".into());
    w.write_record(&cols)?;
    for row in &table.rows {
        let mut rec = vec![row.r, row.m, row.n, row.nbar];
        rec.extend(&row.z);
        rec.extend(&row.zbar);
        rec.push(row.t);
        w.write_record(rec.iter().map(|v| format!("{v:.12e}")))?;
    }
    w.flush()?;
    Ok(())
}

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A line plot with labelled axes and a legend. `banner` goes into a
/// leading comment.
pub fn svg_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series<'_>], banner: &str) -> String {
    let all = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(s, "<!-- {} -->", escape(banner));
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(s, "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>", W / 2.0, escape(title));
    // axes
    let _ = writeln!(
        s,
        "<path d=\"M{m} {t} L{m} {b} L{r} {b}\" stroke=\"black\" fill=\"none\"/>",
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            sx(xv),
            H - MARGIN + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>",
            MARGIN - 4.0,
            sy(yv) + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>", W / 2.0, H - 12.0, escape(xlabel));
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{y}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {y})\">{}</text>",
        escape(ylabel),
        y = H / 2.0
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>",
            MARGIN,
            W - MARGIN,
            y = sy(0.0)
        );
    }
    for (k, ser) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut d = String::new();
        for (i, &(x, y)) in ser.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()).enumerate() {
            let _ = write!(d, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, sx(x), sy(y));
        }
        let _ = writeln!(s, "<path d=\"{}\" stroke=\"{color}\" stroke-width=\"1.5\" fill=\"none\"/>", d.trim_end());
        let ly = MARGIN + 16.0 * k as f64;
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{ly:.1}\" fill=\"{color}\">{}</text>",
            W - MARGIN - 150.0,
            escape(ser.name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::TableRow;

    #[test]
    fn csv_columns() {
        let table = CountingTable {
            expr: "tan".into(),
            targets: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            tol: 1e-10,
            rows: vec![TableRow {
                r: 1.0,
                m: 0.5,
                n: 0.0,
                nbar: 0.0,
                z: vec![0.0, 0.1],
                zbar: vec![0.0, 0.1],
                t: 0.5,
            }],
        };
        let mut buf = Vec::new();
        write_csv(&table, &["expr = tan".into()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# expr = tan"));
        assert_eq!(lines.next(), Some("r,m,N,Nbar,Z[0],Z[1],Zbar[0],Zbar[1],T"));
        assert_eq!(lines.next().unwrap().split(',').count(), 9);
    }

    #[test]
    fn svg_is_well_formed() {
        let svg = svg_plot(
            "T(r)",
            "r",
            "T",
            &[Series { name: "T<exp>", points: vec![(1.0, 0.3), (2.0, 0.6)] }],
            "banner",
        );
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("T&lt;exp&gt;"));
    }
}
