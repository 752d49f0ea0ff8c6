//! Rendering of [`GradCheckReport`].

use serde::Serialize;
use twostep_core::GradCheckReport;

#[derive(Serialize)]
struct LayerRecord {
    layer: usize,
    max_abs: f64,
    max_rel: f64,
    at: [usize; 2],
    pass: bool,
}

#[derive(Serialize)]
struct ReportRecord {
    tol: f64,
    pass: bool,
    layers: Vec<LayerRecord>,
}

/// Fixed-width table, one row per layer plus a verdict line.
pub fn render_table(report: &GradCheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>5}  {:>12}  {:>12}  {:>10}  {}\n",
        "layer", "max_abs", "max_rel", "at", "status"
    ));
    for l in &report.layers {
        out.push_str(&format!(
            "{:>5}  {:>12.3e}  {:>12.3e}  {:>10}  {}\n",
            l.layer,
            l.max_abs,
            l.max_rel,
            format!("({},{})", l.at.0, l.at.1),
            if l.pass { "ok" } else { "FAIL" }
        ));
    }
    out.push_str(&format!(
        "{} (max_rel {:.3e}, tol {:.1e})\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.max_rel(),
        report.tol
    ));
    out
}

/// One JSON object with `tol`, `pass` and a `layers` array of
/// `{layer, max_abs, max_rel, at, pass}` records.
pub fn to_json(report: &GradCheckReport) -> String {
    let record = ReportRecord {
        tol: report.tol,
        pass: report.pass,
        layers: report
            .layers
            .iter()
            .map(|l| LayerRecord {
                layer: l.layer,
                max_abs: l.max_abs,
                max_rel: l.max_rel,
                at: [l.at.0, l.at.1],
                pass: l.pass,
            })
            .collect(),
    };
    serde_json::to_string(&record).expect("report serializes")
}
