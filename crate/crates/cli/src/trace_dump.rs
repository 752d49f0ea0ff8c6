//! Text dump of one forward and backward pass.
//!
//! The forward block lists `X^0, Y^1, X^1, …, Y^L, X^L`; the backward block
//! walks back down with `δ_up^h, δ_down^h, δ_W^h` for `h = L…1` and ends at
//! `δ_up^0`. One quantity per line, `name = value`, where vectors print as
//! `[a, b]` and matrices as `[[a, b], [c, d]]`. Numbers use the shortest
//! representation that parses back to the same `f64`.

use std::fmt::Write;

use twostep_core::{ColumnVector, DeltaSet, ForwardTrace, GradientSet, Matrix};

pub fn render(trace: &ForwardTrace, deltas: &DeltaSet, grads: &GradientSet) -> String {
    let depth = trace.depth();
    let mut out = String::from("forward\n");
    line(&mut out, "X^0", &vector(trace.x(0)));
    for h in 1..=depth {
        line(&mut out, &format!("Y^{h}"), &vector(trace.y(h)));
        line(&mut out, &format!("X^{h}"), &vector(trace.x(h)));
    }
    out.push_str("backward\n");
    for h in (1..=depth).rev() {
        line(&mut out, &format!("delta_up^{h}"), &vector(deltas.up(h)));
        line(
            &mut out,
            &format!("delta_down^{h}"),
            &vector(deltas.down(h)),
        );
        line(&mut out, &format!("delta_W^{h}"), &matrix(grads.layer(h)));
    }
    line(&mut out, "delta_up^0", &vector(deltas.up(0)));
    out
}

fn line(out: &mut String, name: &str, value: &str) {
    writeln!(out, "  {name} = {value}").expect("writing to a String");
}

fn list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(f64::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn vector(v: &ColumnVector) -> String {
    list(v.as_slice())
}

fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.iter_rows().map(list).collect();
    format!("[{}]", rows.join(", "))
}
