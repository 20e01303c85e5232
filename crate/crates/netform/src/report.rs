//! The `{meta, config, results}` report envelope and JSON encodings of
//! core values.
//!
//! Rationals are strings (`"186/157"`), extended costs are
//! `{"q": k, "finite": "p/q"}` with `k` the number of unbounded terms,
//! ratios are a rational string, `"inf"` or `"undefined"`.

use netform_core::ext::format_rational;
use netform_core::motifs::{MotifKind, MotifReport};
use netform_core::{ExtCost, ExtRatio, Rational};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub config: Value,
    pub results: Value,
}

impl Report {
    pub fn new(command: &str, config: Value, results: Value) -> Self {
        Report {
            meta: Meta {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
            },
            config,
            results,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn cost(c: &ExtCost) -> Value {
    json!({"q": c.infinite_terms, "finite": format_rational(&c.finite)})
}

pub fn ratio(r: &ExtRatio) -> Value {
    Value::String(r.to_string().replace(' ', ""))
}

pub fn motif_kind(k: MotifKind) -> Value {
    match k {
        MotifKind::DoubleStar(m) => json!({"double_star": m}),
        MotifKind::EntangledCycle(l) => json!({"entangled_cycle": l}),
    }
}

pub fn motif_report(r: &MotifReport) -> Value {
    json!({
        "kind": motif_kind(r.kind),
        "observed": r.observed,
        "null_mean": rational(&r.null_mean),
        "null_variance": rational(&r.null_variance),
        "null_std": r.null_std,
        "samples": r.samples,
        "p_bound": r.p_bound.as_ref().map(rational),
        "erased_fraction": r.erased_fraction,
        "null_model": "erased configuration model",
    })
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings() {
        assert_eq!(rational(&Rational::new(6, 4)), json!("3/2"));
        assert_eq!(
            cost(&ExtCost::new(2, Rational::from_integer(7))),
            json!({"q": 2, "finite": "7"})
        );
        assert_eq!(ratio(&ExtRatio::Infinite), json!("inf"));
        assert_eq!(
            ratio(&ExtRatio::Finite(Rational::new(186, 157))),
            json!("186/157")
        );
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
