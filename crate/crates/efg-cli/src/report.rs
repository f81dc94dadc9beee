//! Rendering of solver results as text reports and as line-delimited JSON
//! with the same field names.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use efg_core::bridge::TeamSolveResult;
use efg_core::solvers::{SolveResult, Value};

/// An ordered report: scalar fields plus optional strategy sections.
#[derive(Default, Debug)]
pub struct Report {
    fields: Vec<(String, String)>,
    /// section name -> infoset -> rendered choice
    strategies: Vec<(String, BTreeMap<String, String>)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn strategy(&mut self, section: &str, entries: BTreeMap<String, String>) -> &mut Self {
        self.strategies.push((section.to_string(), entries));
        self
    }

    /// `key = value` lines, then `section infoset=choice` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k} = {v}");
        }
        for (section, entries) in &self.strategies {
            for (infoset, choice) in entries {
                let _ = writeln!(out, "{section} {infoset}={choice}");
            }
        }
        out
    }

    /// One JSON object per report, on a single line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for (k, v) in &self.fields {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{}:{}", json_string(k), json_string(v));
        }
        for (section, entries) in &self.strategies {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{}:{{", json_string(section));
            let mut inner_first = true;
            for (infoset, choice) in entries {
                if !inner_first {
                    out.push(',');
                }
                inner_first = false;
                let _ = write!(out, "{}:{}", json_string(infoset), json_string(choice));
            }
            out.push('}');
        }
        out.push('}');
        out.push('\n');
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn value_fields(report: &mut Report, label: &str, value: &Value) {
    match value {
        Value::Exact(q) => {
            report.field(label, q);
        }
        Value::Approx { value, tol } => {
            report.field(label, format!("{value:.10}"));
            report.field("tol", tol);
        }
    }
}

/// Renders a solver result under the given value label.
pub fn solve_report(label: &str, result: &SolveResult) -> Report {
    let mut report = Report::new();
    value_fields(&mut report, label, &result.value);
    report.field("method", result.method);
    report.field("candidates", result.stats.candidates);
    if let Some(max) = &result.max_pure {
        if !max.is_empty() {
            report.strategy("max", max.clone());
        }
    }
    if let Some(behavioural) = &result.max_behavioural {
        let rendered: BTreeMap<String, String> = behavioural
            .iter()
            .map(|(infoset, probs)| {
                let inner = probs
                    .iter()
                    .map(|p| format!("{p:.6}"))
                    .collect::<Vec<_>>()
                    .join(",");
                (infoset.clone(), format!("({inner})"))
            })
            .collect();
        if !rendered.is_empty() {
            report.strategy("max", rendered);
        }
    }
    if let Some(min) = &result.min_pure {
        if !min.is_empty() {
            report.strategy("min", min.clone());
        }
    }
    report
}

/// Renders a bridge team solver result.
pub fn team_report(label: &str, result: &TeamSolveResult) -> Report {
    let mut report = Report::new();
    report.field(label, &result.value);
    if let Some(size) = &result.enumeration_size {
        report.field("enumeration_size", size);
    }
    report.field("dp_states", result.stats.nodes_visited);
    report.field("assignments_tried", result.stats.candidates);
    let render = |bids: &BTreeMap<(efg_core::bridge::Seat, String, Vec<efg_core::bridge::Bid>), efg_core::bridge::Bid>| {
        bids.iter()
            .map(|((seat, secret, seq), bid)| {
                let ctx = seq.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(".");
                (format!("{seat}:{secret}:{ctx}"), bid.to_string())
            })
            .collect::<BTreeMap<String, String>>()
    };
    report.strategy("max", render(&result.max_bids));
    report.strategy("min", render(&result.min_bids));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_share_field_names() {
        let mut r = Report::new();
        r.field("value", "3/2");
        r.field("method", "x");
        r.strategy("max", BTreeMap::from([("i".to_string(), "a".to_string())]));
        assert_eq!(r.to_text(), "value = 3/2\nmethod = x\nmax i=a\n");
        assert_eq!(r.to_json(), "{\"value\":\"3/2\",\"method\":\"x\",\"max\":{\"i\":\"a\"}}\n");
    }

    #[test]
    fn json_escapes_specials() {
        assert_eq!(json_string("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
    }
}
