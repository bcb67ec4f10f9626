//! Reports: named exact values plus pass/fail checks, rendered deterministically.

use std::fmt::Write as _;

use lrc_core::mirror::BModElement;
use lrc_core::quasimod::{EPoly, QModElement};
use lrc_core::{Rat, RatSeries};
use serde_json::{json, Value as Json};

use crate::format::{bmod_csv, render_epoly, series_csv, BModJson, OutputFormat, PolyJson, RatJson, SeriesJson};

#[derive(Clone, Debug)]
pub enum Value {
    Series(RatSeries),
    BMod(BModElement),
    EPoly(EPoly),
    QMod(QModElement),
    Rats(Vec<Rat>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub items: Vec<(String, Value)>,
    pub checks: Vec<Check>,
}

fn rats_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), items: Vec::new(), checks: Vec::new() }
    }

    pub fn item(&mut self, name: impl Into<String>, v: Value) -> &mut Self {
        self.items.push((name.into(), v));
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    /// Records an exact comparison of coefficient lists.
    pub fn check_rats(&mut self, name: impl Into<String>, got: &[Rat], want: &[Rat]) -> bool {
        let passed = got == want;
        let detail = if passed { rats_text(got) } else { format!("got {} expected {}", rats_text(got), rats_text(want)) };
        self.check(name, passed, detail)
    }

    pub fn check_eq<T: PartialEq + std::fmt::Display>(&mut self, name: impl Into<String>, got: &T, want: &T) -> bool {
        let passed = got == want;
        let detail = if passed { format!("{got}") } else { format!("got {got} expected {want}") };
        self.check(name, passed, detail)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn render(&self, fmt: OutputFormat) -> String {
        match fmt {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Json => serde_json::to_string_pretty(&self.to_json()).expect("plain data serialises"),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.title);
        for (name, v) in &self.items {
            let body = match v {
                Value::Series(s) => s.to_string(),
                Value::BMod(e) => e.to_string(),
                Value::EPoly(p) => p.to_string(),
                Value::QMod(m) => m.to_string(),
                Value::Rats(r) => rats_text(r),
                Value::Text(t) => t.clone(),
            };
            let _ = writeln!(out, "{name}: {body}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let items: Vec<Json> = self
            .items
            .iter()
            .map(|(name, v)| {
                let (kind, body) = match v {
                    Value::Series(s) => ("series", serde_json::to_value(SeriesJson::new(s)).expect("serialises")),
                    Value::BMod(e) => ("bmod", serde_json::to_value(BModJson::new(e)).expect("serialises")),
                    Value::EPoly(p) => ("epoly", serde_json::to_value(PolyJson::from_epoly(p)).expect("serialises")),
                    Value::QMod(m) => ("qmod", serde_json::to_value(PolyJson::from_qmod(m)).expect("serialises")),
                    Value::Rats(r) => ("rationals", serde_json::to_value(r.iter().map(RatJson::new).collect::<Vec<_>>()).expect("serialises")),
                    Value::Text(t) => ("text", Json::String(t.clone())),
                };
                json!({ "name": name, "kind": kind, "value": body })
            })
            .collect();
        let checks: Vec<Json> = self.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        json!({ "title": self.title, "passed": self.passed(), "items": items, "checks": checks })
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for (name, v) in &self.items {
            let _ = writeln!(out, "# {name}");
            match v {
                Value::Series(s) => out.push_str(&series_csv(s)),
                Value::BMod(e) => out.push_str(&bmod_csv(e)),
                Value::EPoly(p) => out.push_str(&render_epoly(p, OutputFormat::Csv)),
                Value::QMod(m) => {
                    out.push_str("a,b,c,numerator,denominator\n");
                    for (e, c) in m.terms() {
                        let _ = writeln!(out, "{},{},{},{},{}", e[0], e[1], e[2], c.numer(), c.denom());
                    }
                }
                Value::Rats(r) => {
                    out.push_str("index,numerator,denominator\n");
                    for (i, c) in r.iter().enumerate() {
                        let _ = writeln!(out, "{i},{},{}", c.numer(), c.denom());
                    }
                }
                Value::Text(t) => {
                    let _ = writeln!(out, "{t}");
                }
            }
        }
        out.push_str("# checks\nname,passed,detail\n");
        for c in &self.checks {
            let _ = writeln!(out, "{},{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'"));
        }
        out
    }
}
