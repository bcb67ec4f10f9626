//! Exact serialisations. Every number is written as a numerator and a denominator
//! in decimal, never as a float.

use std::fmt::Write as _;

use lrc_core::elliptic::Label;
use lrc_core::mirror::BModElement;
use lrc_core::quasimod::{EPoly, QModElement};
use lrc_core::rat::{num_den_strings, parse_rat};
use lrc_core::{Rat, RatSeries, Var, EXACT};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = AppError;
    fn from_str(s: &str) -> AppResult<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(AppError::Usage(format!("unknown format {other:?} (json, csv or text)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl RatJson {
    pub fn new(x: &Rat) -> Self {
        let (num, den) = num_den_strings(x);
        RatJson { num, den }
    }

    pub fn to_rat(&self) -> AppResult<Rat> {
        Ok(parse_rat(&format!("{}/{}", self.num, self.den))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub exp: i64,
    pub num: String,
    pub den: String,
}

/// A truncated series. `order` is the last exponent known exactly; it is absent for exact data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log: Option<RatJson>,
    pub coeffs: Vec<CoeffJson>,
}

impl SeriesJson {
    pub fn new(s: &RatSeries) -> Self {
        let coeffs = s
            .terms()
            .map(|(e, c)| {
                let (num, den) = num_den_strings(c);
                CoeffJson { exp: e, num, den }
            })
            .collect();
        let log = (!s.log_coeff().is_zero()).then(|| RatJson::new(s.log_coeff()));
        SeriesJson { var: s.var().symbol().to_string(), order: (!s.is_exact()).then(|| s.order()), log, coeffs }
    }

    pub fn to_series(&self) -> AppResult<RatSeries> {
        let var = Var::from_symbol(&self.var).ok_or_else(|| AppError::format("series", format!("unknown variable {:?}", self.var)))?;
        let order = self.order.unwrap_or(EXACT);
        let mut acc = RatSeries::zero(var, order);
        for c in &self.coeffs {
            if c.exp > order {
                return Err(AppError::format("series", format!("exponent {} beyond order {order}", c.exp)));
            }
            let v = RatJson { num: c.num.clone(), den: c.den.clone() }.to_rat()?;
            acc = acc.checked_add(&RatSeries::monomial(var, v, c.exp, order))?;
        }
        Ok(match &self.log {
            Some(l) => acc.with_log(l.to_rat()?),
            None => acc,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BModTermJson {
    pub s: i32,
    pub x: i32,
    pub num: String,
    pub den: String,
}

/// `I₁₁^{-i11_degree} · sum c S^s X^x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BModJson {
    pub i11_degree: i32,
    pub terms: Vec<BModTermJson>,
}

impl BModJson {
    pub fn new(e: &BModElement) -> Self {
        let terms = e
            .terms()
            .map(|(&(s, x), c)| {
                let (num, den) = num_den_strings(c);
                BModTermJson { s, x, num, den }
            })
            .collect();
        BModJson { i11_degree: e.i11_degree(), terms }
    }

    pub fn to_element(&self) -> AppResult<BModElement> {
        let mut e = BModElement::zero(self.i11_degree);
        for t in &self.terms {
            e.add_term(t.s, t.x, RatJson { num: t.num.clone(), den: t.den.clone() }.to_rat()?);
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exps: Vec<i64>,
    pub num: String,
    pub den: String,
}

/// Polynomial in named generators (`A, B, C` or `E2, E4, E6`), exponents in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub generators: Vec<String>,
    pub terms: Vec<PolyTermJson>,
}

impl PolyJson {
    pub fn from_qmod(m: &QModElement) -> Self {
        let terms = m
            .terms()
            .map(|(e, c)| {
                let (num, den) = num_den_strings(c);
                PolyTermJson { exps: e.iter().map(|&x| x as i64).collect(), num, den }
            })
            .collect();
        PolyJson { generators: ["A", "B", "C"].map(String::from).to_vec(), terms }
    }

    pub fn from_epoly(p: &EPoly) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let (num, den) = num_den_strings(c);
                PolyTermJson { exps: e.iter().map(|&x| x as i64).collect(), num, den }
            })
            .collect();
        PolyJson { generators: ["E2", "E4", "E6"].map(String::from).to_vec(), terms }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serialises")
}

/// CSV with one row per `(exponent, numerator, denominator)`; the log slot, when present, is the row `log`.
pub fn series_csv(s: &RatSeries) -> String {
    let mut out = String::from("exponent,numerator,denominator\n");
    if !s.log_coeff().is_zero() {
        let (n, d) = num_den_strings(s.log_coeff());
        let _ = writeln!(out, "log,{n},{d}");
    }
    for (e, c) in s.terms() {
        let (n, d) = num_den_strings(c);
        let _ = writeln!(out, "{e},{n},{d}");
    }
    out
}

pub fn bmod_csv(e: &BModElement) -> String {
    let mut out = format!("# i11_degree={}\ns_exponent,x_exponent,numerator,denominator\n", e.i11_degree());
    for (&(s, x), c) in e.terms() {
        let (n, d) = num_den_strings(c);
        let _ = writeln!(out, "{s},{x},{n},{d}");
    }
    out
}

pub fn render_series(s: &RatSeries, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => to_json(&SeriesJson::new(s)),
        OutputFormat::Csv => series_csv(s),
        OutputFormat::Text => format!("{s}"),
    }
}

pub fn render_bmod(e: &BModElement, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => to_json(&BModJson::new(e)),
        OutputFormat::Csv => bmod_csv(e),
        OutputFormat::Text => format!("{e}"),
    }
}

pub fn render_epoly(p: &EPoly, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => to_json(&PolyJson::from_epoly(p)),
        OutputFormat::Csv => {
            let mut out = String::from("e2,e4,e6,numerator,denominator\n");
            for (e, c) in p.terms() {
                let (n, d) = num_den_strings(c);
                let _ = writeln!(out, "{},{},{},{n},{d}", e[0], e[1], e[2]);
            }
            out
        }
        OutputFormat::Text => format!("{p}"),
    }
}

pub fn label_text(l: &Label) -> String {
    let parts: Vec<String> = l.a.iter().map(|x| x.to_string()).collect();
    format!("F_{{{},({})}}", l.h, parts.join(","))
}
