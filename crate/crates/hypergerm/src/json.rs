//! JSON encodings. Keys come out sorted and every mathematical value is a
//! decimal string; only counts and settings are JSON integers.

use hypergerm_core::hindman::{ColorKey, Coloring, HindmanCertificate, SubsetSum};
use hypergerm_core::{BigReal, Config, Error, Result};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Significant digits printed for a value computed at `cfg.precision`.
pub fn digits(cfg: &Config) -> usize {
    cfg.precision.get().saturating_sub(10).max(20) as usize
}

pub fn num(x: &BigReal, cfg: &Config) -> Value {
    Value::String(x.to_decimal_string(digits(cfg)))
}

pub fn text(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub precision: u32,
    pub order: u32,
    /// Truncation order a germ verdict rests on, when there is one.
    pub confidence: Option<u32>,
}

impl Diagnostics {
    pub fn new(cfg: &Config, confidence: Option<u32>) -> Self {
        Diagnostics { precision: cfg.precision.get(), order: cfg.order, confidence }
    }
}

pub fn envelope(command: &str, args: &[String], result: Value, diag: &Diagnostics) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": { "name": command, "args": args },
        "result": result,
        "diagnostics": {
            "precision": diag.precision,
            "order": diag.order,
            "confidence": diag.confidence,
        },
    })
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values built from strings and integers always serialize")
}

pub fn certificate_to_json(cert: &HindmanCertificate) -> Value {
    let sums: Vec<Value> = cert
        .sums
        .iter()
        .map(|s| json!({ "subset": ints(&s.subset), "sum": text(s.sum), "color": text(&s.color) }))
        .collect();
    json!({ "color": text(&cert.color), "set": ints(&cert.set), "sums": sums })
}

fn ints(xs: &[u64]) -> Vec<Value> {
    xs.iter().map(text).collect()
}

/// Reads a certificate written by [`certificate_to_json`]. Colors are stored
/// as text, so each is matched against the coloring's own key for that
/// number; a color that matches nothing stays as an opaque key and will fail
/// verification.
pub fn certificate_from_json(v: &Value, coloring: &Coloring, cfg: &Config) -> Result<HindmanCertificate> {
    let obj = v.as_object().ok_or_else(|| bad("certificate is not an object"))?;
    let set = int_list(field(obj, "set")?)?;
    let color_text = color_text(field(obj, "color")?)?;
    let color = match set.first() {
        Some(&n) => resolve(&color_text, n, coloring, cfg)?,
        None => ColorKey::Decimal(color_text),
    };
    let mut sums = Vec::new();
    if let Some(list) = obj.get("sums") {
        for s in list.as_array().ok_or_else(|| bad("`sums` is not an array"))? {
            let s = s.as_object().ok_or_else(|| bad("sum entry is not an object"))?;
            let subset = int_list(field(s, "subset")?)?;
            let sum = int(field(s, "sum")?)?;
            let color = resolve(&color_text_of(s)?, sum, coloring, cfg)?;
            sums.push(SubsetSum { subset, sum, color });
        }
    }
    Ok(HindmanCertificate { color, set, sums })
}

fn color_text_of(s: &Map<String, Value>) -> Result<String> {
    color_text(field(s, "color")?)
}

fn resolve(claimed: &str, n: u64, coloring: &Coloring, cfg: &Config) -> Result<ColorKey> {
    if n == 0 {
        return Ok(ColorKey::Decimal(claimed.to_string()));
    }
    let actual = coloring.color(n, cfg)?;
    Ok(if actual.to_string() == claimed { actual } else { ColorKey::Decimal(format!("claimed:{}", claimed)) })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(&format!("missing `{}`", key)))
}

fn color_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(bad("color must be a string or an integer")),
    }
}

fn int(v: &Value) -> Result<u64> {
    let parsed = match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.as_u64(),
        _ => None,
    };
    parsed.ok_or_else(|| bad(&format!("`{}` is not a non-negative integer", v)))
}

fn int_list(v: &Value) -> Result<Vec<u64>> {
    v.as_array().ok_or_else(|| bad("expected an array of integers"))?.iter().map(int).collect()
}

fn bad(msg: &str) -> Error {
    Error::InvalidInput(format!("certificate: {}", msg))
}
