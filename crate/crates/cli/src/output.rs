use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

/// One named comparison in a run report; `lhs`/`rhs` carry the rendered
/// values that were compared.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, lhs: impl ToString, rhs: impl ToString) -> Check {
        Check {
            name: name.to_string(),
            pass,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// The one-object-per-run schema: command, echoed inputs, results, checks.
#[derive(Debug, Serialize)]
pub struct RunOutput {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl RunOutput {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        render_value(&mut out, "inputs", &self.inputs, 0);
        render_value(&mut out, "results", &self.results, 0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {}: {} ({} vs {})",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.lhs,
                c.rhs
            );
        }
        out
    }
}

fn render_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render_value(out, k, v, indent + 1);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let rendered: Vec<String> = items.iter().map(scalar_to_string).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", rendered.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                render_value(out, &format!("{key}[{i}]"), item, indent + 1);
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar_to_string(v));
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Fixed-point decimal approximation of an exact rational, rounded toward
/// zero, for human-readable output next to the exact endpoints.
pub fn decimal_approx(r: &BigRational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10).pow(digits);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits as usize
    )
}

/// Parses a positive width given as a rational (`1/1000`), a decimal
/// (`0.001`) or scientific notation (`1e-9`, `2.5e-4`).
pub fn parse_width(input: &str) -> Option<BigRational> {
    let s = input.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        let r = BigRational::new(n, d);
        return r.is_positive().then_some(r);
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part)
        .parse()
        .ok()?;
    let mut r = BigRational::new(digits, BigInt::from(10).pow(frac_part.len() as u32));
    let ten = BigRational::from(BigInt::from(10));
    match exponent.cmp(&0) {
        std::cmp::Ordering::Greater => {
            for _ in 0..exponent {
                r *= ten.clone();
            }
        }
        std::cmp::Ordering::Less => {
            for _ in 0..-exponent {
                r /= ten.clone();
            }
        }
        std::cmp::Ordering::Equal => {}
    }
    r.is_positive().then_some(r)
}
