//! JSON and text rendering shared by the subcommands.

use jqforge_core::{Dyadic, OpElement, Polynomial, Valuation};
use serde_json::{json, Map, Value};

use crate::config::Config;

/// A finished report: the JSON document and its text rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Map<String, Value>,
    pub text: String,
}

impl Report {
    pub fn new(command: &str, cfg: &Config) -> Report {
        let mut json = Map::new();
        json.insert("command".into(), Value::from(command));
        json.insert("config".into(), cfg.to_json());
        Report {
            json,
            text: String::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.json.insert(key.into(), v.into());
        self
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone()))
                .expect("report is valid JSON");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// `...d_{k-1} ... d_0`, with a point before the last `-shift` digits.
pub fn digits_string(c: &Dyadic, k: u32) -> String {
    let (shift, mut digits) = c.two_adic_digits(k);
    let frac = (-shift) as usize;
    if frac >= digits.len() {
        // show at least one integral digit
        digits = c.two_adic_digits(frac as u32 + 1).1;
    }
    let mut s = String::from("...");
    for (i, d) in digits.iter().enumerate().rev() {
        s.push(if *d == 1 { '1' } else { '0' });
        if frac > 0 && i == frac && i != 0 {
            s.push('.');
        }
    }
    s
}

pub fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(x) => Value::from(x),
        Valuation::Infinite => Value::from("inf"),
    }
}

/// A coefficient with its valuation and, when requested, its 2-adic digits.
pub fn coeff_json(c: &Dyadic, cfg: &Config) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), Value::from(c.to_string()));
    m.insert("v2".into(), valuation_json(c.valuation()));
    if cfg.digits > 0 {
        m.insert("digits".into(), Value::from(digits_string(c, cfg.digits)));
    }
    Value::Object(m)
}

/// Integers as JSON numbers when they fit, otherwise strings.
pub fn number_json(c: &Dyadic) -> Value {
    match c.to_i64() {
        Some(n) if c.is_integer() => Value::from(n),
        _ => Value::from(c.to_string()),
    }
}

pub fn poly_terms(p: &Polynomial, cfg: &Config) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({"monomial": m.to_string(), "coeff": coeff_json(c, cfg)}))
            .collect(),
    )
}

pub fn op_terms(e: &OpElement, cfg: &Config) -> Value {
    Value::Array(
        e.terms()
            .map(|(w, c)| json!({"word": w.to_string(), "coeff": coeff_json(c, cfg)}))
            .collect(),
    )
}

/// Text lines `  c = ...digits` for every coefficient, when digits are on.
pub fn digit_lines<'a>(coeffs: impl IntoIterator<Item = &'a Dyadic>, cfg: &Config) -> Vec<String> {
    if cfg.digits == 0 {
        return Vec::new();
    }
    let mut seen = std::collections::BTreeSet::new();
    coeffs
        .into_iter()
        .filter(|c| seen.insert((*c).clone()))
        .map(|c| format!("  {c} = {}", digits_string(c, cfg.digits)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_strings() {
        assert_eq!(digits_string(&Dyadic::from(-1), 4), "...1111");
        assert_eq!(digits_string(&Dyadic::from(6), 4), "...0110");
        assert_eq!(digits_string(&Dyadic::ratio(1, 3), 6), "...101011");
        assert_eq!(digits_string(&Dyadic::ratio(3, 4), 4), "...00.11");
        assert_eq!(digits_string(&Dyadic::ratio(1, 8), 3), "...0.001");
    }
}
