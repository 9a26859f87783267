//! Shared tokenising for the linear-combination text formats.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Dyadic;

/// Split `s` into signed summands at top-level `+`/`-`.
///
/// A sign directly after `*`, `^` or `/` belongs to the factor, not to a new summand.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `)` in `{s}`")));
                }
            }
            _ => {}
        }
        let attaches = matches!(prev, Some('*' | '^' | '/' | '('));
        if depth == 0 && (c == '+' || c == '-') && !attaches {
            if !cur.is_empty() {
                out.push((negative, core::mem::take(&mut cur)));
                negative = c == '-';
            } else if matches!(prev, Some('+' | '-')) && matches!(c, '-') {
                // `a + -b` and `a - -b`
                negative = !negative;
            } else if prev.is_none() {
                negative = c == '-';
            } else {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
        } else {
            cur.push(c);
        }
        prev = Some(c);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{s}`")));
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in `{s}`")));
    }
    out.push((negative, cur));
    Ok(out)
}

/// Split a summand into `*`-separated factors at top level.
pub(crate) fn split_factors(term: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    if out.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("empty factor in `{term}`")));
    }
    Ok(out)
}

/// A numeric factor such as `3`, `-1/3` or `(2/5)`.
pub(crate) fn parse_number(f: &str) -> Option<Dyadic> {
    let f = f
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(f);
    if f.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        f.parse().ok()
    } else {
        None
    }
}

/// Render `coeff * body` as a signed summand; `body` empty means a bare scalar.
pub(crate) fn push_term(out: &mut String, first: bool, coeff: &Dyadic, body: &str) {
    let neg = coeff.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mag = coeff.abs();
    if body.is_empty() {
        out.push_str(&format!("{mag}"));
    } else if mag.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{mag}*{body}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_and_signs() {
        let t = split_terms("3*x1^2 - 1/3*x2 + -2").unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[1].0);
        assert_eq!(t[2], (true, "2".into()));
        let t = split_terms("-x1").unwrap();
        assert_eq!(t, [(true, "x1".into())]);
        assert!(split_terms("x1 +").is_err());
        assert!(split_terms("(x1").is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(split_factors("(1+x1)*Jq1").unwrap(), ["(1+x1)", "Jq1"]);
        assert!(split_factors("3**x").is_err());
        assert_eq!(parse_number("(-2/5)"), Some(Dyadic::ratio(-2, 5)));
        assert_eq!(parse_number("x1"), None);
    }
}
