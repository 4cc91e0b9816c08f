//! Linear combinations of basis labels, e.g. `e5+e4` or `2*e1 - 1/2*e3`.

use biham::ring::{parse_rational, Rational};
use num_traits::{One, Zero};

/// Coordinates of `expr` against `labels`. A trailing `*` on a label
/// (`e5*`) is accepted and ignored.
pub fn parse_combination(expr: &str, labels: &[String]) -> Result<Vec<Rational>, String> {
    let mut out = vec![Rational::zero(); labels.len()];
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            let prev = s[..i].chars().last();
            // A sign right after `*` or `/` belongs to the coefficient.
            if !matches!(prev, Some('*') | Some('/')) {
                terms.push(&s[start..i]);
                start = i;
            }
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let body = body.trim_end_matches('*');
        let (coef, label) = match body.rsplit_once('*') {
            Some((c, l)) => (parse_rational(c).map_err(|e| format!("in `{term}`: {e}"))?, l),
            None => (Rational::one(), body),
        };
        let k = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| format!("unknown basis label `{label}` (known: {})", labels.join(", ")))?;
        out[k] += if neg { -coef } else { coef };
    }
    Ok(out)
}
