//! Plain-text rendering of exact linear combinations.

use num_traits::{Signed, Zero};

use crate::rat::{format_rat, Rat};

/// Renders `Σ q·sym` as `p/q*sym` terms joined by ` + ` / ` - `, skipping zeros.
/// An empty symbol marks a constant term. The empty sum renders as `0`.
pub fn render_terms(terms: &[(String, Rat)]) -> String {
    let mut out = String::new();
    for (sym, q) in terms.iter().filter(|(_, q)| !q.is_zero()) {
        let body = if sym.is_empty() {
            format_rat(&q.abs())
        } else {
            format!("{}*{}", format_rat(&q.abs()), sym)
        };
        match (out.is_empty(), q.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
