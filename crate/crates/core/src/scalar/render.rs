//! Deterministic text form of scalars, readable back by the expression parser.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::mpoly::{MPoly, Mono};
use super::prat::ParamRat;

pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn mono_names(m: &Mono) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = m.0.iter().map(|(s, e)| (s.name(), *e)).collect();
    v.sort();
    v
}

/// Higher total degree first, then names later in the alphabet first.
fn term_order(a: &Mono, b: &Mono) -> Ordering {
    b.total_degree().cmp(&a.total_degree()).then_with(|| mono_names(b).cmp(&mono_names(a)))
}

fn render_mono(m: &Mono) -> String {
    mono_names(m)
        .into_iter()
        .map(|(n, e)| if e == 1 { n } else { format!("{}^{}", n, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Joins signed terms as `t1 + t2 - t3`.
pub fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Signed terms of a polynomial, each with a nonnegative body.
pub fn mpoly_terms(p: &MPoly) -> Vec<(bool, String)> {
    let mut ts: Vec<(&Mono, &BigRational)> = p.terms().collect();
    ts.sort_by(|a, b| term_order(a.0, b.0));
    ts.into_iter()
        .map(|(m, c)| {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                render_rational(&a)
            } else if a.is_one() {
                render_mono(m)
            } else {
                format!("{}*{}", render_rational(&a), render_mono(m))
            };
            (neg, body)
        })
        .collect()
}

pub fn render_mpoly(p: &MPoly) -> String {
    join_terms(mpoly_terms(p))
}

pub fn render_param_rat(r: &ParamRat) -> String {
    let num = render_mpoly(r.numer());
    if r.denom().is_one() {
        return num;
    }
    let den = render_mpoly(r.denom());
    format!("({})/({})", num, den)
}

/// True when the rendered form needs parentheses as a factor of a product.
pub fn needs_parens(r: &ParamRat) -> bool {
    r.denom().is_one() && r.numer().len() > 1
}
