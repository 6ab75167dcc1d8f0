//! Line-oriented text form of a table:
//! `reg <c> : [mu]_m, ...` for regular rows and
//! `irr <alpha> <beta> : [nu]_n, ...` for legs, scalars written without spaces.

use crate::error::{Error, Result};
use crate::expr::{parse_scalar, render_scalar};
use crate::scalar::ParamRat;

use super::{ExponentBlock, ExponentSet, IrregularClass, IrregularLeg, LocalDatumTable, RegularRow};

fn compact(q: &ParamRat) -> String {
    render_scalar(q).replace(' ', "")
}

fn render_blocks(s: &ExponentSet) -> String {
    s.blocks.iter().map(|b| format!("[{}]_{}", compact(&b.value), b.mult)).collect::<Vec<_>>().join(", ")
}

/// One line per regular row, then one line per leg.
pub fn render_table(t: &LocalDatumTable) -> String {
    let mut out = String::new();
    for r in &t.rows {
        out.push_str(&format!("reg {} : {}\n", compact(&r.point), render_blocks(&r.exponents)));
    }
    for c in &t.classes {
        for l in &c.legs {
            out.push_str(&format!("irr {} {} : {}\n", compact(&c.alpha), compact(&l.beta), render_blocks(&l.exponents)));
        }
    }
    out
}

fn parse_err(line: usize, column: usize, expected: &str) -> Error {
    Error::Parse { line, column, expected: expected.to_string() }
}

fn scalar_at(src: &str, line: usize, column: usize) -> Result<ParamRat> {
    parse_scalar(src).map_err(|e| match e {
        Error::Parse { column: c, expected, .. } => Error::Parse { line, column: column + c - 1, expected },
        other => other,
    })
}

fn parse_blocks(src: &str, line: usize, offset: usize) -> Result<Vec<ExponentBlock>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != '[' {
            return Err(parse_err(line, offset + i, "'['"));
        }
        let start = i + 1;
        let close = bytes[start..].iter().position(|&c| c == ']').ok_or_else(|| parse_err(line, offset + bytes.len(), "']'"))?;
        let value_src: String = bytes[start..start + close].iter().collect();
        let value = scalar_at(&value_src, line, offset + start)?;
        i = start + close + 1;
        if i >= bytes.len() || bytes[i] != '_' {
            return Err(parse_err(line, offset + i, "'_'"));
        }
        i += 1;
        let ds = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mult: usize = bytes[ds..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| parse_err(line, offset + ds, "a multiplicity"))?;
        let is_zero = value.is_zero();
        out.push(ExponentBlock { value, mult, is_zero_block: is_zero });
        skip_ws(&mut i);
        if i >= bytes.len() {
            return Ok(out);
        }
        if bytes[i] != ',' {
            return Err(parse_err(line, offset + i, "',' or end of line"));
        }
        i += 1;
    }
}

/// Parses the text form; blank lines and lines starting with `#` are skipped.
pub fn parse_table(src: &str) -> Result<LocalDatumTable> {
    let mut rows = Vec::new();
    let mut classes: Vec<IrregularClass> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let text = raw.trim_end();
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            continue;
        }
        let colon = text.find(':').ok_or_else(|| parse_err(line, text.len() + 1, "':'"))?;
        let head: Vec<&str> = text[..colon].split_whitespace().collect();
        let offset = text[..colon + 1].chars().count() + 1;
        let blocks = parse_blocks(&text[colon + 1..], line, offset)?;
        match head.as_slice() {
            ["reg", c] => {
                let point = scalar_at(c, line, 5)?;
                rows.push(RegularRow { point, exponents: ExponentSet::new(blocks) });
            }
            ["irr", a, b] => {
                let alpha = scalar_at(a, line, 5)?;
                let beta = scalar_at(b, line, 6 + a.len())?;
                let exponents = ExponentSet::new(
                    blocks.into_iter().map(|b| ExponentBlock { is_zero_block: false, ..b }).collect(),
                );
                let leg = IrregularLeg { beta, exponents };
                match classes.iter_mut().find(|c| c.alpha == alpha) {
                    Some(c) => c.legs.push(leg),
                    None => classes.push(IrregularClass { alpha, legs: vec![leg] }),
                }
            }
            _ => return Err(parse_err(line, 1, "'reg <point>' or 'irr <alpha> <beta>'")),
        }
    }
    let order = classes.iter().map(IrregularClass::mult).sum();
    let t = LocalDatumTable { order, rows, classes };
    t.validate()?;
    Ok(t)
}
