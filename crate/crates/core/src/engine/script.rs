//! Line-oriented script files.
//!
//! ```text
//! operator x*D^2 + (c - x)*D - a
//! table reg 0 : [0]_1, [-c+1]_1
//! table irr 0 0 : [a]_1
//! table irr 0 1 : [c-a]_1
//! euler 1 1 1 a
//! collapse 0 1 c-a 1
//! ```
//!
//! Row, class, leg and block positions are 1-based; `permute 0 <row> …`
//! reorders the non-zero blocks of a regular row. `add-at <point> <f>` and
//! `euler-at <alpha> <beta> <nu>` locate their target by value. Predicted
//! tables are not stored: they are recomputed from the header table.

use crate::datum::{parse_table, render_table, BlockOwner};
use crate::error::{Error, Result};
use crate::expr::{parse_operator, parse_scalar, render_operator, render_scalar};
use crate::scalar::ParamRat;
use crate::weyl::WeylOperator;

use super::{predict_step, ReductionScript, ReductionStep, StepKind};

/// A script with the operator it was computed for, when known.
#[derive(Clone, PartialEq, Debug)]
pub struct ScriptFile {
    pub operator: Option<WeylOperator>,
    pub script: ReductionScript,
}

fn compact(q: &ParamRat) -> String {
    render_scalar(q).replace(' ', "")
}

fn step_line(kind: &StepKind) -> String {
    match kind {
        StepKind::Add { row, f, .. } => format!("add {} {}", row + 1, compact(f)),
        StepKind::AddAt { point, f } => format!("add-at {} {}", compact(point), compact(f)),
        StepKind::Euler { class, leg, block, nu, .. } => format!("euler {} {} {} {}", class + 1, leg + 1, block + 1, compact(nu)),
        StepKind::EulerAt { alpha, beta, nu } => format!("euler-at {} {} {}", compact(alpha), compact(beta), compact(nu)),
        StepKind::Permute { owner, order } => {
            let (i, j) = match owner {
                BlockOwner::Row(r) => (0, r + 1),
                BlockOwner::Leg { class, leg } => (class + 1, leg + 1),
            };
            let ord: Vec<String> = order.iter().map(|k| (k + 1).to_string()).collect();
            format!("permute {} {} {}", i, j, ord.join(" "))
        }
        StepKind::TerminalCollapse { alpha, beta, nu, n } => {
            format!("collapse {} {} {} {}", compact(alpha), compact(beta), compact(nu), n)
        }
    }
}

/// Renders a script, preceded by the operator when given.
pub fn render_script(s: &ReductionScript, operator: Option<&WeylOperator>) -> String {
    let mut out = String::new();
    if let Some(p) = operator {
        out.push_str(&format!("operator {}\n", render_operator(p)));
    }
    for line in render_table(&s.initial_table).lines() {
        out.push_str(&format!("table {}\n", line));
    }
    for st in &s.steps {
        out.push_str(&step_line(&st.kind));
        out.push('\n');
    }
    out
}

fn err(line: usize, column: usize, expected: &str) -> Error {
    Error::Parse { line, column, expected: expected.to_string() }
}

fn relocate(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Parse { column: c, expected, .. } => Error::Parse { line, column: column + c - 1, expected },
        other => other,
    }
}

struct Fields<'a> {
    items: Vec<(usize, &'a str)>,
    line: usize,
    end: usize,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str, line: usize) -> Fields<'a> {
        let mut items = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    items.push((s + 1, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            items.push((s + 1, &text[s..]));
        }
        Fields { items, line, end: text.len() + 1 }
    }

    fn get(&self, k: usize, what: &str) -> Result<(usize, &'a str)> {
        self.items.get(k).copied().ok_or_else(|| err(self.line, self.end, what))
    }

    fn index(&self, k: usize, min: usize) -> Result<usize> {
        let (col, s) = self.get(k, "a position")?;
        match s.parse::<usize>() {
            Ok(v) if v >= min => Ok(v),
            _ => Err(err(self.line, col, "a position")),
        }
    }

    fn scalar(&self, k: usize) -> Result<ParamRat> {
        let (col, s) = self.get(k, "a scalar")?;
        parse_scalar(s).map_err(|e| relocate(e, self.line, col))
    }

    fn done(&self, k: usize) -> Result<()> {
        match self.items.get(k) {
            Some((col, _)) => Err(err(self.line, *col, "end of line")),
            None => Ok(()),
        }
    }
}

/// Parses a script and recomputes every predicted table.
pub fn parse_script(src: &str) -> Result<ScriptFile> {
    let mut operator = None;
    let mut table_src = String::new();
    let mut kinds: Vec<(usize, StepKind)> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let text = raw.trim_end();
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            table_src.push('\n');
            continue;
        }
        let f = Fields::new(text, line);
        let (_, head) = f.get(0, "a keyword")?;
        if head == "operator" || head == "table" {
            if !kinds.is_empty() {
                return Err(err(line, 1, "a step"));
            }
            let rest = text.trim_start()[head.len()..].to_string();
            let col = text.len() - text.trim_start().len() + head.len() + 1;
            if head == "operator" {
                operator = Some(parse_operator(&rest).map_err(|e| relocate(e, line, col))?);
                table_src.push('\n');
            } else {
                table_src.push_str(&rest);
                table_src.push('\n');
            }
            continue;
        }
        let kind = match head {
            "add" => {
                f.done(3)?;
                StepKind::Add { row: f.index(1, 1)? - 1, point: ParamRat::zero(), f: f.scalar(2)? }
            }
            "add-at" => {
                f.done(3)?;
                StepKind::AddAt { point: f.scalar(1)?, f: f.scalar(2)? }
            }
            "euler" => {
                f.done(5)?;
                StepKind::Euler {
                    class: f.index(1, 1)? - 1,
                    leg: f.index(2, 1)? - 1,
                    block: f.index(3, 1)? - 1,
                    alpha: ParamRat::zero(),
                    beta: ParamRat::zero(),
                    nu: f.scalar(4)?,
                }
            }
            "euler-at" => {
                f.done(4)?;
                StepKind::EulerAt { alpha: f.scalar(1)?, beta: f.scalar(2)?, nu: f.scalar(3)? }
            }
            "permute" => {
                let i = f.index(1, 0)?;
                let j = f.index(2, 1)? - 1;
                let owner = if i == 0 { BlockOwner::Row(j) } else { BlockOwner::Leg { class: i - 1, leg: j } };
                let order = (3..f.items.len()).map(|k| f.index(k, 1).map(|v| v - 1)).collect::<Result<Vec<_>>>()?;
                StepKind::Permute { owner, order }
            }
            "collapse" => {
                f.done(5)?;
                StepKind::TerminalCollapse { alpha: f.scalar(1)?, beta: f.scalar(2)?, nu: f.scalar(3)?, n: f.index(4, 1)? }
            }
            _ => return Err(err(line, 1, "operator, table, add, add-at, euler, euler-at, permute or collapse")),
        };
        kinds.push((line, kind));
    }
    let initial_table = parse_table(&table_src)?;
    let mut cur = initial_table.clone();
    let mut steps = Vec::new();
    let mut final_form = None;
    for (line, mut kind) in kinds {
        // Fill in the labels that the compact syntax leaves implicit.
        match &mut kind {
            StepKind::Add { row, point, .. } => {
                *point = cur.rows.get(*row).ok_or_else(|| err(line, 5, "an existing row"))?.point.clone();
            }
            StepKind::Euler { class, leg, block, alpha, beta, nu } => {
                let c = cur.classes.get(*class).ok_or_else(|| err(line, 7, "an existing class"))?;
                let l = c.legs.get(*leg).ok_or_else(|| err(line, 7, "an existing leg"))?;
                let b = l.exponents.blocks.get(*block).ok_or_else(|| err(line, 7, "an existing block"))?;
                if &b.value != nu {
                    return Err(Error::Precondition(format!(
                        "line {}: block value is {}, not {}",
                        line,
                        render_scalar(&b.value),
                        render_scalar(nu)
                    )));
                }
                *alpha = c.alpha.clone();
                *beta = l.beta.clone();
            }
            StepKind::TerminalCollapse { alpha, beta, n, .. } => final_form = Some((alpha.clone(), beta.clone(), *n)),
            _ => {}
        }
        let (table, order) = match predict_step(&cur, &kind)? {
            Some((t, o)) => (Some(t), o),
            None => (None, cur.order),
        };
        if let Some(t) = &table {
            cur = t.clone();
        }
        steps.push(ReductionStep { kind, predicted_table: table, predicted_order: order });
    }
    if final_form.is_none() && cur.rows.is_empty() && cur.order == 1 {
        final_form = cur.is_final().map(|f| (f.alpha, f.beta, 1));
    }
    Ok(ScriptFile { operator, script: ReductionScript { initial_table, steps, final_form } })
}
