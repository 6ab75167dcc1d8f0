//! Table-level laws of additions, twisted Euler transforms and the
//! Fourier-Laplace transform.

use crate::error::{Error, Result};
use crate::scalar::ParamRat;

use super::{ExponentBlock, ExponentSet, IrregularClass, IrregularLeg, LocalDatumTable, RegularRow};

/// A twisted Euler transform at the block `[ν]` sends that block to
/// `[EULER_TARGET_SHIFT - ν]`.
pub const EULER_TARGET_SHIFT: i64 = 2;

fn shifted(s: &ExponentSet, by: &ParamRat) -> ExponentSet {
    ExponentSet::new(
        s.blocks
            .iter()
            .map(|b| ExponentBlock { value: &b.value + by, mult: b.mult, is_zero_block: b.is_zero_block })
            .collect(),
    )
}

fn reflag(s: &mut ExponentSet) {
    for b in &mut s.blocks {
        b.is_zero_block = b.value.is_zero();
    }
}

/// Addition `(x - c_row)^f`: the row's values move by `f`, every irregular
/// value by `-f`.
///
/// A block reaching the value 0 becomes the zero block and moves to the
/// front; the former zero block takes its place. A row left with only its
/// zero block is no longer singular and is removed.
pub fn t_add(t: &LocalDatumTable, row: usize, f: &ParamRat) -> Result<LocalDatumTable> {
    if row >= t.rows.len() {
        return Err(Error::Precondition(format!("no regular row {}", row)));
    }
    let mut out = t.clone();
    let old = &t.rows[row].exponents.blocks;
    let mut blocks: Vec<ExponentBlock> = old
        .iter()
        .map(|b| {
            let value = &b.value + f;
            ExponentBlock { is_zero_block: value.is_zero(), value, mult: b.mult }
        })
        .collect();
    if let Some(z) = blocks.iter().position(|b| b.is_zero_block) {
        let mut at = z;
        if let Some(oz) = old.iter().position(|b| b.is_zero_block) {
            blocks.swap(z, oz);
            at = oz;
        }
        let new_zero = blocks.remove(at);
        blocks.insert(0, new_zero);
    }
    out.rows[row].exponents = ExponentSet::new(blocks);
    let neg = -f;
    for c in &mut out.classes {
        for l in &mut c.legs {
            l.exponents = shifted(&l.exponents, &neg);
        }
    }
    out.rows.retain(|r| r.exponents.nonzero_total() > 0);
    out.validate()?;
    Ok(out)
}

/// Addition `(x - point)^f` at any point; a point that is not yet a row
/// is treated as the row `[0]_n`.
pub fn t_add_at(t: &LocalDatumTable, point: &ParamRat, f: &ParamRat) -> Result<LocalDatumTable> {
    match t.rows.iter().position(|r| &r.point == point) {
        Some(r) => t_add(t, r, f),
        None => {
            let mut w = t.clone();
            w.rows.push(RegularRow { point: point.clone(), exponents: ExponentSet::new(vec![ExponentBlock::zero(t.order)]) });
            t_add(&w, w.rows.len() - 1, f)
        }
    }
}

/// The twisted Euler transform at block `block` of leg `leg` in class
/// `class`, with parameter `ν - 1`; returns the new table and its order.
pub fn t_euler(t: &LocalDatumTable, class: usize, leg: usize, block: usize) -> Result<(LocalDatumTable, usize)> {
    let c = t.classes.get(class).ok_or_else(|| Error::Precondition(format!("no class {}", class)))?;
    let l = c.legs.get(leg).ok_or_else(|| Error::Precondition(format!("no leg {} in class {}", leg, class)))?;
    if block >= l.exponents.blocks.len() {
        return Err(Error::Precondition(format!("no block {} in leg {}", block, leg)));
    }
    euler_at_index(t, class, leg, block)
}

/// The twisted Euler transform with parameter `ν - 1` at the exponential
/// factor `e^{α/2 x² + βx}`. A class, leg or block that does not occur in
/// the table is treated as present with multiplicity 0.
pub fn t_euler_at(t: &LocalDatumTable, alpha: &ParamRat, beta: &ParamRat, nu: &ParamRat) -> Result<(LocalDatumTable, usize)> {
    let mut w = t.clone();
    let class = match w.classes.iter().position(|c| &c.alpha == alpha) {
        Some(i) => i,
        None => {
            w.classes.push(IrregularClass { alpha: alpha.clone(), legs: Vec::new() });
            w.classes.len() - 1
        }
    };
    let legs = &mut w.classes[class].legs;
    let leg = match legs.iter().position(|l| &l.beta == beta) {
        Some(j) => j,
        None => {
            legs.push(IrregularLeg { beta: beta.clone(), exponents: ExponentSet::default() });
            legs.len() - 1
        }
    };
    let blocks = &mut legs[leg].exponents.blocks;
    let block = match blocks.iter().position(|b| &b.value == nu) {
        Some(k) => k,
        None => {
            blocks.push(ExponentBlock::new(nu.clone(), 0));
            blocks.len() - 1
        }
    };
    euler_at_index(&w, class, leg, block)
}

fn euler_at_index(t: &LocalDatumTable, class: usize, leg: usize, block: usize) -> Result<(LocalDatumTable, usize)> {
    let l = &t.classes[class].legs[leg];
    let b = &l.exponents.blocks[block];
    let n = t.order;
    let n_cap = t.n_cap(class);
    let n_leg = l.mult();
    let new_mult = n_cap as i64 - n_leg as i64;
    let keep = n - b.mult;
    if keep == 0 && new_mult <= 0 {
        return Err(Error::Degenerate);
    }
    if new_mult < 0 {
        return Err(Error::Precondition(format!(
            "leg multiplicity {} exceeds N = {} at the targeted leg",
            n_leg, n_cap
        )));
    }
    let new_order = keep + new_mult as usize;
    let nu = b.value.clone();
    let f = &nu - &ParamRat::one();
    let minus_f = -&f;

    let mut out = t.clone();
    out.order = new_order;
    for (ci, cl) in out.classes.iter_mut().enumerate() {
        for (li, lg) in cl.legs.iter_mut().enumerate() {
            if ci != class {
                lg.exponents = shifted(&lg.exponents, &f);
            } else if li == leg {
                let mut blocks = Vec::new();
                for (k, bk) in lg.exponents.blocks.iter().enumerate() {
                    if k == block {
                        if new_mult > 0 {
                            blocks.push(ExponentBlock::new(&ParamRat::int(EULER_TARGET_SHIFT) - &nu, new_mult as usize));
                        }
                    } else if bk.mult > 0 {
                        blocks.push(ExponentBlock::new(&bk.value + &minus_f, bk.mult));
                    }
                }
                lg.exponents = ExponentSet::new(blocks);
            }
        }
        cl.legs.retain(|lg| !lg.exponents.blocks.is_empty());
    }
    out.classes.retain(|cl| !cl.legs.is_empty());
    for r in &mut out.rows {
        let nonzero = ExponentSet::new(
            r.exponents
                .nonzero_blocks()
                .map(|b| ExponentBlock::new(&b.value + &f, b.mult))
                .collect(),
        );
        let mut e = nonzero.with_zero_block(new_order)?;
        reflag(&mut e);
        r.exponents = e;
    }
    out.rows.retain(|r| r.exponents.nonzero_total() > 0);
    out.validate()?;
    Ok((out, new_order))
}

fn laplace_generic(t: &LocalDatumTable, inverse: bool) -> Result<LocalDatumTable> {
    let z = t.classes.iter().position(|c| c.alpha.is_zero()).ok_or(Error::NoZeroClass)?;
    let new_order = t.n_cap(z);
    if new_order == 0 {
        return Err(Error::CollapsedToFunction);
    }
    let sign = if inverse { -ParamRat::one() } else { ParamRat::one() };
    let mut rows = Vec::new();
    for l in &t.classes[z].legs {
        let mut e = shifted(&l.exponents, &-ParamRat::one()).with_zero_block(new_order)?;
        reflag(&mut e);
        if e.nonzero_total() > 0 {
            rows.push(RegularRow { point: &sign * &l.beta, exponents: e });
        }
    }
    let mut classes = Vec::new();
    let zero_legs: Vec<IrregularLeg> = t
        .rows
        .iter()
        .filter(|r| r.exponents.nonzero_total() > 0)
        .map(|r| IrregularLeg {
            beta: -&(&sign * &r.point),
            exponents: ExponentSet::new(
                r.exponents.nonzero_blocks().map(|b| ExponentBlock::new(&b.value + &ParamRat::one(), b.mult)).collect(),
            ),
        })
        .collect();
    if !zero_legs.is_empty() {
        classes.push(IrregularClass { alpha: ParamRat::zero(), legs: zero_legs });
    }
    for (ci, c) in t.classes.iter().enumerate() {
        if ci == z {
            continue;
        }
        let inv = c.alpha.recip();
        classes.push(IrregularClass {
            alpha: -&inv,
            legs: c
                .legs
                .iter()
                .map(|l| IrregularLeg { beta: &(&sign * &l.beta) * &inv, exponents: l.exponents.clone() })
                .collect(),
        });
    }
    let out = LocalDatumTable { order: new_order, rows, classes };
    out.validate()?;
    Ok(out)
}

/// Table of `L ∘ R P` for the transform `x ↦ -∂`, `∂ ↦ x`.
pub fn t_laplace(t: &LocalDatumTable) -> Result<LocalDatumTable> {
    laplace_generic(t, false)
}

/// Table of `L^{-1} ∘ R P` for the transform `x ↦ ∂`, `∂ ↦ -x`.
pub fn t_laplace_inv(t: &LocalDatumTable) -> Result<LocalDatumTable> {
    laplace_generic(t, true)
}
