//! Tables of local datum as first-class data: validation, the rigidity
//! index, canonical ordering, and the table-level transformation laws of
//! additions, twisted Euler transforms and the Fourier-Laplace transform.

mod table;
mod text;
mod transform;

pub use table::{ExponentBlock, ExponentSet, IrregularClass, IrregularLeg, LocalDatumTable, RegularRow};
pub use text::{parse_table, render_table};
pub use transform::{t_add, t_add_at, t_euler, t_euler_at, t_laplace, t_laplace_inv, EULER_TARGET_SHIFT};

use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::scalar::ParamRat;

/// Which list of blocks a permutation acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockOwner {
    /// Non-zero blocks of a regular row.
    Row(usize),
    /// Blocks of leg `leg` in class `class`.
    Leg { class: usize, leg: usize },
}

/// Certificate that a table is in the collapsible shape.
#[derive(Clone, PartialEq, Debug)]
pub struct FinalShape {
    pub alpha: ParamRat,
    pub beta: ParamRat,
    pub nu: ParamRat,
    pub n: usize,
}

impl ExponentSet {
    /// Rebuilds the zero block so that the total becomes `total`.
    fn with_zero_block(mut self, total: usize) -> Result<ExponentSet> {
        let nonzero = self.nonzero_total();
        if nonzero > total {
            return Err(Error::Precondition(format!(
                "regular row needs {} non-zero exponents but the order is {}",
                nonzero, total
            )));
        }
        self.blocks.retain(|b| !b.is_zero_block);
        if total > nonzero {
            self.blocks.insert(0, ExponentBlock::zero(total - nonzero));
        }
        Ok(self)
    }
}

fn check_separation(blocks: &[ExponentBlock], place: &str) -> Result<()> {
    for (a, x) in blocks.iter().enumerate() {
        if x.mult == 0 {
            return Err(Error::Precondition(format!("empty block at {}", place)));
        }
        for y in &blocks[a + 1..] {
            if (&x.value - &y.value).as_i64().is_some() {
                return Err(Error::BlockCollision(format!(
                    "blocks [{}] and [{}] at {} differ by an integer",
                    render_scalar(&x.value),
                    render_scalar(&y.value),
                    place
                )));
            }
        }
    }
    Ok(())
}

impl LocalDatumTable {
    /// The trivial table of `∂ - αx - β`.
    pub fn trivial(alpha: ParamRat, beta: ParamRat) -> LocalDatumTable {
        LocalDatumTable {
            order: 1,
            rows: Vec::new(),
            classes: vec![IrregularClass {
                alpha,
                legs: vec![IrregularLeg { beta, exponents: ExponentSet::new(vec![ExponentBlock::new(ParamRat::zero(), 1)]) }],
            }],
        }
    }

    /// Checks every structural invariant of a table.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(Error::Precondition("table order must be positive".into()));
        }
        for (a, r) in self.rows.iter().enumerate() {
            let place = format!("x = {}", render_scalar(&r.point));
            if r.exponents.total() != n {
                return Err(Error::Precondition(format!("row at {} has {} exponents, expected {}", place, r.exponents.total(), n)));
            }
            if r.exponents.blocks.iter().filter(|b| b.is_zero_block).count() > 1 {
                return Err(Error::Precondition(format!("row at {} has two zero blocks", place)));
            }
            if r.exponents.blocks.iter().any(|b| b.is_zero_block != b.value.is_zero()) {
                return Err(Error::Precondition(format!("row at {} mislabels its zero block", place)));
            }
            check_separation(&r.exponents.blocks, &place)?;
            if self.rows[a + 1..].iter().any(|s| s.point == r.point) {
                return Err(Error::Precondition(format!("regular point {} repeated", render_scalar(&r.point))));
            }
        }
        let mut total = 0;
        for (a, c) in self.classes.iter().enumerate() {
            if c.legs.is_empty() {
                return Err(Error::Precondition("class without legs".into()));
            }
            if self.classes[a + 1..].iter().any(|d| d.alpha == c.alpha) {
                return Err(Error::Precondition(format!("class {} repeated", render_scalar(&c.alpha))));
            }
            for (b, l) in c.legs.iter().enumerate() {
                let place = format!("leg ({}, {})", render_scalar(&c.alpha), render_scalar(&l.beta));
                if l.exponents.blocks.is_empty() {
                    return Err(Error::Precondition(format!("{} has no blocks", place)));
                }
                if l.exponents.blocks.iter().any(|b| b.is_zero_block) {
                    return Err(Error::Precondition(format!("{} carries a zero block flag", place)));
                }
                check_separation(&l.exponents.blocks, &place)?;
                if c.legs[b + 1..].iter().any(|m| m.beta == l.beta) {
                    return Err(Error::Precondition(format!("{} repeated", place)));
                }
            }
            total += c.mult();
        }
        if total != n {
            return Err(Error::Precondition(format!("classes cover {} of {} directions", total, n)));
        }
        Ok(())
    }

    /// Class multiplicity `n_i`.
    pub fn class_mult(&self, class: usize) -> usize {
        self.classes[class].mult()
    }

    /// `Σ_{rows, non-zero blocks} m`.
    pub fn regular_nonzero_total(&self) -> usize {
        self.rows.iter().map(|r| r.exponents.nonzero_total()).sum()
    }

    /// `N_i = Σ_{rows, non-zero blocks} m + (n - n_i)`.
    pub fn n_cap(&self, class: usize) -> usize {
        self.regular_nonzero_total() + self.order - self.class_mult(class)
    }

    /// The same table with rows, classes, legs and blocks in a fixed order,
    /// so that tables describing the same local datum compare equal.
    pub fn canonical(&self) -> LocalDatumTable {
        let key = |q: &ParamRat| render_scalar(q);
        let sort_blocks = |s: &ExponentSet| {
            let mut blocks = s.blocks.clone();
            blocks.sort_by(|a, b| {
                b.is_zero_block
                    .cmp(&a.is_zero_block)
                    .then(b.mult.cmp(&a.mult))
                    .then_with(|| key(&a.value).cmp(&key(&b.value)))
            });
            ExponentSet::new(blocks)
        };
        let mut rows: Vec<RegularRow> = self
            .rows
            .iter()
            .map(|r| RegularRow { point: r.point.clone(), exponents: sort_blocks(&r.exponents) })
            .collect();
        rows.sort_by_key(|r| key(&r.point));
        let mut classes: Vec<IrregularClass> = self
            .classes
            .iter()
            .map(|c| {
                let mut legs: Vec<IrregularLeg> = c
                    .legs
                    .iter()
                    .map(|l| IrregularLeg { beta: l.beta.clone(), exponents: sort_blocks(&l.exponents) })
                    .collect();
                legs.sort_by_key(|l| key(&l.beta));
                IrregularClass { alpha: c.alpha.clone(), legs }
            })
            .collect();
        classes.sort_by_key(|c| key(&c.alpha));
        LocalDatumTable { order: self.order, rows, classes }
    }

    /// Equality up to the ordering of rows, classes, legs and blocks.
    pub fn same_datum(&self, other: &LocalDatumTable) -> bool {
        self.canonical() == other.canonical()
    }

    fn blocks_mut(&mut self, owner: BlockOwner) -> Result<&mut Vec<ExponentBlock>> {
        match owner {
            BlockOwner::Row(r) => self
                .rows
                .get_mut(r)
                .map(|r| &mut r.exponents.blocks)
                .ok_or_else(|| Error::Precondition(format!("no regular row {}", r))),
            BlockOwner::Leg { class, leg } => self
                .classes
                .get_mut(class)
                .and_then(|c| c.legs.get_mut(leg))
                .map(|l| &mut l.exponents.blocks)
                .ok_or_else(|| Error::Precondition(format!("no leg {} in class {}", leg, class))),
        }
    }

    /// Reorders the non-zero blocks of a row or the blocks of a leg;
    /// `order[k]` is the old position of the new `k`-th block.
    pub fn permute(&self, owner: BlockOwner, order: &[usize]) -> Result<LocalDatumTable> {
        let mut out = self.clone();
        let blocks = out.blocks_mut(owner)?;
        let zero: Vec<ExponentBlock> = blocks.iter().filter(|b| b.is_zero_block).cloned().collect();
        let rest: Vec<ExponentBlock> = blocks.iter().filter(|b| !b.is_zero_block).cloned().collect();
        let mut seen = vec![false; rest.len()];
        if order.len() != rest.len() || order.iter().any(|&k| k >= rest.len() || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::Precondition(format!("{:?} is not a permutation of {} blocks", order, rest.len())));
        }
        *blocks = zero.into_iter().chain(order.iter().map(|&k| rest[k].clone())).collect();
        Ok(out)
    }

    /// The collapsible shape: one class, one leg, one block, and either
    /// `Σ_{rows, non-zero blocks} m = n` or the trivial table.
    pub fn is_final(&self) -> Option<FinalShape> {
        let [class] = self.classes.as_slice() else { return None };
        let [leg] = class.legs.as_slice() else { return None };
        let [block] = leg.exponents.blocks.as_slice() else { return None };
        let trivial = self.rows.is_empty() && self.order == 1;
        if self.regular_nonzero_total() == self.order || trivial {
            Some(FinalShape { alpha: class.alpha.clone(), beta: leg.beta.clone(), nu: block.value.clone(), n: self.order })
        } else {
            None
        }
    }
}

/// `idx = -((p+1)n² - Σ n_i² - Σ (n^i_j)² - Σ_{j≥0} (m^i_j)² - Σ (n^{ij}_k)²)`.
pub fn rigidity_index(t: &LocalDatumTable) -> i64 {
    let sq = |m: usize| (m * m) as i64;
    let n = t.order as i64;
    let p = t.rows.len() as i64;
    let mut acc = (p + 1) * n * n;
    for c in &t.classes {
        acc -= sq(c.mult());
        for l in &c.legs {
            acc -= sq(l.mult());
            acc -= l.exponents.blocks.iter().map(|b| sq(b.mult)).sum::<i64>();
        }
    }
    for r in &t.rows {
        acc -= r.exponents.blocks.iter().map(|b| sq(b.mult)).sum::<i64>();
    }
    -acc
}
