//! Tables of local datum and their exponent blocks.

use crate::scalar::ParamRat;

/// The block `[value]_mult = {value, value+1, ..., value+mult-1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct ExponentBlock {
    pub value: ParamRat,
    pub mult: usize,
    pub is_zero_block: bool,
}

impl ExponentBlock {
    pub fn new(value: ParamRat, mult: usize) -> ExponentBlock {
        ExponentBlock { value, mult, is_zero_block: false }
    }

    /// A block whose values are exactly `0..mult-1`.
    pub fn zero(mult: usize) -> ExponentBlock {
        ExponentBlock { value: ParamRat::zero(), mult, is_zero_block: true }
    }
}

/// Semi-simple exponents at one point, as blocks.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ExponentSet {
    pub blocks: Vec<ExponentBlock>,
}

impl ExponentSet {
    pub fn new(blocks: Vec<ExponentBlock>) -> ExponentSet {
        ExponentSet { blocks }
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.mult).sum()
    }

    /// Multiplicity of the zero block, zero when there is none.
    pub fn zero_mult(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_zero_block).map(|b| b.mult).sum()
    }

    /// Blocks other than the zero block, in stored order.
    pub fn nonzero_blocks(&self) -> impl Iterator<Item = &ExponentBlock> {
        self.blocks.iter().filter(|b| !b.is_zero_block)
    }

    /// Sum of the multiplicities of the non-zero blocks.
    pub fn nonzero_total(&self) -> usize {
        self.nonzero_blocks().map(|b| b.mult).sum()
    }
}

/// A regular singular point and its exponents, zero block included.
#[derive(Clone, PartialEq, Debug)]
pub struct RegularRow {
    pub point: ParamRat,
    pub exponents: ExponentSet,
}

/// One exponential factor `e^{α/2 x² + β x}` and its exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct IrregularLeg {
    pub beta: ParamRat,
    pub exponents: ExponentSet,
}

impl IrregularLeg {
    pub fn mult(&self) -> usize {
        self.exponents.total()
    }
}

/// All legs sharing the quadratic coefficient `α`.
#[derive(Clone, PartialEq, Debug)]
pub struct IrregularClass {
    pub alpha: ParamRat,
    pub legs: Vec<IrregularLeg>,
}

impl IrregularClass {
    pub fn mult(&self) -> usize {
        self.legs.iter().map(IrregularLeg::mult).sum()
    }
}

/// The table of local datum of an operator.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalDatumTable {
    pub order: usize,
    pub rows: Vec<RegularRow>,
    pub classes: Vec<IrregularClass>,
}
