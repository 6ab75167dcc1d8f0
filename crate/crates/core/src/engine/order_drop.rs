//! When an Euler transform at an exponent block at infinity lowers the order.

use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::local::{infinity_exponents, newton_polygon};
use crate::scalar::ParamRat;
use crate::weyl::{euler, reduced_rep, WeylOperator};

/// The criterion `deg P - ord P < n_i` against the observed order of
/// `E(0, μ_i - 1) P`.
#[derive(Clone, PartialEq, Debug)]
pub struct OrderDrop {
    pub mu: ParamRat,
    pub n_i: usize,
    pub predicted: bool,
    pub observed: bool,
    pub new_order: usize,
}

/// Evaluates both sides of the order-drop criterion for block `block` of
/// the exponents at infinity of an operator regular singular there.
pub fn order_drop_iff(p: &WeylOperator, block: usize) -> Result<OrderDrop> {
    let p = reduced_rep(p)?;
    let poly = newton_polygon(&p)?;
    if poly.length_of_slope(0) != p.order() {
        return Err(Error::Precondition("infinity is not a regular singular point".into()));
    }
    let exps = infinity_exponents(&p)?;
    let b = exps
        .blocks
        .get(block)
        .ok_or_else(|| Error::Precondition(format!("no block {} at infinity", block)))?;
    if b.value.as_i64().is_some() {
        return Err(Error::Precondition(format!("exponent {} is an integer", render_scalar(&b.value))));
    }
    for (k, other) in exps.blocks.iter().enumerate() {
        if k != block && (&b.value - &other.value).as_i64().is_some() {
            return Err(Error::Precondition("exponent blocks differ by an integer".into()));
        }
    }
    let predicted = (p.degree() as i64 - p.order() as i64) < b.mult as i64;
    let q = euler(&ParamRat::zero(), &(&b.value - &ParamRat::one()), &p)?;
    let new_order = q.order();
    Ok(OrderDrop { mu: b.value.clone(), n_i: b.mult, predicted, observed: new_order < p.order(), new_order })
}
