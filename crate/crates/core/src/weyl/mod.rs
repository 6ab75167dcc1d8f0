//! The Weyl algebra with parameters and the transforms acting on it.

mod operator;
mod transforms;

pub use operator::{LocalizedOperator, WeylOperator, XRat};
pub use transforms::{
    ade, adei, equiv, euler, laplace, laplace_inv, rad_power, reduced_rep, reduced_rep_localized,
    shift_args, twisted_euler, TwistSpec,
};
