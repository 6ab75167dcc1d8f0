//! Fourier-Laplace transform, additions, twists and Euler transforms.

use crate::error::{Error, Result};
use crate::scalar::{ParamRat, UPoly};

use super::operator::{LocalizedOperator, WeylOperator, XRat};

/// The polynomial `p(x) = (quad/2) x² + lin·x` of an exponential twist.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistSpec {
    pub quad: ParamRat,
    pub lin: ParamRat,
}

impl TwistSpec {
    pub fn new(quad: ParamRat, lin: ParamRat) -> TwistSpec {
        TwistSpec { quad, lin }
    }

    pub fn zero() -> TwistSpec {
        TwistSpec::new(ParamRat::zero(), ParamRat::zero())
    }

    pub fn neg(&self) -> TwistSpec {
        TwistSpec::new(-&self.quad, -&self.lin)
    }

    /// The derivative `p'(x) = quad·x + lin`.
    pub fn derivative(&self) -> UPoly {
        UPoly::new(vec![self.lin.clone(), self.quad.clone()])
    }
}

/// Substitutes `x ↦ image_x`, `∂ ↦ image_d` into `p` (an algebra map).
fn substitute_generators(p: &WeylOperator, image_x: &WeylOperator, image_d: &WeylOperator) -> WeylOperator {
    let mut out = WeylOperator::zero();
    let mut d_pow = WeylOperator::one();
    for a in p.coeffs() {
        let mut a_img = WeylOperator::zero();
        for c in a.coeffs().iter().rev() {
            a_img = &(&a_img * image_x) + &WeylOperator::constant(c.clone());
        }
        out = &out + &(&a_img * &d_pow);
        d_pow = &d_pow * image_d;
    }
    out
}

/// Fourier-Laplace transform `x ↦ -∂`, `∂ ↦ x`.
pub fn laplace(p: &WeylOperator) -> WeylOperator {
    substitute_generators(p, &-&WeylOperator::d(), &WeylOperator::x())
}

/// Inverse transform `x ↦ ∂`, `∂ ↦ -x`.
pub fn laplace_inv(p: &WeylOperator) -> WeylOperator {
    substitute_generators(p, &WeylOperator::d(), &-&WeylOperator::x())
}

/// Reduced representative of an operator.
pub fn reduced_rep(p: &WeylOperator) -> Result<WeylOperator> {
    p.reduced()
}

/// Reduced representative of a localized operator.
pub fn reduced_rep_localized(p: &LocalizedOperator) -> Result<WeylOperator> {
    p.num.reduced()
}

/// Substitutes `∂ ↦ ∂ - h` for a rational function `h` of x.
///
/// With `h = g/d`, `(∂ - h)^i = d^{-i} Q_i` where `Q_0 = 1` and
/// `Q_{i+1} = d ∂ Q_i - i d' Q_i - g Q_i`, so the image is
/// `d^{-n} Σ a_i d^{n-i} Q_i`.
pub fn adei(h: &XRat, p: &WeylOperator) -> LocalizedOperator {
    if h.num.is_zero() || p.is_zero() {
        return LocalizedOperator { den: UPoly::one(), num: p.clone() };
    }
    let n = p.order();
    let d_op = WeylOperator::from_poly(h.den.clone());
    let dprime = h.den.derivative();
    let g_op = WeylOperator::from_poly(h.num.clone());
    let mut q = WeylOperator::one();
    let mut d_pows = vec![UPoly::one()];
    for _ in 0..n {
        d_pows.push(d_pows.last().unwrap() * &h.den);
    }
    let mut num = WeylOperator::zero();
    for (i, a) in p.coeffs().iter().enumerate() {
        if !a.is_zero() {
            num = &num + &q.left_mul_poly(&(a * &d_pows[n - i]));
        }
        if i < n {
            let next = &(&d_op * &(&WeylOperator::d() * &q))
                - &q.left_mul_poly(&dprime.scale(&ParamRat::int(i as i64)));
            q = &next - &(&g_op * &q);
        }
    }
    LocalizedOperator::new(d_pows[n].clone(), num)
}

/// `R ∘ Adei(f/(x-c))`, the conjugate `(x-c)^f P (x-c)^{-f}` made polynomial.
pub fn rad_power(c: &ParamRat, f: &ParamRat, p: &WeylOperator) -> Result<WeylOperator> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    reduced_rep_localized(&adei(&XRat::simple_pole(f, c), p))
}

/// The twist `Ade(p) = Adei(p')`: `∂ ↦ ∂ - (quad·x + lin)`.
pub fn ade(t: &TwistSpec, p: &WeylOperator) -> WeylOperator {
    adei(&XRat::poly(t.derivative()), p).num
}

/// `P(x, ∂ + αx + β)`.
pub fn shift_args(p: &WeylOperator, alpha: &ParamRat, beta: &ParamRat) -> WeylOperator {
    ade(&TwistSpec::new(-alpha, -beta), p)
}

/// The Euler transform `E(α, f) = L ∘ RAd((x+α)^{-f}) ∘ L^{-1} ∘ R`.
pub fn euler(alpha: &ParamRat, f: &ParamRat, p: &WeylOperator) -> Result<WeylOperator> {
    let r = reduced_rep(p)?;
    let inv = laplace_inv(&r);
    let added = rad_power(&-alpha, &-f, &inv)?;
    let out = reduced_rep(&laplace(&added))?;
    if out.order() == 0 {
        return Err(Error::CollapsedToFunction);
    }
    Ok(out)
}

/// `Ade(p) ∘ Π E(α_i, f_i) ∘ Ade(-p)`, the rightmost pair acting first.
pub fn twisted_euler(t: &TwistSpec, pairs: &[(ParamRat, ParamRat)], p: &WeylOperator) -> Result<WeylOperator> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let mut q = ade(&t.neg(), p);
    for (alpha, f) in pairs.iter().rev() {
        q = euler(alpha, f, &q)?;
    }
    reduced_rep(&ade(t, &q))
}

/// `P ~ Q`: equal reduced representatives up to a unit of Q(ξ).
pub fn equiv(p: &WeylOperator, q: &WeylOperator) -> Result<bool> {
    let rp = reduced_rep(p)?;
    let rq = reduced_rep(q)?;
    if rp.order() != rq.order() || rp.leading().deg() != rq.leading().deg() {
        return Ok(false);
    }
    let u = &rp.leading().leading() / &rq.leading().leading();
    Ok(rp == rq.scale(&u))
}
