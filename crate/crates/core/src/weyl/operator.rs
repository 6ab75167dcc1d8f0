//! Normally ordered operators `Σ a_i(x) ∂^i` and their arithmetic.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{binomial, MPoly, ParamRat, Symbol, UPoly};

/// An element of the Weyl algebra with coefficients polynomial in x over Q(ξ).
///
/// `coeffs[i]` multiplies `∂^i`; trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeylOperator {
    coeffs: Vec<UPoly>,
}

/// `den(x)^{-1} · num`, an element of the localized algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalizedOperator {
    pub den: UPoly,
    pub num: WeylOperator,
}

/// Rational function of x over Q(ξ), `num / den`.
#[derive(Clone, PartialEq, Debug)]
pub struct XRat {
    pub num: UPoly,
    pub den: UPoly,
}

impl XRat {
    pub fn poly(p: UPoly) -> XRat {
        XRat { num: p, den: UPoly::one() }
    }

    /// `f / (x - c)`.
    pub fn simple_pole(f: &ParamRat, c: &ParamRat) -> XRat {
        XRat { num: UPoly::constant(f.clone()), den: UPoly::linear_root(c) }
    }

    pub fn neg(&self) -> XRat {
        XRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &XRat) -> XRat {
        XRat {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }
}

/// Symbol used for x when operator coefficients are flattened into
/// polynomials in x and the parameters together.
pub(crate) fn x_symbol() -> Symbol {
    static S: OnceLock<Symbol> = OnceLock::new();
    *S.get_or_init(|| Symbol::intern("x"))
}

impl WeylOperator {
    pub fn new(mut coeffs: Vec<UPoly>) -> WeylOperator {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        WeylOperator { coeffs }
    }

    pub fn zero() -> WeylOperator {
        WeylOperator { coeffs: Vec::new() }
    }

    pub fn one() -> WeylOperator {
        WeylOperator::from_poly(UPoly::one())
    }

    pub fn from_poly(p: UPoly) -> WeylOperator {
        WeylOperator::new(vec![p])
    }

    pub fn constant(c: ParamRat) -> WeylOperator {
        WeylOperator::from_poly(UPoly::constant(c))
    }

    pub fn x() -> WeylOperator {
        WeylOperator::from_poly(UPoly::x())
    }

    /// The operator ∂.
    pub fn d() -> WeylOperator {
        WeylOperator::new(vec![UPoly::zero(), UPoly::one()])
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> UPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in ∂; zero for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Maximal x-degree of the coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).map(UPoly::deg).max().unwrap_or(0)
    }

    pub fn leading(&self) -> UPoly {
        self.coeffs.last().cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn scale(&self, c: &ParamRat) -> WeylOperator {
        WeylOperator::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `p(x) · self`.
    pub fn left_mul_poly(&self, p: &UPoly) -> WeylOperator {
        WeylOperator::new(self.coeffs.iter().map(|a| p * a).collect())
    }

    /// `∂^i · b(x)` in normal order.
    fn d_power_times(i: usize, b: &UPoly) -> Vec<UPoly> {
        let mut out = vec![UPoly::zero(); i + 1];
        let mut deriv = b.clone();
        for k in 0..=i {
            if deriv.is_zero() {
                break;
            }
            out[i - k] = deriv.scale(&ParamRat::rational(binomial(i, k)));
            deriv = deriv.derivative();
        }
        out
    }

    /// Applies `self` to a polynomial function of x.
    pub fn apply_to_poly(&self, f: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        let mut g = f.clone();
        for a in &self.coeffs {
            out = &out + &(a * &g);
            g = g.derivative();
        }
        out
    }

    /// Every parameter occurring in a coefficient.
    pub fn params(&self) -> std::collections::BTreeSet<Symbol> {
        self.coeffs
            .iter()
            .flat_map(|c| c.coeffs().iter().flat_map(|q| q.vars()).collect::<Vec<_>>())
            .collect()
    }

    /// Substitutes `s := value` in every coefficient.
    pub fn substitute(&self, s: Symbol, value: &ParamRat) -> Option<WeylOperator> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let mut v = Vec::with_capacity(c.coeffs().len());
            for q in c.coeffs() {
                v.push(q.substitute(s, value)?);
            }
            out.push(UPoly::new(v));
        }
        Some(WeylOperator::new(out))
    }

    /// Flattens into polynomials in x and the parameters, after multiplying
    /// by a common denominator of the parameters.
    pub(crate) fn to_joint(&self) -> Vec<MPoly> {
        let xs = x_symbol();
        let mut den = MPoly::one();
        for c in &self.coeffs {
            for q in c.coeffs() {
                if !q.denom().is_one() {
                    let g = MPoly::gcd(&den, q.denom());
                    den = &den * &q.denom().div_exact(&g).unwrap();
                }
            }
        }
        self.coeffs
            .iter()
            .map(|c| {
                let parts: Vec<MPoly> = c
                    .coeffs()
                    .iter()
                    .map(|q| q.numer() * &den.div_exact(q.denom()).unwrap())
                    .collect();
                MPoly::from_coeffs_in(xs, &parts)
            })
            .collect()
    }

    pub(crate) fn from_joint(parts: &[MPoly]) -> WeylOperator {
        let xs = x_symbol();
        WeylOperator::new(
            parts
                .iter()
                .map(|p| UPoly::new(p.coeffs_in(xs).into_iter().map(ParamRat::from_poly).collect()))
                .collect(),
        )
    }

    /// The reduced representative: x-content removed, coefficients made
    /// primitive polynomials in the parameters with a positive leading term.
    pub fn reduced(&self) -> Result<WeylOperator> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let parts = self.to_joint();
        let mut g = MPoly::zero();
        for p in &parts {
            if p.is_zero() {
                continue;
            }
            g = MPoly::gcd(&g, p);
            if g.is_one() {
                break;
            }
        }
        let divided: Vec<MPoly> = parts.iter().map(|p| p.div_exact(&g).unwrap()).collect();
        let (factor, _) = MPoly::from_coeffs_in(Symbol::intern("#d"), &divided).integral_primitive();
        let mut inv = factor.recip();
        if (divided.last().unwrap().leading_coeff() * &inv).is_negative() {
            inv = -inv;
        }
        Ok(WeylOperator::from_joint(&divided.iter().map(|p| p.scale(&inv)).collect::<Vec<_>>()))
    }
}

impl LocalizedOperator {
    /// Builds `den^{-1} num` with the common content cancelled.
    pub fn new(den: UPoly, num: WeylOperator) -> LocalizedOperator {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = den.clone();
        for c in num.coeffs() {
            if g.deg() == 0 {
                break;
            }
            g = UPoly::gcd(&g, c);
        }
        if g.deg() == 0 {
            return LocalizedOperator { den, num };
        }
        let den = den.div_exact(&g).unwrap();
        let num = WeylOperator::new(num.coeffs().iter().map(|c| c.div_exact(&g).unwrap()).collect());
        LocalizedOperator { den, num }
    }
}

impl<'a> Add<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOperator::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOperator::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        if self.is_zero() || rhs.is_zero() {
            return WeylOperator::zero();
        }
        let mut out = vec![UPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, t) in WeylOperator::d_power_times(i, b).into_iter().enumerate() {
                    if !t.is_zero() {
                        out[k + j] = &out[k + j] + &(a * &t);
                    }
                }
            }
        }
        WeylOperator::new(out)
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        WeylOperator { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: WeylOperator) -> WeylOperator {
        &self + &rhs
    }
}

impl Sub for WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: WeylOperator) -> WeylOperator {
        &self - &rhs
    }
}

impl Mul for WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: WeylOperator) -> WeylOperator {
        &self * &rhs
    }
}

impl Neg for WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        -&self
    }
}
