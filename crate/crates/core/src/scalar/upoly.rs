//! Univariate polynomials over Q(ξ), used for coefficients in x and for
//! characteristic polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::mpoly::MPoly;
use super::prat::ParamRat;
use super::symbol::Symbol;

/// Dense univariate polynomial, `coeffs[k]` multiplying the k-th power.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<ParamRat>,
}

/// Polynomial in x with coefficients in Q(ξ).
pub type CoefPoly = UPoly;

/// Internal symbol standing for the polynomial variable when converting to
/// multivariate form.
pub(crate) fn main_symbol() -> Symbol {
    static S: OnceLock<Symbol> = OnceLock::new();
    *S.get_or_init(|| Symbol::intern("#t"))
}

impl UPoly {
    pub fn new(mut coeffs: Vec<ParamRat>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: ParamRat) -> UPoly {
        UPoly::new(vec![c])
    }

    pub fn one() -> UPoly {
        UPoly::constant(ParamRat::one())
    }

    /// The monomial `x`.
    pub fn x() -> UPoly {
        UPoly::new(vec![ParamRat::zero(), ParamRat::one()])
    }

    /// `x - c`.
    pub fn linear_root(c: &ParamRat) -> UPoly {
        UPoly::new(vec![-c, ParamRat::one()])
    }

    pub fn monomial(c: ParamRat, k: usize) -> UPoly {
        let mut v = vec![ParamRat::zero(); k];
        v.push(c);
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[ParamRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> ParamRat {
        self.coeffs.last().cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn scale(&self, c: &ParamRat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &ParamRat::int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, v: &ParamRat) -> ParamRat {
        let mut acc = ParamRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + c;
        }
        acc
    }

    /// Composition `self(q)`.
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &ParamRat) -> UPoly {
        self.compose(&UPoly::new(vec![c.clone(), ParamRat::one()]))
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder over the coefficient field.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![ParamRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Order of vanishing at `c`.
    pub fn valuation_at(&self, c: &ParamRat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let s = self.shift(c);
        s.coeffs.iter().position(|a| !a.is_zero()).unwrap()
    }

    /// Least-common-multiple of the coefficient denominators times `self`,
    /// as a polynomial in [`main_symbol`] and the parameters.
    pub(crate) fn to_mpoly(&self) -> MPoly {
        let t = main_symbol();
        let mut den = MPoly::one();
        for c in &self.coeffs {
            if !c.denom().is_one() {
                let g = MPoly::gcd(&den, c.denom());
                den = &den * &c.denom().div_exact(&g).unwrap();
            }
        }
        let parts: Vec<MPoly> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    c.numer() * &den
                } else {
                    c.numer() * &den.div_exact(c.denom()).unwrap()
                }
            })
            .collect();
        MPoly::from_coeffs_in(t, &parts)
    }

    pub(crate) fn from_mpoly(p: &MPoly) -> UPoly {
        UPoly::new(p.coeffs_in(main_symbol()).into_iter().map(ParamRat::from_poly).collect())
    }

    /// Monic greatest common divisor over Q(ξ).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.deg() == 0 || b.deg() == 0 {
            return UPoly::one();
        }
        let g = MPoly::gcd(&a.to_mpoly(), &b.to_mpoly());
        UPoly::from_mpoly(&g).monic()
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![ParamRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(format!("({})*t^{}", c, k));
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &ParamRat, k: usize) -> ParamRat {
    let mut acc = ParamRat::one();
    for i in 0..k {
        acc = &acc * &(a + &ParamRat::int(i as i64));
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn falling(a: &ParamRat, k: usize) -> ParamRat {
    let mut acc = ParamRat::one();
    for i in 0..k {
        acc = &acc * &(a - &ParamRat::int(i as i64));
    }
    acc
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient as a rational.
pub fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::from_integer(BigInt::from(0));
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
