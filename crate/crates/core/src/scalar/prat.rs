//! Rational functions in the parameters: the coefficient field Q(ξ).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::symbol::Symbol;

/// An element of Q(ξ) in lowest terms with a denominator of leading coefficient one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamRat {
    num: MPoly,
    den: MPoly,
}

impl ParamRat {
    pub fn zero() -> ParamRat {
        ParamRat { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> ParamRat {
        ParamRat::int(1)
    }

    pub fn int(n: i64) -> ParamRat {
        ParamRat { num: MPoly::int(n), den: MPoly::one() }
    }

    pub fn rational(r: BigRational) -> ParamRat {
        ParamRat { num: MPoly::constant(r), den: MPoly::one() }
    }

    pub fn frac(p: i64, q: i64) -> ParamRat {
        ParamRat::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn param(name: &str) -> ParamRat {
        ParamRat::from_poly(MPoly::var(Symbol::intern(name)))
    }

    pub fn symbol(s: Symbol) -> ParamRat {
        ParamRat::from_poly(MPoly::var(s))
    }

    pub fn from_poly(p: MPoly) -> ParamRat {
        ParamRat { num: p, den: MPoly::one() }
    }

    /// Builds `num / den` in lowest terms.
    ///
    /// # Panics
    /// When `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> ParamRat {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ParamRat::zero();
        }
        if let Some(c) = den.as_constant() {
            return ParamRat { num: num.scale(&c.recip()), den: MPoly::one() };
        }
        let g = MPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coeff().recip();
        ParamRat { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The rational value when no parameter occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The integer value when `self` is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| i64::try_from(n).ok())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn recip(&self) -> ParamRat {
        assert!(!self.is_zero(), "reciprocal of zero");
        ParamRat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> ParamRat {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let e = e as u32;
        ParamRat { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Replaces the symbol `s` by `value`; `None` when a denominator vanishes.
    pub fn substitute(&self, s: Symbol, value: &ParamRat) -> Option<ParamRat> {
        if !self.vars().contains(&s) {
            return Some(self.clone());
        }
        let sub = |p: &MPoly| -> ParamRat {
            let coeffs = p.coeffs_in(s);
            let mut acc = ParamRat::zero();
            for c in coeffs.iter().rev() {
                acc = &(&acc * value) + &ParamRat::from_poly(c.clone());
            }
            acc
        };
        let d = sub(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(&sub(&self.num) / &d)
    }

    /// Evaluates several symbols at rational values; `None` on a pole.
    pub fn eval(&self, point: &HashMap<Symbol, BigRational>) -> Option<ParamRat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(ParamRat::new(self.num.eval(point), d))
    }
}

impl Default for ParamRat {
    fn default() -> Self {
        ParamRat::zero()
    }
}

impl From<i64> for ParamRat {
    fn from(n: i64) -> ParamRat {
        ParamRat::int(n)
    }
}

impl From<BigRational> for ParamRat {
    fn from(r: BigRational) -> ParamRat {
        ParamRat::rational(r)
    }
}

impl<'a> Add<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn add(self, rhs: &ParamRat) -> ParamRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ParamRat { num: &self.num + &rhs.num, den: MPoly::one() };
        }
        if self.den == rhs.den {
            return ParamRat::new(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return ParamRat { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return ParamRat { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        let g = MPoly::gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        ParamRat::new(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn sub(self, rhs: &ParamRat) -> ParamRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn mul(self, rhs: &ParamRat) -> ParamRat {
        if self.is_zero() || rhs.is_zero() {
            return ParamRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ParamRat { num: &self.num * &rhs.num, den: MPoly::one() };
        }
        let g1 = MPoly::gcd(&self.num, &rhs.den);
        let g2 = MPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        ParamRat { num: (&n1 * &n2).scale(&lc), den: den.scale(&lc) }
    }
}

impl<'a> Div<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn div(self, rhs: &ParamRat) -> ParamRat {
        self * &rhs.recip()
    }
}

impl Neg for &ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ParamRat {
            type Output = ParamRat;
            fn $m(self, rhs: ParamRat) -> ParamRat {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        -&self
    }
}

impl Zero for ParamRat {
    fn zero() -> Self {
        ParamRat::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamRat {
    fn one() -> Self {
        ParamRat::one()
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_param_rat(self))
    }
}
