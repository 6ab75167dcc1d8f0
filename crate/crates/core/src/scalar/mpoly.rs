//! Sparse multivariate polynomials with rational coefficients.
//!
//! Monomials are ordered lexicographically with lower symbol indices more
//! significant; the leading term is the largest monomial.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::symbol::Symbol;

/// A monomial: sorted `(symbol, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub Vec<(Symbol, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Mono {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(s, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.0.iter().find(|(v, _)| *v == s).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / other` when every exponent of `other` fits.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - f)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Removes the variable `s`, returning its exponent and the rest.
    pub fn split(&self, s: Symbol) -> (u32, Mono) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for &(v, k) in &self.0 {
            if v == s {
                e = k;
            } else {
                rest.push((v, k));
            }
        }
        (e, Mono(rest))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let n = a.len().min(b.len());
        for i in 0..n {
            if a[i].0 != b[i].0 {
                return if a[i].0 < b[i].0 { Ordering::Greater } else { Ordering::Less };
            }
            if a[i].1 != b[i].1 {
                return a[i].1.cmp(&b[i].1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in interned parameters over Q.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    pub fn var(s: Symbol) -> MPoly {
        MPoly::monomial(Mono::var(s, 1), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial, or `None` when a parameter occurs.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| *s)).collect()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a polynomial in `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<MPoly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(s: Symbol, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::var(s, e as u32);
            for (k, v) in &c.terms {
                out.add_term(k.mul(&m), v.clone());
            }
        }
        out
    }

    pub fn derivative(&self, s: Symbol) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            if e > 0 {
                out.add_term(rest.mul(&Mono::var(s, e - 1)), c * rat(e as i64));
            }
        }
        out
    }

    /// Replaces `s` by `value`.
    pub fn substitute(&self, s: Symbol, value: &MPoly) -> MPoly {
        let coeffs = self.coeffs_in(s);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Evaluates the listed symbols at rational values, leaving the others.
    pub fn eval(&self, point: &HashMap<Symbol, BigRational>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(s, e) in &m.0 {
                match point.get(&s) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest.push((s, e)),
                }
            }
            out.add_term(Mono(rest), coeff);
        }
        out
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv = lc.recip();
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c * &inv;
            r = &r - &d.mul_mono(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// The smallest symbol occurring in either polynomial.
    fn main_var(a: &MPoly, b: &MPoly) -> Option<Symbol> {
        a.vars().into_iter().chain(b.vars()).min()
    }

    /// Gcd of the coefficients of `self` viewed in `s`, made monic.
    pub fn content_in(&self, s: Symbol) -> MPoly {
        let mut g = MPoly::zero();
        for c in self.coeffs_in(s) {
            if c.is_zero() {
                continue;
            }
            g = MPoly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn prem(a: &MPoly, b: &MPoly, s: Symbol) -> MPoly {
        let db = b.degree_in(s);
        let bc = b.coeffs_in(s);
        let lb = bc.last().unwrap().clone();
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(s) >= db {
            let dr = r.degree_in(s);
            let rc = r.coeffs_in(s);
            let top = rc.last().unwrap();
            let shift = MPoly::from_coeffs_in(s, &[MPoly::zero(), MPoly::one()]).pow(dr - db);
            r = &(&r * &lb) - &(&(top * &shift) * b);
        }
        r
    }

    /// Greatest common divisor with leading coefficient one (zero for two zeros).
    /// A sufficient test for `gcd(a, b) = 1`: for every shared symbol `s`,
    /// specialise the other symbols at points where both leading
    /// coefficients in `s` survive and check that the univariate images are
    /// coprime. The degree of an image gcd bounds the true degree in `s`.
    fn coprime_by_evaluation(a: &MPoly, b: &MPoly) -> bool {
        let va = a.vars();
        let vb = b.vars();
        let all: Vec<Symbol> = va.union(&vb).copied().collect();
        for &s in va.intersection(&vb) {
            let ok = (0..3u32).any(|attempt| {
                let point: HashMap<Symbol, BigRational> = all
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| t != s)
                    .map(|(k, &t)| {
                        let v = 3 + 7 * k as i64 + 13 * attempt as i64 + (k as i64 * k as i64) % 5;
                        (t, BigRational::from_integer(BigInt::from(v)))
                    })
                    .collect();
                let image = |p: &MPoly| -> Option<Vec<BigRational>> {
                    let cs: Vec<BigRational> =
                        p.coeffs_in(s).iter().map(|c| c.eval(&point).as_constant().unwrap_or_else(BigRational::zero)).collect();
                    if cs.last().map_or(true, |c| c.is_zero()) {
                        None
                    } else {
                        Some(cs)
                    }
                };
                match (image(a), image(b)) {
                    (Some(x), Some(y)) => univariate_gcd_degree(x, y) == 0,
                    _ => false,
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        if a.len() == 1 && b.len() == 1 {
            let (ma, _) = a.leading().unwrap();
            let (mb, _) = b.leading().unwrap();
            let mut out = Vec::new();
            for &(s, e) in &ma.0 {
                let f = mb.degree_in(s);
                if f > 0 {
                    out.push((s, e.min(f)));
                }
            }
            return MPoly::monomial(Mono(out), BigRational::one());
        }
        if a == b {
            return a.monic();
        }
        if MPoly::coprime_by_evaluation(a, b) {
            return MPoly::one();
        }
        let s = MPoly::main_var(a, b).unwrap();
        let (da, db) = (a.degree_in(s), b.degree_in(s));
        if da == 0 {
            return MPoly::gcd(a, &b.content_in(s));
        }
        if db == 0 {
            return MPoly::gcd(&a.content_in(s), b);
        }
        let ca = a.content_in(s);
        let cb = b.content_in(s);
        let gc = MPoly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).unwrap();
        let mut q = b.div_exact(&cb).unwrap();
        if p.degree_in(s) < q.degree_in(s) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = MPoly::prem(&p, &q, s);
            if r.is_zero() {
                break;
            }
            if r.degree_in(s) == 0 {
                return gc;
            }
            let cr = r.content_in(s);
            p = q;
            q = r.div_exact(&cr).unwrap();
        }
        let cq = q.content_in(s);
        (&gc * &q.div_exact(&cq).unwrap()).monic()
    }

    /// Multiplies by the lcm of coefficient denominators and divides by the
    /// integer content, returning the primitive integral polynomial and the
    /// factor `self = factor * primitive`.
    pub fn integral_primitive(&self) -> (BigRational, MPoly) {
        if self.is_zero() {
            return (BigRational::one(), MPoly::zero());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
            num = num_integer::gcd(num, c.numer().clone());
        }
        let mut factor = BigRational::new(num, den);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        (factor.clone(), self.scale(&factor.recip()))
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> MPoly {
        MPoly::int(n)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Degree of the gcd of two dense univariate polynomials over `Q`, given
/// by ascending coefficients with non-zero leading terms.
fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let f = a.last().unwrap() / &lead;
            let off = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[off + k] -= &f * c;
            }
            a.pop();
            while a.last().map_or(false, |c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}
