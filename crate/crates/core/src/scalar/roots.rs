//! Roots in Q(ξ) of univariate polynomials over Q(ξ).
//!
//! After a square-free split, every factor of degree two is solved through an
//! exact square root of its discriminant. Higher factors are made monic over
//! Q[ξ], specialised at an integer parameter point where they stay
//! square-free, solved over Q there, and each rational root is lifted degree
//! by degree in the parameters. A lifted root is kept only after it is
//! checked exactly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mpoly::{MPoly, Mono};
use super::prat::ParamRat;
use super::symbol::Symbol;
use super::upoly::{main_symbol, UPoly};

/// Roots with multiplicities together with the rootless monic cofactor.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    pub roots: Vec<(ParamRat, usize)>,
    pub cofactor: UPoly,
}

impl RootSplit {
    pub fn splits(&self) -> bool {
        self.cofactor.deg() == 0
    }
}

/// Extracts every root of `p` lying in Q(ξ).
///
/// # Panics
/// When `p` is zero.
pub fn small_roots(p: &UPoly) -> RootSplit {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let t = main_symbol();
    let mut roots = Vec::new();
    let mut cofactor = UPoly::one();
    for (factor, mult) in square_free(&p.to_mpoly(), t) {
        let (found, rest) = split_square_free(&factor, t);
        for r in found {
            roots.push((r, mult));
        }
        cofactor = &cofactor * &UPoly::from_mpoly(&rest).pow(mult);
    }
    RootSplit { roots, cofactor: cofactor.monic() }
}

fn t_primitive(p: &MPoly, t: Symbol) -> MPoly {
    let c = p.content_in(t);
    p.div_exact(&c).unwrap()
}

/// Yun's square-free decomposition in the variable `t`.
fn square_free(p: &MPoly, t: Symbol) -> Vec<(MPoly, usize)> {
    let a = t_primitive(p, t);
    if a.degree_in(t) == 0 {
        return Vec::new();
    }
    let b = a.derivative(t);
    let c = t_primitive(&MPoly::gcd(&a, &b), t);
    let mut w = a.div_exact(&c).unwrap();
    let mut y = b.div_exact(&c).unwrap();
    let mut z = &y - &w.derivative(t);
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree_in(t) > 0 {
        let g = t_primitive(&MPoly::gcd(&w, &z), t);
        if g.degree_in(t) > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).unwrap();
        y = z.div_exact(&g).unwrap();
        z = &y - &w.derivative(t);
        i += 1;
    }
    out
}

fn coeff_t(p: &MPoly, t: Symbol, k: usize) -> MPoly {
    p.coeffs_in(t).get(k).cloned().unwrap_or_else(MPoly::zero)
}

/// Roots of a square-free factor and the part left without roots.
fn split_square_free(f: &MPoly, t: Symbol) -> (Vec<ParamRat>, MPoly) {
    let mut rest = f.clone();
    let mut found = Vec::new();
    loop {
        let d = rest.degree_in(t);
        if d == 0 {
            break;
        }
        if d == 1 {
            let r = ParamRat::new(-&coeff_t(&rest, t, 0), coeff_t(&rest, t, 1));
            found.push(r);
            rest = MPoly::one();
            break;
        }
        if d == 2 {
            let (a, b, c) = (coeff_t(&rest, t, 2), coeff_t(&rest, t, 1), coeff_t(&rest, t, 0));
            let disc = &(&b * &b) - &(&MPoly::int(4) * &(&a * &c));
            if let Some(s) = sqrt_poly(&disc) {
                let two_a = &MPoly::int(2) * &a;
                found.push(ParamRat::new(&(-&b) + &s, two_a.clone()));
                found.push(ParamRat::new(&(-&b) - &s, two_a));
                rest = MPoly::one();
            }
            break;
        }
        match lift_one_root(&rest, t) {
            Some(r) => {
                let lin = &(&MPoly::var(t) * r.denom()) - r.numer();
                rest = t_primitive(&rest.div_exact(&lin).expect("verified root divides"), t);
                found.push(r);
            }
            None => break,
        }
    }
    (found, rest)
}

/// Exact square root of a polynomial over Q, when it exists.
pub fn sqrt_poly(d: &MPoly) -> Option<MPoly> {
    if d.is_zero() {
        return Some(MPoly::zero());
    }
    let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let half = Mono(
        lm.0.iter()
            .map(|&(s, e)| if e % 2 == 0 { Some((s, e / 2)) } else { None })
            .collect::<Option<Vec<_>>>()?,
    );
    let c = sqrt_rational(&lc)?;
    let mut s = MPoly::monomial(half.clone(), c.clone());
    let lead2 = (half, &c * BigRational::from_integer(BigInt::from(2)));
    for _ in 0..(4 * d.len() + 8) {
        let r = d - &(&s * &s);
        if r.is_zero() {
            return Some(s);
        }
        let (rm, rc) = r.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let qm = rm.div(&lead2.0)?;
        if qm >= lead2.0 {
            return None;
        }
        s = &s + &MPoly::monomial(qm, &rc / &lead2.1);
    }
    None
}

fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn truncate(p: &MPoly, deg: u32) -> MPoly {
    let mut out = MPoly::zero();
    for (m, c) in p.terms() {
        if m.total_degree() <= deg {
            out = &out + &MPoly::monomial(m.clone(), c.clone());
        }
    }
    out
}

fn horner(coeffs: &[MPoly], r: &MPoly, trunc: Option<u32>) -> MPoly {
    let mut acc = MPoly::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * r) + c;
        if let Some(d) = trunc {
            acc = truncate(&acc, d);
        }
    }
    acc
}

fn shift_vars(p: &MPoly, point: &[(Symbol, BigRational)], sign: i64) -> MPoly {
    let mut out = p.clone();
    for (s, v) in point {
        let repl = &MPoly::var(*s) + &MPoly::constant(v * BigRational::from_integer(sign.into()));
        out = out.substitute(*s, &repl);
    }
    out
}

/// Finds one root of the square-free `f` by specialisation and lifting.
fn lift_one_root(f: &MPoly, t: Symbol) -> Option<ParamRat> {
    let d = f.degree_in(t) as usize;
    let fc = f.coeffs_in(t);
    let a0 = fc[d].clone();
    // Monic transform: U = a0 * T, M(U) = a0^(d-1) f(U / a0).
    let mut mc: Vec<MPoly> = Vec::with_capacity(d + 1);
    for (k, c) in fc.iter().enumerate() {
        if k == d {
            mc.push(MPoly::one());
        } else {
            mc.push(c * &a0.pow((d - 1 - k) as u32));
        }
    }
    let vars: Vec<Symbol> = mc.iter().flat_map(|c| c.vars()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let bound = mc.iter().map(MPoly::total_degree).max().unwrap_or(0);
    let mut seed: u64 = 0x9e37_79b9;
    for attempt in 0..12 {
        let point: Vec<(Symbol, BigRational)> = vars
            .iter()
            .map(|s| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407 + attempt);
                let v = 3 + ((seed >> 33) % 47) as i64;
                (*s, BigRational::from_integer(BigInt::from(v)))
            })
            .collect();
        let map: HashMap<Symbol, BigRational> = point.iter().cloned().collect();
        let spec: Vec<BigRational> = mc
            .iter()
            .map(|c| c.eval(&map).as_constant().unwrap())
            .collect();
        if !rational_square_free(&spec) {
            if vars.is_empty() {
                return None;
            }
            continue;
        }
        let shifted: Vec<MPoly> = mc.iter().map(|c| shift_vars(c, &point, 1)).collect();
        let dspec: Vec<BigRational> = (1..spec.len())
            .map(|k| &spec[k] * BigRational::from_integer(BigInt::from(k)))
            .collect();
        for rho in rational_roots(&spec) {
            let g = eval_rat(&dspec, &rho);
            if g.is_zero() {
                continue;
            }
            let ginv = g.recip();
            let mut r = MPoly::constant(rho.clone());
            for _ in 0..=bound {
                let e = horner(&shifted, &r, Some(bound));
                if e.is_zero() {
                    break;
                }
                r = truncate(&(&r - &e.scale(&ginv)), bound);
            }
            let root_u = shift_vars(&r, &point, -1);
            if horner(&mc, &root_u, None).is_zero() {
                return Some(ParamRat::new(root_u, a0.clone()));
            }
        }
        if vars.is_empty() {
            return None;
        }
    }
    None
}

fn rational_square_free(c: &[BigRational]) -> bool {
    let p = UPoly::new(c.iter().cloned().map(ParamRat::rational).collect());
    UPoly::gcd(&p, &p.derivative()).deg() == 0
}

fn eval_rat(c: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for a in c.iter().rev() {
        acc = &acc * x + a;
    }
    acc
}

/// Rational roots of a univariate rational polynomial.
pub fn rational_roots(c: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = c.to_vec();
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    let mut out = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        if !out.contains(&BigRational::zero()) {
            out.push(BigRational::zero());
        }
        c.remove(0);
    }
    if c.len() <= 1 {
        return out;
    }
    // Integer coefficients, then U = lc * T makes the polynomial monic.
    let mut den = BigInt::one();
    for a in &c {
        den = num_integer::lcm(den, a.denom().clone());
    }
    let ints: Vec<BigInt> = c.iter().map(|a| (a * BigRational::from_integer(den.clone())).to_integer()).collect();
    let d = ints.len() - 1;
    let lc = ints[d].clone();
    let monic: Vec<BigInt> = (0..=d)
        .map(|k| if k == d { BigInt::one() } else { &ints[k] * num_traits::pow(lc.clone(), d - 1 - k) })
        .collect();
    let monic_rat: Vec<BigRational> = monic.iter().cloned().map(BigRational::from_integer).collect();
    let lcr = BigRational::from_integer(lc);
    let mut seen = Vec::new();
    for z in approximate_roots(&monic) {
        if z.im.abs() > 0.5 + 1e-6 * z.norm() {
            continue;
        }
        let base = z.re.round();
        if !base.is_finite() {
            continue;
        }
        for delta in [-1.0, 0.0, 1.0] {
            let cand = BigInt::from((base + delta) as i128);
            if seen.contains(&cand) {
                continue;
            }
            let cr = BigRational::from_integer(cand.clone());
            if eval_rat(&monic_rat, &cr).is_zero() {
                seen.push(cand);
                let root = &cr / &lcr;
                if !out.contains(&root) {
                    out.push(root);
                }
            }
        }
    }
    out
}

/// Complex approximations of all roots (Aberth iteration).
fn approximate_roots(c: &[BigInt]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let cf: Vec<f64> = c.iter().map(|a| a.to_f64().unwrap_or(f64::MAX)).collect();
    let lead = cf[d];
    let radius = 1.0 + cf[..d].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
            Complex64::from_polar(radius * 0.9, ang)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in cf.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}
