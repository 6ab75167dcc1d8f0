//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use katzred_core::datum::{t_add, t_euler, ExponentBlock, ExponentSet, IrregularClass, IrregularLeg, LocalDatumTable, RegularRow};
use katzred_core::expr::{parse_operator, parse_scalar, render_operator};
use katzred_core::lattice::{alpha_of, labelled_multiplicities, reflect, LatticeIndex};
use rand::Rng;
use katzred_core::local::infinity_exponents;
use katzred_core::scalar::{ParamRat, UPoly};
use katzred_core::weyl::{equiv, euler, rad_power, WeylOperator};

pub fn op(s: &str) -> WeylOperator {
    parse_operator(s).unwrap()
}

pub fn q(s: &str) -> ParamRat {
    parse_scalar(s).unwrap()
}

pub fn assert_equiv(a: &WeylOperator, b: &WeylOperator) {
    assert!(equiv(a, b).unwrap(), "{} !~ {}", render_operator(a), render_operator(b));
}

pub const GAUSS: &str = "x*(1-x)*D^2 + (c-(a+b+1)*x)*D - a*b";
pub const KUMMER: &str = "x*D^2 + (c - x)*D - a";
pub const HERMITE: &str = "D^2 - x*D + a";

/// A Heun-type operator: three regular points and a regular singular point
/// at infinity, rigidity index 0.
pub const HEUN: &str = "x*(x-1)*(x-t)*D^2 + (c*(x-1)*(x-t) + d*x*(x-t) + (a+b+1-c-d)*x*(x-1))*D + a*b*x - q";

/// Order-3 rigid operators: Euler transforms with a generic parameter `f`
/// of Kummer and Hermite.
pub fn synthetic() -> Vec<WeylOperator> {
    vec![euler(&q("2"), &q("f"), &op(KUMMER)).unwrap(), euler(&q("2"), &q("f"), &op(HERMITE)).unwrap()]
}

/// Gauss, Kummer, Hermite and the two synthetic operators.
pub fn corpus() -> Vec<WeylOperator> {
    let mut out = vec![op(GAUSS), op(KUMMER), op(HERMITE)];
    out.extend(synthetic());
    out
}

/// A series `Σ_k c_k x^{ν + k}` with integer offsets `k`.
type Series = BTreeMap<i64, ParamRat>;

fn add_term(s: &mut Series, k: i64, c: ParamRat) {
    if c.is_zero() {
        return;
    }
    let v = s.get(&k).map(|old| old + &c).unwrap_or(c);
    if v.is_zero() {
        s.remove(&k);
    } else {
        s.insert(k, v);
    }
}

/// `e^{-q} ∂ e^{q} g` with `q' = αx + β`, term by term.
fn twisted_derivative(s: &Series, nu: &ParamRat, alpha: &ParamRat, beta: &ParamRat) -> Series {
    let mut out = Series::new();
    for (&k, c) in s {
        add_term(&mut out, k - 1, c * &(nu + &ParamRat::int(k)));
        add_term(&mut out, k + 1, c * alpha);
        add_term(&mut out, k, c * beta);
    }
    out
}

/// `e^{-q} P e^{q} x^ν Σ c_s x^{-s}` computed by iterated differentiation.
fn apply_to_series(p: &WeylOperator, nu: &ParamRat, alpha: &ParamRat, beta: &ParamRat, coeffs: &[ParamRat]) -> Series {
    let mut g = Series::new();
    for (s, c) in coeffs.iter().enumerate() {
        add_term(&mut g, -(s as i64), c.clone());
    }
    let mut out = Series::new();
    let mut deriv = g;
    for a in p.coeffs() {
        for (d, ad) in a.coeffs().iter().enumerate() {
            for (&k, c) in &deriv {
                add_term(&mut out, k + d as i64, c * ad);
            }
        }
        deriv = twisted_derivative(&deriv, nu, alpha, beta);
    }
    out
}

/// Checks that `P` applied to the truncated twisted series
/// `e^{α/2 x² + βx} x^{-μ} Σ_{s ≤ trunc} c_s x^{-s}` vanishes in the top
/// `trunc + 1` orders that the truncation does not affect.
pub fn infinity_residual_vanishes(
    p: &WeylOperator,
    alpha: &ParamRat,
    beta: &ParamRat,
    mu: &ParamRat,
    coeffs: &[ParamRat],
) -> bool {
    let trunc = coeffs.len() as i64 - 1;
    let growth = if !alpha.is_zero() {
        1
    } else if !beta.is_zero() {
        0
    } else {
        -1
    };
    let top = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| a.deg() as i64 + growth * i as i64)
        .max()
        .unwrap();
    let out = apply_to_series(p, &-mu, alpha, beta, coeffs);
    out.keys().all(|&k| k < top - trunc)
}

/// Coefficients `d_0 = 1, d_1, …, d_trunc` of a solution
/// `(x-c)^ν Σ d_k (x-c)^k` at a regular point, solved order by order;
/// `None` when the leading equation fails or a resonance is inconsistent.
pub fn regular_series(p: &WeylOperator, c: &ParamRat, nu: &ParamRat, trunc: usize) -> Option<Vec<ParamRat>> {
    let shifted: Vec<UPoly> = p.coeffs().iter().map(|a| a.shift(c)).collect();
    let low = shifted
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| a.valuation_at(&ParamRat::zero()) as i64 - i as i64)
        .min()
        .unwrap();
    // g(μ, s): coefficient of t^{μ + low + s} in P t^μ.
    let g = |mu: &ParamRat, s: i64| -> ParamRat {
        let mut acc = ParamRat::zero();
        for (i, a) in shifted.iter().enumerate() {
            let d = low + s + i as i64;
            if d < 0 || d as usize >= a.coeffs().len() {
                continue;
            }
            let mut fall = ParamRat::one();
            for r in 0..i {
                fall = &fall * &(mu - &ParamRat::int(r as i64));
            }
            acc = &acc + &(&a.coeffs()[d as usize] * &fall);
        }
        acc
    };
    if !g(nu, 0).is_zero() {
        return None;
    }
    let mut d = vec![ParamRat::one()];
    for k in 1..=trunc as i64 {
        let mut rhs = ParamRat::zero();
        for (kp, dk) in d.iter().enumerate() {
            rhs = &rhs - &(dk * &g(&(nu + &ParamRat::int(kp as i64)), k - kp as i64));
        }
        let lead = g(&(nu + &ParamRat::int(k)), 0);
        if lead.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
            d.push(ParamRat::zero());
        } else {
            d.push(&rhs / &lead);
        }
    }
    Some(d)
}

/// A random valid table: 1 to 4 classes, 1 to 3 legs per class, 1 to 3
/// blocks per leg, multiplicities 1 to 5, up to 3 regular rows. Every
/// block value is a distinct parameter, so no two values differ by an
/// integer.
pub fn random_table(rng: &mut impl Rng) -> LocalDatumTable {
    let mut fresh = 0usize;
    let mut value = || {
        fresh += 1;
        q(&format!("u{}", fresh))
    };
    let mut classes = Vec::new();
    for i in 0..rng.gen_range(1..=4) {
        let mut legs = Vec::new();
        for j in 0..rng.gen_range(1..=3) {
            let blocks = (0..rng.gen_range(1..=3)).map(|_| ExponentBlock::new(value(), rng.gen_range(1..=5))).collect();
            legs.push(IrregularLeg { beta: ParamRat::int(j), exponents: ExponentSet::new(blocks) });
        }
        classes.push(IrregularClass { alpha: ParamRat::int(i), legs });
    }
    let order: usize = classes.iter().map(|c| c.mult()).sum();
    let mut rows = Vec::new();
    for c in 0..rng.gen_range(0..=3) {
        let mut left = order;
        let mut blocks = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            if left == 0 {
                break;
            }
            let m = rng.gen_range(1..=5usize.min(left));
            blocks.push(ExponentBlock::new(value(), m));
            left -= m;
        }
        if left > 0 {
            blocks.insert(0, ExponentBlock::zero(left));
        }
        rows.push(RegularRow { point: ParamRat::int(c), exponents: ExponentSet::new(blocks) });
    }
    let t = LocalDatumTable { order, rows, classes };
    t.validate().unwrap();
    t
}

/// Compares `α` of the Euler image at block 1 of leg `(i, j)` with the
/// reflection of `α_T` at the head `(i+1, j+1, 1)`; `None` when the
/// transform's precondition fails.
pub fn euler_commutes(t: &LocalDatumTable, i: usize, j: usize) -> Option<bool> {
    let (e, _) = t_euler(t, i, j, 0).ok()?;
    let (f, a) = alpha_of(t);
    let r = reflect(&f, &a, LatticeIndex::new(i + 1, j + 1, 1));
    let (_, b) = alpha_of(&e);
    Some(labelled_multiplicities(t, &r) == labelled_multiplicities(&e, &b))
}

/// Compares `α` of `t_add(T, i, -μ^i_1)` with the reflection of `α_T` at
/// the head `(0, i+1, 1)`.
pub fn addition_commutes(t: &LocalDatumTable, i: usize) -> Option<bool> {
    let mu = t.rows.get(i)?.exponents.nonzero_blocks().next()?.value.clone();
    let e = t_add(t, i, &-&mu).ok()?;
    let (f, a) = alpha_of(t);
    let r = reflect(&f, &a, LatticeIndex::new(0, i + 1, 1));
    let (_, b) = alpha_of(&e);
    Some(labelled_multiplicities(t, &r) == labelled_multiplicities(&e, &b))
}

/// A random operator of order ≤ 2 and degree ≤ 2 with small integer and
/// parameter coefficients.
pub fn random_operator(rng: &mut impl Rng) -> WeylOperator {
    let pool = ["0", "1", "-1", "2", "p", "r", "p - 1", "3/2"];
    loop {
        let order = rng.gen_range(1..=2);
        let coeffs: Vec<UPoly> = (0..=order)
            .map(|_| UPoly::new((0..=2).map(|_| q(pool[rng.gen_range(0..pool.len())])).collect()))
            .collect();
        let p = WeylOperator::new(coeffs);
        if p.order() >= 1 {
            return p;
        }
    }
}

/// Fuchsian operators with their exponent blocks at infinity, covering
/// both outcomes of the order-drop criterion.
pub fn order_drop_suite() -> Vec<(WeylOperator, usize)> {
    let g = op(GAUSS);
    let f = q("f");
    let mut out = Vec::new();
    for p in [
        g.clone(),
        euler(&q("0"), &f, &g).unwrap(),
        op(HEUN),
        rad_power(&q("0"), &f, &g).unwrap(),
        rad_power(&q("t"), &f, &g).unwrap(),
    ] {
        for k in 0..infinity_exponents(&p).unwrap().blocks.len() {
            out.push((p.clone(), k));
        }
    }
    out
}
