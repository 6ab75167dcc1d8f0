//! Local analysis: Newton polygon at infinity, characteristic exponents at
//! infinity and at regular singular points, formal series solutions, and
//! extraction of the table of local datum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::datum::{
    ExponentBlock, ExponentSet, IrregularClass, IrregularLeg, LocalDatumTable, RegularRow,
};
use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::scalar::{falling, small_roots, ParamRat, UPoly};
use crate::weyl::{reduced_rep, shift_args, TwistSpec, WeylOperator};

/// One edge of the Newton polygon.
#[derive(Clone, PartialEq, Debug)]
pub struct Edge {
    /// Irregularity rank read off the edge (0, 1 or 2 for supported input).
    pub slope: BigRational,
    /// Horizontal length.
    pub length: usize,
    /// Leftmost abscissa covered by the edge.
    pub start: usize,
}

/// Newton polygon at infinity built from the points `(i, deg a_i - i)`.
#[derive(Clone, PartialEq, Debug)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
    /// Edges in increasing abscissa, hence increasing slope.
    pub edges: Vec<Edge>,
}

impl NewtonPolygon {
    /// Total length of edges with the given integer slope.
    pub fn length_of_slope(&self, s: i64) -> usize {
        let s = BigRational::from_integer(BigInt::from(s));
        self.edges.iter().filter(|e| e.slope == s).map(|e| e.length).sum()
    }

    pub fn edge_with_slope(&self, s: i64) -> Option<&Edge> {
        let s = BigRational::from_integer(BigInt::from(s));
        self.edges.iter().find(|e| e.slope == s)
    }
}

/// Upper hull of the points `(i, deg a_i - i)`, closed to the left by a
/// horizontal edge.
pub fn newton_polygon(p: &WeylOperator) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let pts: Vec<(i64, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i as i64, a.deg() as i64 - i as i64))
        .collect();
    let mut cur = *pts.last().unwrap();
    let mut rev_vertices = vec![cur];
    let mut rev_edges = Vec::new();
    loop {
        let mut best: Option<(BigRational, (i64, i64))> = None;
        for &(u, v) in pts.iter().filter(|(u, _)| *u < cur.0) {
            let q = BigRational::new(BigInt::from(v - cur.1), BigInt::from(cur.0 - u));
            let better = match &best {
                None => true,
                Some((bq, (bu, _))) => q > *bq || (q == *bq && u < *bu),
            };
            if better {
                best = Some((q, (u, v)));
            }
        }
        match best {
            Some((q, next)) if q.is_positive() => {
                rev_edges.push(Edge { slope: q, length: (cur.0 - next.0) as usize, start: next.0 as usize });
                rev_vertices.push(next);
                cur = next;
            }
            _ => {
                if cur.0 > 0 {
                    rev_edges.push(Edge { slope: BigRational::zero(), length: cur.0 as usize, start: 0 });
                    rev_vertices.push((0, cur.1));
                }
                break;
            }
        }
    }
    rev_vertices.reverse();
    rev_edges.reverse();
    Ok(NewtonPolygon { vertices: rev_vertices, edges: rev_edges })
}

/// Characteristic data of `P = Σ x^{ρ-s} P_s(∂)` at infinity.
#[derive(Clone, PartialEq, Debug)]
pub struct InfinityExpansion {
    pub rho: usize,
    /// `p_k(λ, 0)` for `k = 0..=K`, as polynomials in λ.
    pub char_polys: Vec<UPoly>,
    /// First index with `p_m(λ, 0) ≠ 0`.
    pub m: usize,
}

impl InfinityExpansion {
    pub fn p(&self, k: usize) -> UPoly {
        self.char_polys.get(k).cloned().unwrap_or_else(UPoly::zero)
    }

    /// The characteristic polynomial `p_m(λ - m, 0)` in λ.
    pub fn characteristic(&self) -> UPoly {
        self.p(self.m).shift(&ParamRat::int(-(self.m as i64)))
    }
}

/// Coefficient of `x^e ∂^j` in `p`.
fn coeff_xd(p: &WeylOperator, e: i64, j: usize) -> ParamRat {
    if e < 0 {
        return ParamRat::zero();
    }
    p.coeff(j).coeff(e as usize)
}

/// `(λ + a)_r` as a polynomial in λ.
fn rising_poly(a: i64, r: usize) -> UPoly {
    let mut acc = UPoly::one();
    for t in 0..r {
        acc = &acc * &UPoly::linear_root(&ParamRat::int(-(a + t as i64)));
    }
    acc
}

/// `p_k(λ, 0)` for `k = 0..=extra + m`, where `m` is found on the way.
pub fn infinity_expansion_to(p: &WeylOperator, extra: usize) -> Result<InfinityExpansion> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let rho = p.degree();
    let pk = |k: usize| -> UPoly {
        let mut acc = UPoly::zero();
        for i in 0..=k {
            let c = coeff_xd(p, rho as i64 - i as i64, k - i);
            if !c.is_zero() {
                acc = &acc + &rising_poly(i as i64 + 1, k - i).scale(&c);
            }
        }
        acc
    };
    let mut polys = Vec::new();
    let limit = rho + p.order() + 1;
    let mut m = None;
    let mut k = 0;
    loop {
        let q = pk(k);
        if m.is_none() && !q.is_zero() {
            m = Some(k);
        }
        polys.push(q);
        if let Some(m) = m {
            if k >= m + extra {
                break;
            }
        } else if k > limit {
            return Err(Error::ZeroOperator);
        }
        k += 1;
    }
    Ok(InfinityExpansion { rho, char_polys: polys, m: m.unwrap() })
}

/// `p_k(λ, 0)` up to a depth covering the exponent checks of order `ord P`.
pub fn infinity_expansion(p: &WeylOperator) -> Result<InfinityExpansion> {
    infinity_expansion_to(p, p.order())
}

/// Groups roots into blocks of consecutive values `[e]_len`.
fn group_chains(roots: &[(ParamRat, usize)], place: &str) -> Result<Vec<(ParamRat, usize)>> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members: Vec<(i64, usize)> = Vec::new();
        for j in i..roots.len() {
            if used[j] {
                continue;
            }
            if let Some(d) = (&roots[j].0 - &roots[i].0).as_i64() {
                used[j] = true;
                members.push((d, roots[j].1));
            }
        }
        members.sort();
        let base = members[0].0;
        for (idx, (d, mult)) in members.iter().enumerate() {
            if *mult != 1 {
                return Err(Error::NonSemiSimple(format!(
                    "repeated exponent {} at {}",
                    render_scalar(&(&roots[i].0 + &ParamRat::int(*d))),
                    place
                )));
            }
            if *d != base + idx as i64 {
                return Err(Error::NonSemiSimple(format!(
                    "exponents at {} differ by integers without forming a consecutive block",
                    place
                )));
            }
        }
        out.push((&roots[i].0 + &ParamRat::int(base), members.len()));
    }
    Ok(out)
}

fn split_roots(p: &UPoly, what: &str) -> Result<Vec<(ParamRat, usize)>> {
    let s = small_roots(p);
    if !s.splits() {
        return Err(Error::NonSplitting(format!("{} has a factor without roots in Q(parameters)", what)));
    }
    Ok(s.roots)
}

fn sort_blocks(blocks: &mut [ExponentBlock]) {
    blocks.sort_by(|a, b| {
        b.is_zero_block
            .cmp(&a.is_zero_block)
            .then(b.mult.cmp(&a.mult))
            .then_with(|| render_scalar(&a.value).cmp(&render_scalar(&b.value)))
    });
}

/// Semi-simple exponents of the slope-0 part at infinity; a block `[μ]_m`
/// stands for solutions `x^{-μ-j}`, `j < m`.
pub fn infinity_exponents(p: &WeylOperator) -> Result<ExponentSet> {
    let poly = newton_polygon(p)?;
    let len0 = poly.length_of_slope(0);
    if len0 == 0 {
        return Ok(ExponentSet::default());
    }
    let exp = infinity_expansion_to(p, p.order())?;
    let chi = exp.characteristic();
    if chi.deg() != len0 {
        return Err(Error::NonSemiSimple(format!(
            "characteristic degree {} differs from slope-0 length {}",
            chi.deg(),
            len0
        )));
    }
    let roots: Vec<(ParamRat, usize)> = split_roots(&chi, "the characteristic equation at infinity")?
        .into_iter()
        .map(|(l, k)| (-&l, k))
        .collect();
    let chains = group_chains(&roots, "infinity")?;
    let mut blocks = Vec::new();
    for (e, len) in chains {
        for j in 0..len {
            for k in exp.m..exp.m + len - j {
                let arg = &(&-&e - &ParamRat::int(j as i64)) - &ParamRat::int(k as i64);
                if !exp.p(k).eval(&arg).is_zero() {
                    return Err(Error::NonSemiSimple(format!(
                        "block [{}]_{} at infinity carries logarithms",
                        render_scalar(&e),
                        len
                    )));
                }
            }
        }
        blocks.push(ExponentBlock::new(e, len));
    }
    sort_blocks(&mut blocks);
    Ok(ExponentSet::new(blocks))
}

/// Truncated formal solution `e^{p(x)} x^{-exponent} Σ c_s x^{-s}`.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalSeries {
    pub exponent: ParamRat,
    pub twist: TwistSpec,
    pub coeffs: Vec<ParamRat>,
    pub trunc: usize,
}

/// Solves the Frobenius recurrence at infinity for the exponent `mu`.
///
/// At a resonant step whose right-hand side vanishes, the free coefficient
/// is set to zero.
pub fn frobenius_series(p: &WeylOperator, mu: &ParamRat, trunc: usize) -> Result<FormalSeries> {
    let exp = infinity_expansion_to(p, trunc)?;
    let m = exp.m;
    let mut c = vec![ParamRat::one()];
    for s in 1..=trunc {
        let arg = &(&-mu - &ParamRat::int(m as i64)) - &ParamRat::int(s as i64);
        let mut rhs = ParamRat::zero();
        for k in m + 1..=m + s {
            let ck = &c[m + s - k];
            if !ck.is_zero() {
                rhs = &rhs - &(ck * &exp.p(k).eval(&arg));
            }
        }
        let lead = exp.p(m).eval(&arg);
        if lead.is_zero() {
            if !rhs.is_zero() {
                return Err(Error::ResonantRecurrence { step: s });
            }
            c.push(ParamRat::zero());
        } else {
            c.push(&rhs / &lead);
        }
    }
    Ok(FormalSeries { exponent: mu.clone(), twist: TwistSpec::zero(), coeffs: c, trunc })
}

/// Formal solution with exponential factor `e^{α/2 x² + β x}`.
pub fn frobenius_series_twisted(
    p: &WeylOperator,
    alpha: &ParamRat,
    beta: &ParamRat,
    mu: &ParamRat,
    trunc: usize,
) -> Result<FormalSeries> {
    let q = shift_args(p, alpha, beta);
    let mut s = frobenius_series(&q, mu, trunc)?;
    s.twist = TwistSpec::new(alpha.clone(), beta.clone());
    Ok(s)
}

/// Normalised coefficients `b_k(x)` of `P` at `c` with
/// `P (x-c)^ν = (x-c)^{ν+s} Σ b_k(x) ν(ν-1)…(ν-k+1)`, shifted to powers of `x-c`.
fn regular_normal_form(p: &WeylOperator, c: &ParamRat) -> Result<Vec<UPoly>> {
    let n = p.order();
    let vals: Vec<Option<i64>> = p
        .coeffs()
        .iter()
        .map(|a| (!a.is_zero()).then(|| a.valuation_at(c) as i64))
        .collect();
    let s = vals.iter().enumerate().filter_map(|(k, v)| v.map(|v| v - k as i64)).min().unwrap();
    if vals[n].unwrap() - n as i64 != s {
        return Err(Error::NotRegularPoint(render_scalar(c)));
    }
    let mut out = Vec::with_capacity(n + 1);
    for (k, a) in p.coeffs().iter().enumerate() {
        let sh = a.shift(c);
        let e = k as i64 + s;
        let v = if sh.is_zero() {
            UPoly::zero()
        } else if e >= 0 {
            UPoly::new(sh.coeffs()[e as usize..].to_vec())
        } else {
            let mut v = vec![ParamRat::zero(); (-e) as usize];
            v.extend(sh.coeffs().iter().cloned());
            UPoly::new(v)
        };
        out.push(v);
    }
    Ok(out)
}

/// Power series quotient `a / b` to `len` terms; `b(0) ≠ 0`.
fn series_div(a: &UPoly, b: &UPoly, len: usize) -> Vec<ParamRat> {
    let inv0 = b.coeff(0).recip();
    let mut q: Vec<ParamRat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = a.coeff(k);
        for j in 1..=k {
            let bj = b.coeff(j);
            if !bj.is_zero() {
                acc = &acc - &(&bj * &q[k - j]);
            }
        }
        q.push(&acc * &inv0);
    }
    q
}

/// Taylor coefficients `f^c_k(ν)`, `k = 0..=kmax`, of the normalised
/// indicial function at the regular singular point `c`.
pub fn regular_char(p: &WeylOperator, c: &ParamRat, kmax: usize) -> Result<Vec<UPoly>> {
    let b = regular_normal_form(p, c)?;
    let n = p.order();
    let nu = UPoly::x();
    let fall: Vec<UPoly> = (0..=n)
        .map(|k| {
            let mut acc = UPoly::one();
            for t in 0..k {
                acc = &acc * &(&nu - &UPoly::constant(ParamRat::int(t as i64)));
            }
            acc
        })
        .collect();
    let mut f = vec![UPoly::zero(); kmax + 1];
    for (k, bk) in b.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        let q = series_div(bk, &b[n], kmax + 1);
        for (t, qt) in q.iter().enumerate() {
            if !qt.is_zero() {
                f[t] = &f[t] + &fall[k].scale(qt);
            }
        }
    }
    Ok(f)
}

/// Semi-simple exponents at a regular singular point; `[μ]_m` stands for
/// solutions `(x-c)^{μ+j}`, `j < m`.
///
/// A block is accepted when `f_k(μ + j) = 0` for `j < m`, `k < m - j`,
/// which lets the recurrence for `(x-c)^{μ+j}` skip the next `m - j - 1`
/// powers.
pub fn regular_exponents(p: &WeylOperator, c: &ParamRat) -> Result<ExponentSet> {
    let n = p.order();
    let f = regular_char(p, c, n)?;
    let place = render_scalar(c);
    let roots = split_roots(&f[0], &format!("the indicial equation at {}", place))?;
    let chains = group_chains(&roots, &place)?;
    let mut blocks = Vec::new();
    for (e, len) in chains {
        for j in 0..len {
            for k in 0..len - j {
                let arg = &e + &ParamRat::int(j as i64);
                if !f[k].eval(&arg).is_zero() {
                    return Err(Error::NonSemiSimple(format!(
                        "block [{}]_{} at {} carries logarithms",
                        render_scalar(&e),
                        len,
                        place
                    )));
                }
            }
        }
        let is_zero = e.is_zero();
        blocks.push(ExponentBlock { value: e, mult: len, is_zero_block: is_zero });
    }
    sort_blocks(&mut blocks);
    Ok(ExponentSet::new(blocks))
}

/// `Q` with `P = (x-c)^m Q`, when every coefficient is divisible.
pub fn power_divisibility(p: &WeylOperator, c: &ParamRat, m: usize) -> Option<WeylOperator> {
    let d = UPoly::linear_root(c).pow(m);
    let mut out = Vec::with_capacity(p.coeffs().len());
    for a in p.coeffs() {
        out.push(a.div_exact(&d)?);
    }
    Some(WeylOperator::new(out))
}

/// Coefficient of `x^e` in `a_i`, zero for negative `e`.
fn coeff_at(p: &WeylOperator, i: usize, e: i64) -> ParamRat {
    coeff_xd(p, e, i)
}

/// Nonzero roots of an edge polynomial `Σ_{i=start}^{end} c_i t^i`.
fn edge_roots(p: &WeylOperator, start: usize, end: usize, x_exp: impl Fn(usize) -> i64, what: &str) -> Result<Vec<(ParamRat, usize)>> {
    let coeffs: Vec<ParamRat> = (start..=end).map(|i| coeff_at(p, i, x_exp(i))).collect();
    let poly = UPoly::new(coeffs);
    let roots = split_roots(&poly, what)?;
    let total: usize = roots.iter().map(|r| r.1).sum();
    if total != end - start {
        return Err(Error::NonSplitting(format!("{} does not account for the edge length", what)));
    }
    Ok(roots)
}

fn check_slopes(poly: &NewtonPolygon) -> Result<()> {
    for e in &poly.edges {
        let ok = e.slope.is_integer() && e.slope.to_integer().to_i64().is_some_and(|s| (0..=2).contains(&s));
        if !ok {
            return Err(Error::SlopeOutOfRange(crate::scalar::render::render_rational(&e.slope)));
        }
    }
    Ok(())
}

fn analyse_class(p: &WeylOperator, alpha: &ParamRat, mult: usize) -> Result<IrregularClass> {
    let q = shift_args(p, alpha, &ParamRat::zero());
    let poly = newton_polygon(&q)?;
    check_slopes(&poly)?;
    let len01 = poly.length_of_slope(0) + poly.length_of_slope(1);
    if len01 != mult {
        return Err(Error::NonSplitting(format!(
            "class {} has multiplicity {} but its twisted polygon has {} non-quadratic directions",
            render_scalar(alpha),
            mult,
            len01
        )));
    }
    let mut betas: Vec<(ParamRat, usize)> = Vec::new();
    let len0 = poly.length_of_slope(0);
    if len0 > 0 {
        betas.push((ParamRat::zero(), len0));
    }
    if let Some(e) = poly.edge_with_slope(1) {
        let end = e.start + e.length;
        let vb = q.coeff(end).deg() as i64 - end as i64;
        let xe = vb + end as i64;
        betas.extend(edge_roots(&q, e.start, end, |_| xe, "the slope-1 edge polynomial")?);
    }
    let legs = map_maybe_parallel(&betas, |(beta, lm)| -> Result<IrregularLeg> {
        let r = shift_args(p, alpha, beta);
        let exps = infinity_exponents(&r)?;
        if exps.total() != *lm {
            return Err(Error::NonSemiSimple(format!(
                "leg ({}, {}) has multiplicity {} but {} exponents",
                render_scalar(alpha),
                render_scalar(beta),
                lm,
                exps.total()
            )));
        }
        Ok(IrregularLeg { beta: beta.clone(), exponents: exps })
    })?;
    Ok(IrregularClass { alpha: alpha.clone(), legs })
}

#[cfg(feature = "parallel")]
fn map_maybe_parallel<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_maybe_parallel<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    items.iter().map(f).collect()
}

/// The table of local datum of `P`.
pub fn local_datum(p: &WeylOperator) -> Result<LocalDatumTable> {
    let p = reduced_rep(p)?;
    let n = p.order();
    if n == 0 {
        return Err(Error::Precondition("operator of order 0 has no local datum".into()));
    }
    let poly = newton_polygon(&p)?;
    check_slopes(&poly)?;

    let lead = p.leading();
    let points = if lead.deg() == 0 { Vec::new() } else { split_roots(&lead, "the leading coefficient")? };
    let mut rows = map_maybe_parallel(&points, |(c, _)| -> Result<RegularRow> {
        Ok(RegularRow { point: c.clone(), exponents: regular_exponents(&p, c)? })
    })?;
    rows.sort_by_key(|r| render_scalar(&r.point));

    let mut alphas: Vec<(ParamRat, usize)> = Vec::new();
    match poly.edge_with_slope(2) {
        Some(e) => {
            if e.start > 0 {
                alphas.push((ParamRat::zero(), e.start));
            }
            let dn = p.coeff(n).deg() as i64 - n as i64;
            let nn = n as i64;
            alphas.extend(edge_roots(&p, e.start, n, |i| dn + 2 * nn - i as i64, "the slope-2 edge polynomial")?);
        }
        None => alphas.push((ParamRat::zero(), n)),
    }
    let mut classes = map_maybe_parallel(&alphas, |(a, m)| analyse_class(&p, a, *m))?;
    for c in &mut classes {
        c.legs.sort_by_key(|l| render_scalar(&l.beta));
    }
    classes.sort_by_key(|c| render_scalar(&c.alpha));

    let total: usize = classes.iter().map(IrregularClass::mult).sum();
    if total != n {
        return Err(Error::NonSplitting(format!("exponential factors cover {} of {} directions", total, n)));
    }
    Ok(LocalDatumTable { order: n, rows, classes })
}

/// `P` applied to `x^{-e} Σ c_s x^{-s}`, as coefficients of `x^{-e+D-t}`
/// where `D = max_i (deg a_i - i)`; only `t ≤ trunc` are reliable.
pub fn series_residual(p: &WeylOperator, s: &FormalSeries) -> Vec<ParamRat> {
    let q = shift_args(p, &s.twist.quad, &s.twist.lin);
    let top = q
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| a.deg() as i64 - i as i64)
        .max()
        .unwrap_or(0);
    let mut out = vec![ParamRat::zero(); s.trunc + 1];
    for (sidx, c) in s.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let nu = &-&s.exponent - &ParamRat::int(sidx as i64);
        for (i, a) in q.coeffs().iter().enumerate() {
            let fi = falling(&nu, i);
            for (d, ad) in a.coeffs().iter().enumerate() {
                if ad.is_zero() {
                    continue;
                }
                // power: nu - i + d = -e + top - t
                let t = top - (d as i64 - i as i64) + sidx as i64;
                if (0..=s.trunc as i64).contains(&t) {
                    out[t as usize] = &out[t as usize] + &(&(c * ad) * &fi);
                }
            }
        }
    }
    out
}
