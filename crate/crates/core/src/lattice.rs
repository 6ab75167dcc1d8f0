//! The root lattice attached to the shape of a table: basis vectors
//! `v^{ij}_k`, the symmetric Cartan pairing, the vector `α_P` of tail sums,
//! simple reflections and classification by height descent.

use std::collections::BTreeMap;
use std::fmt;

use crate::datum::LocalDatumTable;
use crate::error::{Error, Result};

/// Basis label `(i, j, k)`: class `i` (0 for regular rows, `1..=r` for the
/// irregular classes), leg or row `j ≥ 1`, depth `k ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeIndex {
    pub class: usize,
    pub leg: usize,
    pub depth: usize,
}

impl LatticeIndex {
    pub fn new(class: usize, leg: usize, depth: usize) -> LatticeIndex {
        LatticeIndex { class, leg, depth }
    }

    pub fn is_head(&self) -> bool {
        self.depth == 1
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.class, self.leg, self.depth)
    }
}

/// Pairing of two basis vectors.
pub fn pairing(a: LatticeIndex, b: LatticeIndex) -> i64 {
    if a == b {
        2
    } else if a.class == b.class && a.leg == b.leg && a.depth.abs_diff(b.depth) == 1 {
        -1
    } else if a.is_head() && b.is_head() && a.class != b.class {
        -1
    } else {
        0
    }
}

/// The index set of a table shape with its pairing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanForm {
    pub indices: Vec<LatticeIndex>,
}

/// Integer combination of basis vectors with finite support.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RootVector {
    pub coeffs: BTreeMap<LatticeIndex, i64>,
}

impl RootVector {
    pub fn basis(at: LatticeIndex) -> RootVector {
        RootVector { coeffs: BTreeMap::from([(at, 1)]) }
    }

    pub fn get(&self, at: LatticeIndex) -> i64 {
        self.coeffs.get(&at).copied().unwrap_or(0)
    }

    fn set(&mut self, at: LatticeIndex, v: i64) {
        if v == 0 {
            self.coeffs.remove(&at);
        } else {
            self.coeffs.insert(at, v);
        }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn support(&self) -> Vec<LatticeIndex> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Multiplicities `c_k - c_{k+1}` per `(class, leg)`, zeros dropped.
    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), Vec<i64>> {
        let mut chains: BTreeMap<(usize, usize), BTreeMap<usize, i64>> = BTreeMap::new();
        for (ix, c) in &self.coeffs {
            chains.entry((ix.class, ix.leg)).or_default().insert(ix.depth, *c);
        }
        chains
            .into_iter()
            .map(|(key, chain)| {
                let top = chain.keys().max().copied().unwrap_or(0);
                let mults: Vec<i64> = (1..=top)
                    .map(|k| chain.get(&k).copied().unwrap_or(0) - chain.get(&(k + 1)).copied().unwrap_or(0))
                    .filter(|&m| m != 0)
                    .collect();
                (key, mults)
            })
            .filter(|(_, m)| !m.is_empty())
            .collect()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(ix, c)| format!("{}*v{}", c, ix)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl CartanForm {
    pub fn contains(&self, at: LatticeIndex) -> bool {
        self.indices.binary_search(&at).is_ok()
    }

    fn check(&self, a: &RootVector) -> Result<()> {
        match a.coeffs.keys().find(|ix| !self.contains(**ix)) {
            Some(ix) => Err(Error::IndexMismatch(format!("{} is not a basis index of this form", ix))),
            None => Ok(()),
        }
    }

    /// `(a, v)` for a basis vector `v`.
    pub fn pair_with(&self, a: &RootVector, at: LatticeIndex) -> i64 {
        a.coeffs.iter().map(|(ix, c)| c * pairing(*ix, at)).sum()
    }

    /// Pairs of adjacent nodes with edge multiplicity `-pairing`.
    pub fn adjacency(&self) -> Vec<(LatticeIndex, LatticeIndex, i64)> {
        let mut out = Vec::new();
        for (a, x) in self.indices.iter().enumerate() {
            for y in &self.indices[a + 1..] {
                let p = pairing(*x, *y);
                if p != 0 {
                    out.push((*x, *y, -p));
                }
            }
        }
        out
    }
}

/// The basis of the table shape and `α_P`, whose coefficients are tail sums
/// of block multiplicities (regular zero blocks excluded).
pub fn alpha_of(t: &LocalDatumTable) -> (CartanForm, RootVector) {
    let mut indices = Vec::new();
    let mut alpha = RootVector::default();
    let mut push_chain = |class: usize, leg: usize, mults: Vec<usize>| {
        let mut tail: i64 = mults.iter().map(|&m| m as i64).sum();
        for (k, m) in mults.iter().enumerate() {
            let ix = LatticeIndex::new(class, leg, k + 1);
            indices.push(ix);
            alpha.set(ix, tail);
            tail -= *m as i64;
        }
    };
    for (j, r) in t.rows.iter().enumerate() {
        push_chain(0, j + 1, r.exponents.nonzero_blocks().map(|b| b.mult).collect());
    }
    for (i, c) in t.classes.iter().enumerate() {
        for (j, l) in c.legs.iter().enumerate() {
            push_chain(i + 1, j + 1, l.exponents.blocks.iter().map(|b| b.mult).collect());
        }
    }
    indices.sort();
    (CartanForm { indices }, alpha)
}

/// The symmetric bilinear form.
pub fn inner(f: &CartanForm, a: &RootVector, b: &RootVector) -> Result<i64> {
    f.check(a)?;
    f.check(b)?;
    Ok(a.coeffs.iter().map(|(ix, c)| c * f.pair_with(b, *ix)).sum())
}

/// The simple reflection `a ↦ a - (a, v) v`.
pub fn reflect(f: &CartanForm, a: &RootVector, at: LatticeIndex) -> RootVector {
    let p = f.pair_with(a, at);
    let mut out = a.clone();
    out.set(at, a.get(at) - p);
    out
}

/// Outcome of height descent.
#[derive(Clone, PartialEq, Debug)]
pub enum Classification {
    /// Reached the simple root at the given node.
    RealOrbit { simple: LatticeIndex, steps: Vec<LatticeIndex> },
    /// Reached a member of `V`.
    VMember { reached: RootVector, steps: Vec<LatticeIndex> },
    /// Reached a vector with connected support pairing non-positively with
    /// every simple root.
    ImaginaryRoot { certificate: RootVector, steps: Vec<LatticeIndex> },
    /// Descent left the positive cone or stopped on disconnected support.
    NotRootLike { reached: RootVector, steps: Vec<LatticeIndex> },
}

/// Membership in `V`: a single irregular head `n v^{i'j'}_1` plus regular
/// chains with `n ≥ m_1 > m_2 > … > 0`.
pub fn in_v(a: &RootVector) -> bool {
    let irregular: Vec<(&LatticeIndex, &i64)> = a.coeffs.iter().filter(|(ix, _)| ix.class != 0).collect();
    let [(head, &n)] = irregular.as_slice() else { return false };
    if !head.is_head() || n <= 0 {
        return false;
    }
    let mut rows: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for (ix, c) in a.coeffs.iter().filter(|(ix, _)| ix.class == 0) {
        rows.entry(ix.leg).or_default().insert(ix.depth, *c);
    }
    rows.values().all(|chain| {
        let mut prev = n + 1;
        for (k, (&depth, &c)) in chain.iter().enumerate() {
            if depth != k + 1 || c <= 0 || c >= prev || (k == 0 && c > n) {
                return false;
            }
            prev = c;
        }
        true
    })
}

fn connected(support: &[LatticeIndex]) -> bool {
    if support.is_empty() {
        return false;
    }
    let mut seen = vec![false; support.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for (v, s) in support.iter().enumerate() {
            if !seen[v] && pairing(support[u], *s) != 0 {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Applies height-decreasing reflections until a terminal pattern appears.
///
/// Each step reflects at the node with the largest positive pairing; ties go
/// to the deeper node, then to the smallest index.
pub fn classify(f: &CartanForm, a: &RootVector) -> Classification {
    let mut cur = a.clone();
    let mut steps = Vec::new();
    loop {
        if in_v(&cur) {
            return Classification::VMember { reached: cur, steps };
        }
        if cur.coeffs.len() == 1 && cur.coeffs.values().all(|&c| c == 1) {
            let simple = *cur.coeffs.keys().next().unwrap();
            return Classification::RealOrbit { simple, steps };
        }
        if !cur.is_nonnegative() || cur.is_zero() {
            return Classification::NotRootLike { reached: cur, steps };
        }
        let best = f
            .indices
            .iter()
            .map(|ix| (f.pair_with(&cur, *ix), *ix))
            .filter(|(p, _)| *p > 0)
            .max_by(|x, y| x.0.cmp(&y.0).then(x.1.depth.cmp(&y.1.depth)).then(y.1.cmp(&x.1)));
        match best {
            Some((_, ix)) => {
                cur = reflect(f, &cur, ix);
                steps.push(ix);
            }
            None => {
                return if connected(&cur.support()) {
                    Classification::ImaginaryRoot { certificate: cur, steps }
                } else {
                    Classification::NotRootLike { reached: cur, steps }
                };
            }
        }
    }
}

/// Text listing of nodes with coefficients and adjacency pairs.
pub fn render_dynkin(f: &CartanForm, a: &RootVector) -> String {
    let mut out = String::from("nodes:");
    for ix in &f.indices {
        out.push_str(&format!(" {}={}", ix, a.get(*ix)));
    }
    out.push_str("\nedges:");
    for (x, y, m) in f.adjacency() {
        out.push_str(&format!(" {}-{}", x, y));
        if m != 1 {
            out.push_str(&format!("x{}", m));
        }
    }
    out.push('\n');
    out
}

/// Block multiplicities of `a` keyed by the labels of `t`: `("reg", c)` for
/// rows and `(α, β)` for legs; zero multiplicities are dropped.
pub fn labelled_multiplicities(t: &LocalDatumTable, a: &RootVector) -> BTreeMap<(String, String), Vec<i64>> {
    let key = |q: &crate::scalar::ParamRat| crate::expr::render_scalar(q);
    a.multiplicities()
        .into_iter()
        .map(|((class, leg), m)| {
            let label = if class == 0 {
                ("reg".to_string(), key(&t.rows[leg - 1].point))
            } else {
                let c = &t.classes[class - 1];
                (key(&c.alpha), key(&c.legs[leg - 1].beta))
            };
            (label, m)
        })
        .collect()
}
