//! JSON records for operators, tables, root vectors and scripts. Every
//! scalar is an exact string in the expression syntax.

use katzred_core::datum::{ExponentSet, LocalDatumTable};
use katzred_core::expr::{render_operator, render_scalar};
use katzred_core::lattice::{CartanForm, Classification, LatticeIndex, RootVector};
use katzred_core::local::NewtonPolygon;
use katzred_core::weyl::WeylOperator;
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

/// `[[i, "a_i(x)"], ...]` for the non-zero coefficients of `∂^i`.
pub fn operator(p: &WeylOperator) -> Value {
    let terms: Vec<Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| json!([i, render_operator(&WeylOperator::from_poly(a.clone()))]))
        .collect();
    Value::Array(terms)
}

fn blocks(s: &ExponentSet) -> Value {
    s.blocks
        .iter()
        .map(|b| json!({ "value": render_scalar(&b.value), "mult": b.mult, "zero_block": b.is_zero_block }))
        .collect()
}

pub fn table(t: &LocalDatumTable) -> Value {
    let rows: Vec<Value> =
        t.rows.iter().map(|r| json!({ "point": render_scalar(&r.point), "blocks": blocks(&r.exponents) })).collect();
    let classes: Vec<Value> = t
        .classes
        .iter()
        .map(|c| {
            let legs: Vec<Value> =
                c.legs.iter().map(|l| json!({ "beta": render_scalar(&l.beta), "blocks": blocks(&l.exponents) })).collect();
            json!({ "alpha": render_scalar(&c.alpha), "legs": legs })
        })
        .collect();
    json!({ "order": t.order, "rows": rows, "classes": classes })
}

pub fn newton_polygon(poly: &NewtonPolygon) -> Value {
    poly.edges.iter().map(|e| json!({ "slope": e.slope.to_string(), "length": e.length })).collect()
}

fn index(ix: &LatticeIndex) -> Value {
    json!([ix.class, ix.leg, ix.depth])
}

pub fn root(f: &CartanForm, a: &RootVector) -> Value {
    let nodes: Vec<Value> = f.indices.iter().map(|ix| json!({ "index": index(ix), "coeff": a.get(*ix) })).collect();
    let edges: Vec<Value> = f
        .adjacency()
        .iter()
        .map(|(x, y, m)| json!({ "from": index(x), "to": index(y), "multiplicity": m }))
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

pub fn classification(c: &Classification) -> Value {
    let steps = |s: &[LatticeIndex]| -> Value { s.iter().map(index).collect() };
    match c {
        Classification::RealOrbit { simple, steps: s } => {
            json!({ "kind": "real_orbit", "simple_root": index(simple), "reflections": steps(s) })
        }
        Classification::VMember { reached, steps: s } => {
            json!({ "kind": "v_member", "reached": reached.to_string(), "reflections": steps(s) })
        }
        Classification::ImaginaryRoot { certificate, steps: s } => {
            json!({ "kind": "imaginary_root", "certificate": certificate.to_string(), "reflections": steps(s) })
        }
        Classification::NotRootLike { reached, steps: s } => {
            json!({ "kind": "not_root_like", "reached": reached.to_string(), "reflections": steps(s) })
        }
    }
}

/// A script as its lines in the script file format.
pub fn script(text: &str) -> Value {
    text.lines().map(|l| Value::String(l.to_string())).collect()
}
