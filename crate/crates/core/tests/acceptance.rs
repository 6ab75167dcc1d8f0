//! Acceptance criteria 1 to 9, one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use common::*;
use katzred_core::datum::{rigidity_index, t_add, t_euler, t_laplace};
use katzred_core::engine::*;
use katzred_core::expr::render_operator;
use katzred_core::lattice::{alpha_of, classify, inner, Classification};
use katzred_core::local::{frobenius_series_twisted, local_datum};
use katzred_core::scalar::ParamRat;
use katzred_core::weyl::{ade, equiv, euler, laplace, rad_power, reduced_rep, twisted_euler, TwistSpec, WeylOperator};
use katzred_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ok<T>(r: katzred_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{}: {}", what, e))
}

fn same(a: &WeylOperator, b: &WeylOperator) -> Result<bool, String> {
    ok(equiv(a, b), "equivalence test")
}

fn intro_identities() -> Outcome {
    let cases = [
        (GAUSS, "b - 1", "x*(1-x)*D + ((c-b) - (a-b+1)*x)"),
        (KUMMER, "a - 1", "x*D + ((c-a) - x)"),
        (HERMITE, "-a - 1", "D - x"),
    ];
    let mut slowest = Duration::ZERO;
    for (src, f, target) in cases {
        let start = Instant::now();
        let image = ok(euler(&q("0"), &q(f), &op(src)), src)?;
        check(same(&image, &op(target))?, || format!("E(0, {}) {} is {}", f, src, render_operator(&image)))?;
        let took = start.elapsed();
        check(took < Duration::from_secs(1), || format!("{} took {:?}", src, took))?;
        slowest = slowest.max(took);
    }
    Ok(format!("3 identities, slowest {:?}", slowest))
}

fn index_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let t = random_table(&mut rng);
        let (f, a) = alpha_of(&t);
        let form = ok(inner(&f, &a, &a), "inner")?;
        check(form == rigidity_index(&t), || format!("(a, a) = {} but idx = {}", form, rigidity_index(&t)))?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(5), || format!("took {:?}", took))?;
    Ok(format!("200 tables in {:?}", took))
}

fn reflection_commutation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut eulers, mut adds) = (0, 0);
    let mut draws = 0;
    while (eulers < 100 || adds < 100) && draws < 10_000 {
        draws += 1;
        let t = random_table(&mut rng);
        let i = rng.gen_range(0..t.classes.len());
        let j = rng.gen_range(0..t.classes[i].legs.len());
        if let Some(agree) = euler_commutes(&t, i, j) {
            check(agree, || format!("Euler at ({}, {}) of {:?}", i, j, t))?;
            eulers += 1;
        }
        if !t.rows.is_empty() {
            let r = rng.gen_range(0..t.rows.len());
            if let Some(agree) = addition_commutes(&t, r) {
                check(agree, || format!("addition at row {} of {:?}", r, t))?;
                adds += 1;
            }
        }
    }
    check(eulers >= 100 && adds >= 100, || format!("only {} Euler and {} addition cases", eulers, adds))?;
    Ok(format!("{} Euler and {} addition cases", eulers, adds))
}

fn cross_validation() -> Outcome {
    let mut compared = 0;
    for p in corpus() {
        let name = render_operator(&p);
        let t = ok(local_datum(&p), &name)?;
        for (i, c) in t.classes.iter().enumerate() {
            for (j, l) in c.legs.iter().enumerate() {
                for (k, b) in l.exponents.blocks.iter().enumerate() {
                    let Ok((predicted, _)) = t_euler(&t, i, j, k) else { continue };
                    let spec = TwistSpec::new(c.alpha.clone(), ParamRat::zero());
                    let image = ok(twisted_euler(&spec, &[(l.beta.clone(), &b.value - &ParamRat::one())], &p), &name)?;
                    let observed = ok(local_datum(&image), "table of the Euler image")?;
                    check(observed.same_datum(&predicted), || format!("Euler ({}, {}, {}) of {}", i, j, k, name))?;
                    compared += 1;
                }
            }
        }
        for (r, row) in t.rows.iter().enumerate() {
            for b in row.exponents.nonzero_blocks() {
                let f = -&b.value;
                let predicted = ok(t_add(&t, r, &f), "addition law")?;
                let image = ok(rad_power(&row.point, &f, &p), &name)?;
                let observed = ok(local_datum(&image), "table of the addition image")?;
                check(observed.same_datum(&predicted), || format!("addition at row {} of {}", r, name))?;
                compared += 1;
            }
        }
        if let Ok(predicted) = t_laplace(&t) {
            let image = ok(reduced_rep(&laplace(&p)), &name)?;
            let observed = ok(local_datum(&image), "table of the Laplace image")?;
            check(observed.same_datum(&predicted), || format!("Laplace of {}", name))?;
            compared += 1;
        }
        let (s, _) = ok(reduce(&p), &name)?;
        compared += s.steps.len();
    }
    Ok(format!("{} transform outputs match their predicted tables", compared))
}

fn reduction() -> Outcome {
    let mut summary = Vec::new();
    for p in corpus() {
        let name = render_operator(&p);
        let (s, run) = ok(reduce(&p), &name)?;
        let (_, alpha) = alpha_of(&s.initial_table);
        check(s.euler_steps() as i64 <= alpha.height(), || format!("{} used {} Euler steps", name, s.euler_steps()))?;
        check(run.last().order() == 1, || format!("{} ends at order {}", name, run.last().order()))?;
        summary.push(s.euler_steps().to_string());
    }
    match reduce(&op(HEUN)) {
        Err(Error::NotRigid { index, certificate }) => {
            check(index <= 0 && certificate.contains("nodes:"), || "certificate missing".to_string())?;
        }
        other => return Err(format!("non-rigid input gave {:?}", other.map(|_| ()))),
    }
    let (f, a) = alpha_of(&ok(local_datum(&op(HEUN)), "Heun table")?);
    check(matches!(classify(&f, &a), Classification::ImaginaryRoot { .. }), || "no imaginary root".to_string())?;
    Ok(format!("Euler steps per operator [{}]; idx 0 rejected as NotRigid", summary.join(", ")))
}

fn inverse_round_trips() -> Outcome {
    let f = q("f");
    let mut n = 0;
    for src in [GAUSS, KUMMER, HERMITE] {
        let p = op(src);
        for alpha in ["0", "2"] {
            let a = q(alpha);
            let there = ok(euler(&a, &f, &p), src)?;
            let back = ok(euler(&a, &-&f, &there), src)?;
            check(same(&back, &p)?, || format!("E({}, -f) E({}, f) {} is not the operator", alpha, alpha, src))?;
            n += 1;
        }
    }
    for p in corpus() {
        let (s, run) = ok(reduce(&p), "reduce")?;
        ok(round_trip(&p, &s, &run), &render_operator(&p))?;
        n += 1;
    }
    Ok(format!("{} round trips", n))
}

fn confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let p = random_operator(&mut rng);
        for lambdas in [vec![q("l1")], vec![q("l1"), q("l2")]] {
            let v = VersalSpec::fresh(lambdas);
            let at: Vec<_> = v.a_params.iter().map(|a| (*a, ParamRat::zero())).collect();
            let lim = ok(limit_at(&ok(versal_ad(&v, &p), "versal addition")?, &at), "limit")?;
            let expect = ok(reduced_rep(&ade(&v.limit_twist(), &p)), "twist")?;
            check(lim == expect, || format!("limit of {} with {} parameters", render_operator(&p), v.a_params.len()))?;
        }
    }
    let k = op(KUMMER);
    let (s, run) = ok(reduce(&k), "reduce Kummer")?;
    let d = ok(deconfluence(&s, &run), "deconfluence")?;
    check(same(&ok(d.limit(), "limit")?, &k)?, || "family limit is not Kummer".to_string())?;
    let idx = rigidity_index(&ok(local_datum(&d.family), "family table")?);
    check(idx == rigidity_index(&s.initial_table), || format!("family index {}", idx))?;
    Ok("40 limit identities; Kummer family has the right limit and index".to_string())
}

fn order_drop() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for (p, k) in order_drop_suite() {
        let d = ok(order_drop_iff(&p, k), "order drop")?;
        check(d.predicted == d.observed, || format!("{} block {}: predicted {}, observed {}", render_operator(&p), k, d.predicted, d.observed))?;
        if d.observed {
            yes += 1;
        } else {
            no += 1;
        }
    }
    check(yes >= 3 && no >= 3, || format!("{} drops, {} non-drops", yes, no))?;
    Ok(format!("{} drops and {} non-drops agree", yes, no))
}

fn frobenius_residuals() -> Outcome {
    const TRUNC: usize = 6;
    let mut blocks = 0;
    for p in corpus() {
        let name = render_operator(&p);
        let t = ok(local_datum(&p), &name)?;
        for c in &t.classes {
            for l in &c.legs {
                for b in &l.exponents.blocks {
                    let s = ok(frobenius_series_twisted(&p, &c.alpha, &l.beta, &b.value, TRUNC), &name)?;
                    check(infinity_residual_vanishes(&p, &c.alpha, &l.beta, &b.value, &s.coeffs), || {
                        format!("residual at infinity of {} for block {:?}", name, b.value)
                    })?;
                    blocks += 1;
                }
            }
        }
        for r in &t.rows {
            for b in &r.exponents.blocks {
                for j in 0..b.mult {
                    let nu = &b.value + &ParamRat::int(j as i64);
                    check(regular_series(&p, &r.point, &nu, TRUNC).is_some(), || {
                        format!("no series at {:?} for exponent {:?} of {}", r.point, nu, name)
                    })?;
                }
                blocks += 1;
            }
        }
    }
    Ok(format!("{} blocks, truncation {}", blocks, TRUNC))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("intro identities", intro_identities),
        ("rigidity index equals (alpha_P, alpha_P)", index_identity),
        ("reflections commute with table transforms", reflection_commutation),
        ("symbolic and table transforms agree", cross_validation),
        ("rigid reduction", reduction),
        ("inverse round trips", inverse_round_trips),
        ("confluence", confluence),
        ("order-drop criterion", order_drop),
        ("Frobenius residuals", frobenius_residuals),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {} ({}; {:?})", k + 1, name, detail, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {} ({})", k + 1, name, detail);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
