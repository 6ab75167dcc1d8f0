mod common;

use common::*;
use katzred_core::datum::{parse_table, ExponentBlock, ExponentSet};
use katzred_core::local::*;
use katzred_core::scalar::{ParamRat, Rational};
use katzred_core::weyl::{laplace, rad_power, shift_args};
use katzred_core::Error;
use proptest::prelude::*;

fn edges(p: &str) -> Vec<(i64, usize)> {
    newton_polygon(&op(p))
        .unwrap()
        .edges
        .iter()
        .map(|e| (e.slope.to_integer().try_into().unwrap(), e.length))
        .collect()
}

fn set(blocks: &[(&str, usize)]) -> ExponentSet {
    ExponentSet::new(blocks.iter().map(|(v, m)| ExponentBlock::new(q(v), *m)).collect())
}

fn same_blocks(a: &ExponentSet, b: &ExponentSet) -> bool {
    a.blocks.len() == b.blocks.len()
        && a.blocks.iter().all(|x| b.blocks.iter().any(|y| x.value == y.value && x.mult == y.mult))
}

#[test]
fn newton_polygon_examples() {
    assert_eq!(edges("D - alpha*x"), vec![(2, 1)]);
    assert_eq!(edges("x*D + c"), vec![(0, 1)]);
    assert_eq!(edges(HERMITE), vec![(0, 1), (2, 1)]);
    assert_eq!(edges(KUMMER), vec![(0, 1), (1, 1)]);
    assert!(matches!(newton_polygon(&katzred_core::weyl::WeylOperator::zero()), Err(Error::ZeroOperator)));
    let p = newton_polygon(&op(GAUSS)).unwrap();
    assert_eq!(p.edges.iter().map(|e| e.length).sum::<usize>(), 2);
    assert!(p.edges.iter().all(|e| e.slope == Rational::from_integer(0.into())));
}

#[test]
fn infinity_expansion_examples() {
    let e = infinity_expansion(&op("x*D + c")).unwrap();
    assert_eq!(e.rho, 1);
    assert_eq!(e.m, 1);
    assert!(e.characteristic().eval(&q("-c")).is_zero());
    let g = infinity_expansion(&op(GAUSS)).unwrap();
    let chi = g.characteristic();
    assert_eq!(chi.deg(), 2);
    assert!(chi.eval(&q("-a")).is_zero());
    assert!(chi.eval(&q("-b")).is_zero());
}

#[test]
fn infinity_exponent_examples() {
    assert!(same_blocks(&infinity_exponents(&op(GAUSS)).unwrap(), &set(&[("a", 1), ("b", 1)])));
    assert!(same_blocks(&infinity_exponents(&op("x*D + c")).unwrap(), &set(&[("c", 1)])));
    let kummer_twisted = shift_args(&op(KUMMER), &q("0"), &q("1"));
    let e = infinity_exponents(&kummer_twisted).unwrap();
    assert!(e.blocks.iter().any(|b| b.value == q("c - a") && b.mult == 1));
    // (D - alpha x - beta)^n untwisted is D^n: the block [1-n]_n.
    let p = op("(D - al*x - be)^3");
    let untwisted = shift_args(&p, &q("al"), &q("be"));
    assert!(same_blocks(&infinity_exponents(&untwisted).unwrap(), &set(&[("-2", 3)])));
}

#[test]
fn logarithmic_exponents_are_rejected() {
    // x^2 D^2 + x D has solutions 1 and log x at infinity.
    assert!(matches!(infinity_exponents(&op("x^2*D^2 + x*D")), Err(Error::NonSemiSimple(_))));
    // x D^2 + D has solutions 1 and log x at 0.
    assert!(matches!(regular_exponents(&op("x*D^2 + D"), &q("0")), Err(Error::NonSemiSimple(_))));
}

#[test]
fn frobenius_examples() {
    let s = frobenius_series(&op(KUMMER), &q("a"), 2).unwrap();
    assert_eq!(s.coeffs[0], q("1"));
    assert_eq!(s.coeffs[1], q("-a*(a - c + 1)"));
    assert!(infinity_residual_vanishes(&op(KUMMER), &q("0"), &q("0"), &q("a"), &s.coeffs));

    let s = frobenius_series(&op("x*D + c"), &q("c"), 3).unwrap();
    assert!(s.coeffs[1..].iter().all(ParamRat::is_zero));

    let s = frobenius_series(&op(GAUSS), &q("a"), 1).unwrap();
    assert!(infinity_residual_vanishes(&op(GAUSS), &q("0"), &q("0"), &q("a"), &s.coeffs));
    assert!(!s.coeffs[1].is_zero());
}

#[test]
fn series_residual_agrees_with_oracle() {
    for p in corpus() {
        let t = local_datum(&p).unwrap();
        for c in &t.classes {
            for l in &c.legs {
                for b in &l.exponents.blocks {
                    let s = frobenius_series_twisted(&p, &c.alpha, &l.beta, &b.value, 4).unwrap();
                    assert!(series_residual(&p, &s).iter().all(ParamRat::is_zero));
                    assert!(infinity_residual_vanishes(&p, &c.alpha, &l.beta, &b.value, &s.coeffs));
                }
            }
        }
    }
}

#[test]
fn wrong_exponent_leaves_a_residual() {
    let s = frobenius_series(&op(KUMMER), &q("a + 1/2"), 2).unwrap();
    assert!(!infinity_residual_vanishes(&op(KUMMER), &q("0"), &q("0"), &q("a + 1/2"), &s.coeffs));
}

#[test]
fn regular_char_examples() {
    let f = regular_char(&op(GAUSS), &q("0"), 2).unwrap();
    assert!(f[0].eval(&q("0")).is_zero());
    assert!(f[0].eval(&q("1 - c")).is_zero());
    assert_eq!(f[0].deg(), 2);
    let f = regular_char(&op(GAUSS), &q("1"), 2).unwrap();
    assert!(f[0].eval(&q("0")).is_zero());
    assert!(f[0].eval(&q("c - a - b")).is_zero());
    let f = regular_char(&op("x*D - lam"), &q("0"), 1).unwrap();
    assert_eq!(f[0], katzred_core::scalar::UPoly::new(vec![q("-lam"), q("1")]));
    assert!(matches!(regular_char(&op("x^2*D - 1"), &q("0"), 1), Err(Error::NotRegularPoint(_))));
}

#[test]
fn regular_exponent_examples() {
    let e = regular_exponents(&op(KUMMER), &q("0")).unwrap();
    assert!(same_blocks(&e, &set(&[("0", 1), ("1 - c", 1)])));
    assert!(e.blocks.iter().any(|b| b.is_zero_block && b.mult == 1));
    let e = regular_exponents(&op(GAUSS), &q("0")).unwrap();
    assert!(same_blocks(&e, &set(&[("0", 1), ("1 - c", 1)])));
    // (x - 3)^2 Q with Q nonsingular at 3: holomorphic solutions give [0]_2.
    let e = regular_exponents(&op("(x - 3)^2*D^2 + (x - 3)^2"), &q("3")).unwrap();
    assert_eq!(e.blocks, vec![ExponentBlock::zero(2)]);
}

#[test]
fn power_divisibility_examples() {
    assert_eq!(power_divisibility(&op("x^2*D + x"), &q("0"), 1), Some(op("x*D + 1")));
    assert_eq!(power_divisibility(&op("x*D + 1"), &q("0"), 1), None);
    let p = katzred_core::weyl::laplace_inv(&op(KUMMER));
    let added = rad_power(&q("0"), &q("-(a - 1)"), &p).unwrap();
    assert!(added.order() >= 1);
}

#[test]
fn local_datum_corpus_tables() {
    let expect = [
        (KUMMER, "reg 0 : [0]_1, [-c+1]_1\nirr 0 0 : [a]_1\nirr 0 1 : [c-a]_1\n"),
        (HERMITE, "irr 0 0 : [-a]_1\nirr 1 0 : [a+1]_1\n"),
        (GAUSS, "reg 0 : [0]_1, [-c+1]_1\nreg 1 : [0]_1, [c-b-a]_1\nirr 0 0 : [a]_1, [b]_1\n"),
        ("x*D + (c - a) - x", "reg 0 : [-c+a]_1\nirr 0 1 : [c-a]_1\n"),
        ("D - x", "irr 1 0 : [0]_1\n"),
    ];
    for (src, table) in expect {
        let got = local_datum(&op(src)).unwrap();
        assert!(got.same_datum(&parse_table(table).unwrap()), "{}: {:?}", src, got);
    }
}

#[test]
fn local_datum_errors() {
    assert!(matches!(local_datum(&op("D - x^2")), Err(Error::SlopeOutOfRange(_))));
    assert!(matches!(local_datum(&op("(x^2 - 2)*D - 1")), Err(Error::NonSplitting(_))));
    assert!(matches!(local_datum(&op("D^2 - x")), Err(Error::NonSplitting(_)) | Err(Error::SlopeOutOfRange(_))));
}

#[test]
fn multiplicities_sum_to_order() {
    for p in corpus() {
        let t = local_datum(&p).unwrap();
        assert_eq!(t.classes.iter().map(|c| c.mult()).sum::<usize>(), p.order());
        for r in &t.rows {
            assert_eq!(r.exponents.total(), p.order());
        }
    }
}

#[test]
fn addition_shifts_exponents() {
    let p = op(GAUSS);
    let f = q("f");
    let added = rad_power(&q("0"), &f, &p).unwrap();
    let before = regular_exponents(&p, &q("0")).unwrap();
    let after = regular_exponents(&added, &q("0")).unwrap();
    let shifted = ExponentSet::new(before.blocks.iter().map(|b| ExponentBlock::new(&b.value + &f, b.mult)).collect());
    assert!(same_blocks(&after, &shifted));
    assert!(same_blocks(&regular_exponents(&added, &q("1")).unwrap(), &regular_exponents(&p, &q("1")).unwrap()));
    let inf = infinity_exponents(&added).unwrap();
    let expect = ExponentSet::new(
        infinity_exponents(&p).unwrap().blocks.iter().map(|b| ExponentBlock::new(&b.value - &f, b.mult)).collect(),
    );
    assert!(same_blocks(&inf, &expect));
}

#[test]
fn laplace_exponent_duality() {
    // Gauss is regular at infinity with exponents [a]_1, [b]_1; its Laplace
    // transform has exponents [0]_{N-2}, [a-1]_1, [b-1]_1 at 0.
    let l = laplace(&op(GAUSS));
    let l = katzred_core::weyl::reduced_rep(&l).unwrap();
    let e = regular_exponents(&l, &q("0")).unwrap();
    assert!(e.blocks.iter().any(|b| b.value == q("a - 1") && b.mult == 1));
    assert!(e.blocks.iter().any(|b| b.value == q("b - 1") && b.mult == 1));
    assert_eq!(e.total(), l.order());
}

#[test]
fn regular_series_oracle_on_corpus() {
    for p in corpus() {
        let t = local_datum(&p).unwrap();
        for r in &t.rows {
            for b in &r.exponents.blocks {
                for j in 0..b.mult {
                    let nu = &b.value + &ParamRat::int(j as i64);
                    assert!(regular_series(&p, &r.point, &nu, 6).is_some());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn first_order_exponents(c in -5i64..5, k in 1i64..4, m in 0i64..4) {
        // x^k (x D + c) has the exponent c at infinity and -c at 0.
        let p = op(&format!("x^{}*(x*D + {}) + {}*x^{}", k, c, m, k));
        let e = infinity_exponents(&p).unwrap();
        prop_assert_eq!(e.blocks.len(), 1);
        prop_assert_eq!(e.blocks[0].value.clone(), ParamRat::int(c + m));
    }
}
