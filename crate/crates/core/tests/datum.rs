mod common;

use common::*;
use katzred_core::datum::*;
use katzred_core::local::local_datum;
use katzred_core::scalar::ParamRat;
use katzred_core::weyl::{laplace, laplace_inv, reduced_rep};
use katzred_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(src: &str) -> LocalDatumTable {
    parse_table(src).unwrap()
}

fn kummer() -> LocalDatumTable {
    local_datum(&op(KUMMER)).unwrap()
}

#[test]
fn rigidity_index_of_corpus() {
    for src in [GAUSS, KUMMER, HERMITE] {
        assert_eq!(rigidity_index(&local_datum(&op(src)).unwrap()), 2, "{}", src);
    }
    assert_eq!(rigidity_index(&local_datum(&op(HEUN)).unwrap()), 0);
    assert_eq!(rigidity_index(&LocalDatumTable::trivial(q("0"), q("0"))), 2);
}

#[test]
fn addition_examples() {
    let t = kummer();
    let f = q("f");
    let got = t_add(&t, 0, &f).unwrap();
    let expect = table("reg 0 : [f]_1, [-c+f+1]_1\nirr 0 0 : [a-f]_1\nirr 0 1 : [c-a-f]_1\n");
    assert!(got.same_datum(&expect), "{}", render_table(&got));
    assert_eq!(t_add(&t, 0, &ParamRat::zero()).unwrap(), t);
    assert!(t_add(&got, 0, &-&f).unwrap().same_datum(&t));
}

#[test]
fn addition_making_a_zero_block() {
    let t = table("reg 0 : [p]_2, [r]_1\nirr 0 0 : [a]_3\n");
    let got = t_add(&t, 0, &q("-p")).unwrap();
    let row = &got.rows[0].exponents;
    assert!(row.blocks[0].is_zero_block);
    assert_eq!(row.zero_mult(), 2);
    assert!(t_add(&got, 0, &q("p")).unwrap().same_datum(&t));
}

#[test]
fn addition_collision_is_rejected() {
    assert!(matches!(parse_table("reg 0 : [p]_1, [p+1]_1\nirr 0 0 : [a]_2\n"), Err(Error::BlockCollision(_))));
    let t = table("reg 0 : [0]_1, [p]_1\nirr 0 0 : [a]_2\n");
    assert!(t_add(&t, 3, &q("1")).is_err());
}

#[test]
fn euler_examples() {
    let t = kummer();
    let (got, order) = t_euler(&t, 0, 0, 0).unwrap();
    assert_eq!(order, 1);
    let target = local_datum(&op("x*D + (c - a) - x")).unwrap();
    assert!(got.same_datum(&target), "{}", render_table(&got));
}

#[test]
fn euler_at_the_collapsible_shape_is_degenerate() {
    let t = table("reg 0 : [0]_1, [p]_1, [r]_1\nreg 1 : [0]_2, [s]_1\nirr 1 2 : [v]_3\n");
    let fin = t.is_final().unwrap();
    assert_eq!((fin.alpha, fin.beta, fin.n), (q("1"), q("2"), 3));
    assert!(matches!(t_euler(&t, 0, 0, 0), Err(Error::Degenerate)));
}

#[test]
fn euler_twice_is_the_identity() {
    let t = table("reg 0 : [0]_1, [p]_1, [r]_1\nreg 1 : [0]_2, [s]_1\nirr 0 0 : [a]_1, [b]_1\nirr 0 1 : [e]_1\n");
    let (once, n1) = t_euler(&t, 0, 0, 1).unwrap();
    let leg = once.classes[0].legs.iter().position(|l| l.beta == q("0")).unwrap();
    let block = once.classes[0].legs[leg].exponents.blocks.iter().position(|b| b.value == q("2 - b")).unwrap();
    let (twice, n2) = t_euler(&once, 0, leg, block).unwrap();
    assert_eq!(n1, 3 - 1 + 3 - 2);
    assert_eq!(n2, 3);
    assert!(twice.same_datum(&t), "{}", render_table(&twice));
}

#[test]
fn laplace_examples() {
    let t = kummer();
    let l = t_laplace(&t).unwrap();
    assert!(t_laplace_inv(&l).unwrap().same_datum(&t));
    assert!(t_laplace(&t_laplace_inv(&t).unwrap()).unwrap().same_datum(&t));
    let oracle = local_datum(&reduced_rep(&laplace(&op(KUMMER))).unwrap()).unwrap();
    assert!(l.same_datum(&oracle), "{} vs {}", render_table(&l), render_table(&oracle));
    let oracle_inv = local_datum(&reduced_rep(&laplace_inv(&op(KUMMER))).unwrap()).unwrap();
    assert!(t_laplace_inv(&t).unwrap().same_datum(&oracle_inv));

    let g = t_laplace(&local_datum(&op(GAUSS)).unwrap()).unwrap();
    assert!(g.rows.iter().any(|r| r.point.is_zero()));
    assert!(matches!(t_laplace(&local_datum(&op("D - x")).unwrap()), Err(Error::NoZeroClass)));
}

#[test]
fn final_shapes() {
    let fin = LocalDatumTable::trivial(q("p"), q("r")).is_final().unwrap();
    assert_eq!((fin.alpha, fin.beta, fin.n), (q("p"), q("r"), 1));
    assert!(kummer().is_final().is_none());
    let cor = table("reg 0 : [0]_1, [p]_1\nirr 0 3 : [v]_2\n");
    assert!(cor.is_final().is_none());
    let cor = table("reg 0 : [p]_2\nirr 0 3 : [v]_2\n");
    assert_eq!(cor.is_final().unwrap().n, 2);
}

#[test]
fn text_format_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let t = random_table(&mut rng);
        assert_eq!(parse_table(&render_table(&t)).unwrap(), t);
    }
    assert!(matches!(parse_table("reg 0 [0]_1"), Err(Error::Parse { .. })));
}

#[test]
fn permutation_reorders_blocks() {
    let t = table("reg 0 : [0]_1, [p]_1, [r]_2\nirr 0 0 : [a]_1, [b]_3\n");
    let p = t.permute(BlockOwner::Row(0), &[1, 0]).unwrap();
    assert_eq!(p.rows[0].exponents.blocks[1].value, q("r"));
    assert!(p.same_datum(&t));
    let l = t.permute(BlockOwner::Leg { class: 0, leg: 0 }, &[1, 0]).unwrap();
    assert_eq!(l.classes[0].legs[0].exponents.blocks[0].value, q("b"));
    assert!(t.permute(BlockOwner::Row(0), &[0, 0]).is_err());
}

#[test]
fn transform_order_matches_the_operator() {
    for p in corpus() {
        let t = local_datum(&p).unwrap();
        for (i, c) in t.classes.iter().enumerate() {
            for (j, l) in c.legs.iter().enumerate() {
                for k in 0..l.exponents.blocks.len() {
                    let Ok((_, order)) = t_euler(&t, i, j, k) else { continue };
                    let b = &l.exponents.blocks[k];
                    let f = &b.value - &ParamRat::one();
                    let spec = katzred_core::weyl::TwistSpec::new(c.alpha.clone(), ParamRat::zero());
                    let image = katzred_core::weyl::twisted_euler(&spec, &[(l.beta.clone(), f)], &p).unwrap();
                    assert_eq!(image.order(), order);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_is_invariant_under_addition(seed in any::<u64>()) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assume!(!t.rows.is_empty());
        let f = q("w");
        let added = t_add(&t, 0, &f).unwrap();
        prop_assert_eq!(rigidity_index(&added), rigidity_index(&t));
        let mu = t.rows[0].exponents.nonzero_blocks().next().unwrap().value.clone();
        let zeroed = t_add(&t, 0, &-&mu).unwrap();
        zeroed.validate().unwrap();
        let point = &t.rows[0].point;
        match zeroed.rows.iter().find(|r| &r.point == point) {
            Some(r) => prop_assert!(r.exponents.blocks[0].is_zero_block),
            None => prop_assert_eq!(t.rows[0].exponents.blocks.len(), 1),
        }
        let back = t_add_at(&zeroed, point, &mu).unwrap();
        prop_assert!(back.same_datum(&t));
    }

    #[test]
    fn index_is_invariant_under_euler(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed));
        let targets: Vec<(usize, usize, usize)> = t.classes.iter().enumerate()
            .flat_map(|(i, c)| c.legs.iter().enumerate().flat_map(move |(j, l)| (0..l.exponents.blocks.len()).map(move |k| (i, j, k))))
            .collect();
        let (i, j, k) = targets[pick.index(targets.len())];
        if let Ok((e, order)) = t_euler(&t, i, j, k) {
            e.validate().unwrap();
            prop_assert_eq!(e.order, order);
            prop_assert_eq!(rigidity_index(&e), rigidity_index(&t));
        }
    }

    #[test]
    fn index_is_invariant_under_laplace(seed in any::<u64>()) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed));
        if let Ok(l) = t_laplace(&t) {
            l.validate().unwrap();
            prop_assert_eq!(rigidity_index(&l), rigidity_index(&t));
            if l.classes.iter().any(|c| c.alpha.is_zero()) {
                prop_assert!(t_laplace_inv(&l).unwrap().same_datum(&t));
            }
        }
    }
}
