//! Group-theoretic invariants over the small groups of the corpus.

use gsdrum::gallery::{corpus_triple, CONTROLS, CORPUS};
use gsdrum::group::named::{alternating, cyclic, symmetric};
use gsdrum::{core, coset_action, fixed_point_formula, GSTriple, Perm, PermGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_ORDER_LIMIT: usize = 5000;

fn small_corpus() -> Vec<(&'static str, GSTriple)> {
    CORPUS
        .iter()
        .chain(CONTROLS.iter())
        .map(|&name| (name, corpus_triple(name).unwrap()))
        .filter(|(_, t)| t.group().order() <= ORACLE_ORDER_LIMIT)
        .collect()
}

fn cycles(degree: usize, c: &[&[u32]]) -> Perm {
    Perm::from_cycles(degree, c).unwrap()
}

#[test]
fn class_sizes_sum_to_the_order_and_match_centralizers() {
    for (name, t) in small_corpus() {
        let g = t.group();
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.size()).sum();
        assert_eq!(total, g.order(), "{name}");
        for class in classes.iter() {
            let rep = g.element(class.representative);
            assert_eq!(g.centralizer_order(rep).unwrap() * class.size(), g.order(), "{name}");
        }
    }
}

#[test]
fn fixed_point_formula_matches_brute_force() {
    for (name, t) in small_corpus() {
        let g = t.group();
        for h in [t.left(), t.right()] {
            let action = coset_action(g, h).unwrap();
            for class in g.conjugacy_classes().iter() {
                let rep = g.element(class.representative);
                assert_eq!(
                    fixed_point_formula(g, h, rep).unwrap(),
                    action.fixed_points(rep).unwrap(),
                    "{name} at {rep}"
                );
            }
        }
    }
}

#[test]
fn burnside_counts_one_orbit_on_cosets() {
    for (name, t) in small_corpus() {
        let g = t.group();
        for h in [t.left(), t.right()] {
            let action = coset_action(g, h).unwrap();
            let fixed: usize = g.elements().iter().map(|x| action.fixed_points(x).unwrap()).sum();
            assert_eq!(fixed, g.order(), "{name}");
        }
    }
}

#[test]
fn coset_action_respects_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, t) in small_corpus() {
        let g = t.group();
        let action = coset_action(g, t.left()).unwrap();
        for _ in 0..100 {
            let a = g.element(rng.gen_range(0..g.order()));
            let b = g.element(rng.gen_range(0..g.order()));
            let i = rng.gen_range(0..action.degree());
            let lhs = action.act(&a.compose(b), i).unwrap();
            let rhs = action.act(a, action.act(b, i).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{name}");
        }
        assert!((0..action.degree()).all(|i| action.act(g.identity(), i).unwrap() == i));
    }
}

#[test]
fn kernel_of_the_coset_action_is_the_core() {
    for (name, t) in small_corpus() {
        let g = t.group();
        for h in [t.left(), t.right()] {
            let kernel = coset_action(g, h).unwrap().kernel();
            let c = core(g, h).unwrap();
            assert_eq!(kernel.elements(), c.elements(), "{name}");
        }
    }
}

#[test]
fn closure_orders() {
    assert_eq!(PermGroup::from_generators(3, vec![cycles(3, &[&[0, 1]])]).unwrap().order(), 2);
    assert_eq!(PermGroup::from_generators(4, vec![cycles(4, &[&[0, 1, 2, 3]])]).unwrap().order(), 4);
    let fano = corpus_triple("fano").unwrap();
    // (q³−1)(q³−q)(q³−q²)/(q−1) at q = 2
    assert_eq!(fano.group().order(), 7 * 6 * 4);
}

#[test]
fn classes_and_centralizers_in_small_groups() {
    let s3 = symmetric(3);
    let t = cycles(3, &[&[0, 1]]);
    assert_eq!(s3.conjugacy_class(&t).unwrap().len(), 3);
    assert_eq!(s3.centralizer_order(&t).unwrap(), 2);
    let a4 = alternating(4);
    let alpha = cycles(4, &[&[0, 1], &[2, 3]]);
    let class = a4.conjugacy_class(&alpha).unwrap();
    assert_eq!(class.len(), 3);
    assert!(class.iter().all(|g| g.order() == 2 && g.fixed_point_count() == 0));
    assert_eq!(a4.centralizer_order(&alpha).unwrap(), 4);
    assert_eq!(a4.centralizer_order_brute(&alpha).unwrap(), 4);
}

#[test]
fn fixed_point_formula_examples() {
    let s3 = symmetric(3);
    let t = cycles(3, &[&[0, 1]]);
    let h = s3.subgroup(vec![t.clone()]).unwrap();
    assert_eq!(fixed_point_formula(&s3, &h, &t).unwrap(), 1);
    assert_eq!(fixed_point_formula(&s3, &h, s3.identity()).unwrap(), 3);
    let a4 = alternating(4);
    let alpha = cycles(4, &[&[0, 1], &[2, 3]]);
    let v4 = a4.subgroup(vec![alpha.clone(), cycles(4, &[&[0, 2], &[1, 3]])]).unwrap();
    assert_eq!(fixed_point_formula(&a4, &v4, &alpha).unwrap(), 3);
}

#[test]
fn involutions_of_the_fano_group_fix_three_points() {
    let t = corpus_triple("fano").unwrap();
    let action = coset_action(t.group(), t.left()).unwrap();
    assert_eq!(action.degree(), 7);
    let involutions: Vec<&Perm> = t.group().elements().iter().filter(|g| g.order() == 2).collect();
    assert_eq!(involutions.len(), 21);
    assert!(involutions.iter().all(|g| action.fixed_points(g).unwrap() == 3));
    assert!(action.is_primitive().unwrap());
}

#[test]
fn primitivity_and_cores() {
    let s3 = symmetric(3);
    let h = s3.subgroup(vec![cycles(3, &[&[0, 1]])]).unwrap();
    assert!(coset_action(&s3, &h).unwrap().is_primitive().unwrap());
    assert!(core(&s3, &h).unwrap().is_trivial());
    let c4 = cyclic(4);
    let regular = coset_action(&c4, &c4.trivial_subgroup()).unwrap();
    assert!(!regular.is_primitive().unwrap());
    let r = c4.generators()[0].clone();
    let square = c4.subgroup(vec![r.compose(&r)]).unwrap();
    assert_eq!(core(&c4, &square).unwrap().order(), 2);
    let whole = coset_action(&s3, &s3.as_subgroup()).unwrap();
    assert_eq!(whole.degree(), 1);
}
