//! Triple-level checks: flags, reduction and isomorphism over the corpus.

use gsdrum::gallery::{
    a4_ec_triple, corpus_triple, dihedral_geometry, fano_triple, projective_geometry, ProjectiveSpec,
};
use gsdrum::gallery::{CONTROLS, CORPUS};
use gsdrum::group::named::cyclic;
use gsdrum::iso::{are_isomorphic, Decision};
use gsdrum::{check_ac, check_conjugate, check_ec, check_flags, reduce_ff, GSTriple, Perm, PermGroup};

fn all_triples() -> Vec<(&'static str, GSTriple)> {
    CORPUS.iter().chain(CONTROLS.iter()).map(|&name| (name, corpus_triple(name).unwrap())).collect()
}

#[test]
fn ac_implies_ec_and_equal_orders() {
    for (name, t) in all_triples() {
        if check_ac(&t).holds {
            assert!(check_ec(&t).holds, "{name}");
            assert_eq!(t.left().order(), t.right().order(), "{name}");
        }
    }
}

#[test]
fn ac_is_equality_of_permutation_characters() {
    for (name, t) in all_triples() {
        let g = t.group();
        let (left, right) = (t.left_action().unwrap(), t.right_action().unwrap());
        let same_character = g.conjugacy_classes().iter().all(|c| {
            let rep = g.element(c.representative);
            left.fixed_points(rep).unwrap() == right.fixed_points(rep).unwrap()
        });
        assert_eq!(check_ac(&t).holds, same_character, "{name}");
    }
}

#[test]
fn flags_are_symmetric_in_the_two_subgroups() {
    for (name, t) in all_triples() {
        let a = check_flags(&t).unwrap();
        let b = check_flags(&t.swapped()).unwrap();
        assert_eq!(
            (a.ec, a.ac, a.ff, a.max, a.pair, a.conjugate),
            (b.ec, b.ac, b.ff, b.max, b.pair, b.conjugate),
            "{name}"
        );
    }
}

#[test]
fn expected_flags_on_named_triples() {
    let f = check_flags(&fano_triple().unwrap()).unwrap();
    assert!(f.ec && f.ac && f.ff && f.max && f.pair && !f.conjugate);
    let a4 = check_flags(&a4_ec_triple().unwrap()).unwrap();
    assert!(a4.ec && !a4.ac && !a4.pair);
    assert_eq!(a4.witnesses.pair, "|U| = 2, |V| = 4");
    let pentagon = dihedral_geometry(5).unwrap().triple(0, 0).unwrap();
    assert!(check_conjugate(&pentagon));
    assert!(check_ac(&pentagon).holds);
}

#[test]
fn false_flags_carry_witnesses() {
    for (name, t) in all_triples() {
        let f = check_flags(&t).unwrap();
        for (value, witness) in [
            (f.ec, &f.witnesses.ec),
            (f.ac, &f.witnesses.ac),
            (f.ff, &f.witnesses.ff),
            (f.max, &f.witnesses.max),
            (f.pair, &f.witnesses.pair),
            (f.conjugate, &f.witnesses.conjugate),
        ] {
            assert!(!witness.is_empty(), "{name}: flag {value} without a witness");
        }
    }
}

#[test]
fn reduction_preserves_conjugacy_flags() {
    for (name, t) in all_triples().into_iter().filter(|(n, _)| *n != "fano-wreath-s2") {
        let r = reduce_ff(&t).unwrap();
        assert_eq!(check_ac(&r).holds, check_ac(&t).holds, "{name}");
        assert_eq!(check_ec(&r).holds, check_ec(&t).holds, "{name}");
        assert!(check_flags(&r).unwrap().ff, "{name}");
        let again = reduce_ff(&r).unwrap();
        assert_eq!(again.group().order(), r.group().order(), "{name}");
    }
}

#[test]
fn reduction_drops_a_shared_normal_subgroup() {
    // C₄ × C₂ on 4 + 2 points with U = V = ⟨(c², 0)⟩
    let c4 = cyclic(4).generators()[0].clone();
    let c2 = cyclic(2).generators()[0].clone();
    let g = PermGroup::from_generators(6, vec![c4.direct_sum(&Perm::identity(2)), Perm::identity(4).direct_sum(&c2)])
        .unwrap();
    let square = c4.compose(&c4).direct_sum(&Perm::identity(2));
    let t = GSTriple::from_generators(g, vec![square.clone()], vec![square]).unwrap();
    assert!(!check_flags(&t).unwrap().ff);
    let r = reduce_ff(&t).unwrap();
    assert!(r.group().order() < t.group().order());
    assert!(check_flags(&r).unwrap().ff);
}

#[test]
fn isomorphism_of_triples() {
    let fano = fano_triple().unwrap();
    assert_eq!(are_isomorphic(&fano, &fano).unwrap().decision, Decision::Yes);
    let space = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let other = space.geometry.triple(3, 5).unwrap();
    assert_eq!(are_isomorphic(&fano, &other).unwrap().decision, Decision::Yes);
    let pentagon = dihedral_geometry(5).unwrap().triple(0, 0).unwrap();
    assert_eq!(are_isomorphic(&fano, &pentagon).unwrap().decision, Decision::No);
}
