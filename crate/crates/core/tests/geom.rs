//! The triple/geometry correspondence and the geometric checks built on it.

use gsdrum::gallery::{corpus_triple, dihedral_geometry, fano_triple, projective_geometry, quadratic_design};
use gsdrum::gallery::{FormType, ProjectiveSpec, QuadraticDesignSpec, CONTROLS, CORPUS};
use gsdrum::geom::{
    automorphism_group, derived_triple_overgroup, derived_triple_subgroup, duality_extension, find_duality,
    DesignParameters, DEFAULT_SEARCH_BUDGET,
};
use gsdrum::iso::{are_isomorphic, Decision};
use gsdrum::{build_drum_geometry, check_ac, check_conjugate, check_ec, DGeometry, IncidenceGeometry, Perm};
use num_bigint::BigInt;

#[test]
fn round_trip_on_the_corpus() {
    for &name in CORPUS.iter().chain(CONTROLS.iter()) {
        let t = corpus_triple(name).unwrap();
        let g = build_drum_geometry(&t).unwrap();
        assert_eq!(check_ac(&t).holds, g.verify_sd().holds, "{name}: AC vs SD");
        assert_eq!(check_ec(&t).holds, g.verify_d().holds, "{name}: EC vs D");
    }
}

#[test]
fn fixed_point_ratios_agree_exactly_when_sd_holds() {
    for &name in &CORPUS[..7] {
        let t = corpus_triple(name).unwrap();
        let g = build_drum_geometry(&t).unwrap();
        let a = t.group();
        let ratios_agree = a.conjugacy_classes().iter().all(|c| {
            let count = |h: &gsdrum::Subgroup| c.members.iter().filter(|&&i| h.contains(a.element(i as usize))).count();
            // |a^A ∩ A_x| / |A_x| = |a^A ∩ A_L| / |A_L|, cross-multiplied
            count(t.left()) * t.right().order() == count(t.right()) * t.left().order()
        });
        assert_eq!(ratios_agree, g.verify_sd().holds, "{name}");
    }
}

#[test]
fn re_extracted_triples_are_isomorphic() {
    for name in ["triangle", "pentagon", "fano", "pg-2-3"] {
        let t = corpus_triple(name).unwrap();
        let g = build_drum_geometry(&t).unwrap();
        let back = g.triple(0, 0).unwrap();
        assert_eq!(are_isomorphic(&t, &back).unwrap().decision, Decision::Yes, "{name}");
    }
}

#[test]
fn drum_geometries_of_named_triples() {
    let fano = build_drum_geometry(&fano_triple().unwrap()).unwrap();
    assert_eq!((fano.num_points(), fano.num_lines()), (7, 7));
    let geometry = fano.geometry();
    assert!((0..7).all(|i| geometry.point_degree(i) == 3 && geometry.line_degree(i) == 3));
    let pentagon = build_drum_geometry(&corpus_triple("pentagon").unwrap()).unwrap();
    assert_eq!((pentagon.num_points(), pentagon.num_lines()), (5, 5));
    assert!((0..5).all(|l| pentagon.geometry().line_degree(l) == 2));
    let g = fano.group().clone();
    let whole = gsdrum::GSTriple::new(g.clone(), g.as_subgroup(), g.as_subgroup()).unwrap();
    let point = build_drum_geometry(&whole).unwrap();
    assert_eq!((point.num_points(), point.num_lines()), (1, 1));
    assert!(point.geometry().incident(0, 0));
}

#[test]
fn pa_equals_al_and_breaks_under_mutation() {
    for &name in CORPUS.iter() {
        let t = corpus_triple(name).unwrap();
        let g = build_drum_geometry(&t).unwrap();
        for alpha in g.group().generators() {
            assert!(g.verify_pa_eq_al(alpha).unwrap(), "{name}");
        }
        let mut mutated = g.geometry().clone();
        mutated.flip(0, 0);
        let broken = g
            .group()
            .generators()
            .iter()
            .any(|alpha| !gsdrum::geom::pa_eq_al(&mutated, &g.point_perm(alpha), &g.line_perm(alpha)));
        assert!(broken, "{name}: a flipped incidence went unnoticed");
    }
}

#[test]
fn determinants() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let s = fano.geometry.geometry().is_super_strong().unwrap();
    assert_eq!(s.determinant.magnitude(), &24u32.into());
    // det(A Aᵀ) = (k − λ)^{v−1} (k + λ(v − 1)) for a 2-(7, 3, 1) design
    assert_eq!(&s.determinant * &s.determinant, BigInt::from(2i64.pow(6) * 9));
    let pentagon = dihedral_geometry(5).unwrap().geometry().is_super_strong().unwrap();
    assert_eq!(pentagon.determinant.magnitude(), &2u32.into());
    let square = dihedral_geometry(4).unwrap().geometry().is_super_strong().unwrap();
    assert!(!square.nonsingular);
    for form in [FormType::Hyperbolic, FormType::Elliptic] {
        let d = quadratic_design(QuadraticDesignSpec { m: 2, form, orthogonal: false }).unwrap();
        let det = d.geometry.geometry().is_super_strong().unwrap().determinant;
        assert!(det.magnitude() > &1u32.into(), "{form:?}: {det}");
    }
}

#[test]
fn super_strong_with_a_transitive_group_is_sd() {
    for &name in CORPUS.iter() {
        let g = build_drum_geometry(&corpus_triple(name).unwrap()).unwrap();
        let geometry = g.geometry();
        if geometry.num_points() == geometry.num_lines() && geometry.is_super_strong().unwrap().nonsingular {
            assert!(g.verify_sd().holds, "{name}");
        }
    }
}

#[test]
fn symmetric_design_recognition() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    assert_eq!(fano.geometry.geometry().is_symmetric_design(), Some(DesignParameters { v: 7, k: 3, lambda: 1 }));
    assert_eq!(dihedral_geometry(5).unwrap().geometry().is_symmetric_design(), None);
    let d = quadratic_design(QuadraticDesignSpec { m: 2, form: FormType::Hyperbolic, orthogonal: false }).unwrap();
    assert_eq!(d.geometry.geometry().is_symmetric_design(), Some(DesignParameters { v: 16, k: 6, lambda: 2 }));
}

#[test]
fn dualities() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let delta = find_duality(fano.geometry.geometry(), DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
    assert!(delta.is_duality_of(fano.geometry.geometry()));
    let pentagon = dihedral_geometry(5).unwrap();
    assert!(find_duality(pentagon.geometry(), DEFAULT_SEARCH_BUDGET).unwrap().is_some());
    // a point on three lines against lines with one or two points
    let lopsided = IncidenceGeometry::new(3, 3, [(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]).unwrap();
    assert!(find_duality(&lopsided, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
}

#[test]
fn duality_makes_the_fano_stabilizers_conjugate() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    assert!(!check_conjugate(&fano.triple));
    let delta = find_duality(fano.geometry.geometry(), DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
    let extended = duality_extension(&fano.geometry, &delta).unwrap();
    assert_eq!(extended.group().order(), 336);
    assert!(check_conjugate(&extended));
}

#[test]
fn fano_automorphism_group_is_the_projective_group() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let aut = automorphism_group(fano.geometry.geometry(), DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(aut.order(), 168);
    assert!(aut.contains_group(fano.geometry.group()));
    let t = derived_triple_overgroup(&fano.geometry, &aut).unwrap();
    assert_eq!(t.group().order(), 168);
    assert!(check_ac(&t).holds);
}

/// A point-transitive subgroup of order 21: a Singer cycle with an element of
/// order 3 normalizing it.
fn frobenius_subgroup(g: &DGeometry) -> gsdrum::Subgroup {
    let a = g.group();
    let singer = a.elements().iter().find(|x| x.order() == 7).unwrap().clone();
    let powers: Vec<Perm> = (0..7)
        .scan(a.identity().clone(), |acc, _| {
            let out = acc.clone();
            *acc = acc.compose(&singer);
            Some(out)
        })
        .collect();
    let h = a.elements().iter().find(|h| h.order() == 3 && powers.contains(&singer.conjugate_by(h))).unwrap().clone();
    a.subgroup(vec![singer, h]).unwrap()
}

#[test]
fn frobenius_subgroup_gives_a_conjugate_strong_triple() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let x = frobenius_subgroup(&fano.geometry);
    assert_eq!(x.order(), 21);
    let t = derived_triple_subgroup(&fano.geometry, &x).unwrap();
    assert!(check_ac(&t).holds);
    assert!(check_conjugate(&t));
    let restricted = DGeometry::new(fano.geometry.geometry().clone(), x.group().clone()).unwrap();
    assert!(restricted.verify_sd().holds);
}

#[test]
fn intransitive_subgroups_are_rejected() {
    let fano = projective_geometry(ProjectiveSpec { n: 3, p: 2 }).unwrap();
    let stabilizer = fano.geometry.group().stabilizer(0);
    assert!(derived_triple_subgroup(&fano.geometry, &stabilizer).is_err());
    let same = derived_triple_subgroup(&fano.geometry, &fano.geometry.group().as_subgroup()).unwrap();
    assert_eq!(same.group().order(), 168);
}

#[test]
fn identity_group_is_sd() {
    let geometry = IncidenceGeometry::new(3, 3, [(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
    let g = DGeometry::new(geometry, gsdrum::PermGroup::trivial(6)).unwrap();
    assert!(g.verify_sd().holds);
}
