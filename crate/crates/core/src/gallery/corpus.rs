//! Named example triples: one representative of every gallery family at desk
//! scale, the elementwise-conjugate pair in `A₄`, and a non-AC control in `S₄`.

use super::{dihedral_geometry, projective_geometry, quadratic_design, wreath_triple};
use super::{FormType, ProjectiveSpec, QuadraticDesignSpec, WreathSpec};
use crate::error::{Error, Result};
use crate::group::named::{alternating, symmetric};
use crate::perm::Perm;
use crate::triple::GSTriple;

/// Every corpus triple, cheapest first.
pub const CORPUS: [&str; 10] = [
    "triangle",
    "square",
    "pentagon",
    "a4-ec",
    "fano",
    "pg-2-3",
    "pg-3-2",
    "design-hyperbolic",
    "design-elliptic",
    "fano-wreath-s2",
];

/// Triples that are not almost conjugate but have equal indices.
pub const CONTROLS: [&str; 1] = ["s4-klein-vs-cyclic"];

fn cycles(degree: usize, cycles: &[&[u32]]) -> Perm {
    Perm::from_cycles(degree, cycles).expect("valid cycle notation")
}

pub fn fano_triple() -> Result<GSTriple> {
    Ok(projective_geometry(ProjectiveSpec { n: 3, p: 2 })?.triple)
}

/// `H = {e, α}` and `H′ = {e, α, β, αβ}` in `A₄` with `α, β` double transpositions.
pub fn a4_ec_triple() -> Result<GSTriple> {
    let alpha = cycles(4, &[&[0, 1], &[2, 3]]);
    let beta = cycles(4, &[&[0, 2], &[1, 3]]);
    GSTriple::from_generators(alternating(4), vec![alpha.clone()], vec![alpha, beta])
}

/// `⟨(0 1), (2 3)⟩` against `⟨(0 1 2 3)⟩` in `S₄`: both of order 4 and index 6,
/// but the first contains transpositions and the second does not.
pub fn s4_control_triple() -> Result<GSTriple> {
    GSTriple::from_generators(
        symmetric(4),
        vec![cycles(4, &[&[0, 1]]), cycles(4, &[&[2, 3]])],
        vec![cycles(4, &[&[0, 1, 2, 3]])],
    )
}

/// The design with the isometries of the form, point `0` and a block through it.
fn design_triple(form: FormType) -> Result<GSTriple> {
    let design = quadratic_design(QuadraticDesignSpec { m: 2, form, orthogonal: true })?;
    // block `b` is `b + D`, which contains 0 exactly when b ∈ D
    design.geometry.triple(0, design.difference_set[0])
}

/// Looks up a corpus or control triple by name.
pub fn corpus_triple(name: &str) -> Result<GSTriple> {
    match name {
        "triangle" => dihedral_geometry(3)?.triple(0, 0),
        "square" => dihedral_geometry(4)?.triple(0, 0),
        "pentagon" => dihedral_geometry(5)?.triple(0, 0),
        "a4-ec" => a4_ec_triple(),
        "fano" => fano_triple(),
        "pg-2-3" => Ok(projective_geometry(ProjectiveSpec { n: 3, p: 3 })?.triple),
        "pg-3-2" => Ok(projective_geometry(ProjectiveSpec { n: 4, p: 2 })?.triple),
        "design-hyperbolic" => design_triple(FormType::Hyperbolic),
        "design-elliptic" => design_triple(FormType::Elliptic),
        "fano-wreath-s2" => wreath_triple(&WreathSpec { base: fano_triple()?, copies: 2, top: symmetric(2) }),
        "s4-klein-vs-cyclic" => s4_control_triple(),
        _ => Err(Error::Format(format!("unknown corpus triple {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries_build() {
        for name in ["triangle", "square", "pentagon", "a4-ec", "fano", "s4-klein-vs-cyclic"] {
            assert!(corpus_triple(name).is_ok(), "{name}");
        }
        assert!(corpus_triple("nonsense").is_err());
    }

    #[test]
    fn design_triples_use_a_flag() {
        let t = corpus_triple("design-hyperbolic").unwrap();
        assert_eq!(t.group().order(), 16 * 72);
        assert_eq!(t.left().order(), 72);
        assert_eq!(t.right().order(), 72);
    }
}
