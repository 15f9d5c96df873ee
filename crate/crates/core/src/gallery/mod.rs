//! Constructors for the example families: projective spaces, quadratic-form
//! designs, polygons with their dihedral groups, wreath-product triples and
//! the bundled pair of seven-tile planar domains, and a named corpus of
//! example triples.

mod corpus;
mod design;
mod projective;
mod tiles;
mod wreath;

pub use corpus::{a4_ec_triple, corpus_triple, fano_triple, s4_control_triple, CONTROLS, CORPUS};
pub use design::{
    expected_parameters, isometries, quadratic_design, quadratic_form, FormType, QuadraticDesign, QuadraticDesignSpec,
};
pub use projective::{is_prime, pgl_order, projective_geometry, ProjectiveSpace, ProjectiveSpec};
pub use tiles::{DomainFile, Point, SurdSum, TileDomain, Triangle, Q};
pub use wreath::{wreath_order, wreath_triple, WreathSpec};

use crate::error::{Error, Result};
use crate::geom::{DGeometry, IncidenceGeometry};
use crate::perm::Perm;

/// The regular `n`-gon: point `i` lies on lines `i` and `i − 1`, so line `l`
/// joins points `l` and `l + 1`, with `D_n` generated by a rotation and a reflection.
pub fn dihedral_geometry(n: usize) -> Result<DGeometry> {
    if n < 3 {
        return Err(Error::DegenerateParameters(format!("polygons need n >= 3, got {n}")));
    }
    let geometry = IncidenceGeometry::from_fn(n, n, |p, l| p == l || p == (l + 1) % n);
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).chain((0..n).map(|l| n + (l + 1) % n)).collect();
    // x ↦ −x on points; the line {l, l+1} goes to {−l, −l−1}, i.e. line −l−1
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).chain((0..n).map(|l| n + (2 * n - l - 1) % n)).collect();
    DGeometry::from_generators(geometry, vec![Perm::from_usize(&rotation)?, Perm::from_usize(&reflection)?])
}

const GWW_A: &str = include_str!("../../../../data/gww_a.json");
const GWW_B: &str = include_str!("../../../../data/gww_b.json");

/// The two seven-tile domains obtained by unfolding a right isosceles
/// triangle along the Fano-plane involutions on points and on lines.
pub fn gww_domains() -> (TileDomain, TileDomain) {
    let parse = |s: &str| {
        let file: DomainFile = serde_json::from_str(s).expect("bundled domain file parses");
        TileDomain::from_file(&file).expect("bundled domain is valid")
    };
    (parse(GWW_A), parse(GWW_B))
}
