//! Triples derived from a drum geometry by shrinking or enlarging the group.

use super::{check_automorphism, DGeometry, Duality};
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::triple::{check_ac, GSTriple};

/// `(X, X_x, X_Y)` for a subgroup `X ≤ A` still transitive on points and lines,
/// with `x` the point 0 and `Y` the line 0.
pub fn derived_triple_subgroup(g: &DGeometry, x: &Subgroup) -> Result<GSTriple> {
    if !x.is_subgroup_of(g.group()) {
        return Err(Error::NotSubgroup);
    }
    let mu = g.num_points();
    if !x.is_transitive_on(0..mu) {
        return Err(Error::NotTransitiveSubgroup("points"));
    }
    if !x.is_transitive_on(mu..mu + g.num_lines()) {
        return Err(Error::NotTransitiveSubgroup("lines"));
    }
    let group = x.group().clone();
    GSTriple::new(group.clone(), group.stabilizer(0), group.stabilizer(mu))
}

/// `(B, B_x, B_Y)` for an automorphism group `B ⊇ A` of a geometry that is
/// super strong or a symmetric 2-design; both hypotheses force `B` to have
/// equal fixed counts on points and lines, which is re-checked exhaustively.
pub fn derived_triple_overgroup(g: &DGeometry, b: &PermGroup) -> Result<GSTriple> {
    let mu = g.num_points();
    let degree = mu + g.num_lines();
    if b.degree() != degree {
        return Err(Error::DegreeMismatch { expected: degree, found: b.degree() });
    }
    for s in b.generators() {
        check_automorphism(g.geometry(), s)?;
    }
    if !b.contains_group(g.group()) {
        return Err(Error::PreconditionUnmet("the overgroup does not contain the geometry's group".into()));
    }
    let geometry = g.geometry();
    let super_strong = geometry.num_points() == geometry.num_lines() && geometry.is_super_strong()?.nonsingular;
    if !super_strong && geometry.is_symmetric_design().is_none() {
        return Err(Error::PreconditionUnmet("geometry is neither super strong nor a symmetric 2-design".into()));
    }
    let extended = DGeometry { geometry: geometry.clone(), group: b.clone() };
    let t = extended.triple(0, 0)?;
    if !check_ac(&t).holds {
        return Err(Error::PreconditionUnmet("almost-conjugacy cross-check failed for the overgroup".into()));
    }
    Ok(t)
}

/// `(⟨A, δ⟩, A_x, A_Y)` for a duality `δ`, with `x` the point 0 and `Y` the line 0.
pub fn duality_extension(g: &DGeometry, duality: &Duality) -> Result<GSTriple> {
    if !duality.is_duality_of(g.geometry()) {
        return Err(Error::NotAnAutomorphism("not a duality of the geometry".into()));
    }
    let mu = g.num_points();
    let mut gens = g.group().generators().to_vec();
    gens.push(duality.as_perm());
    let extended = PermGroup::from_generators(mu + g.num_lines(), gens)?;
    let left = extended.subgroup(g.group().stabilizer(0).generators().to_vec())?;
    let right = extended.subgroup(g.group().stabilizer(mu).generators().to_vec())?;
    GSTriple::new(extended, left, right)
}
