//! Rank-two incidence geometries and drum geometries.
//!
//! A drum geometry pairs an incidence structure with a group acting on
//! points and lines simultaneously. The group is stored as permutations of
//! the disjoint union `points ⊔ lines`, points first.

mod derived;
mod search;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::action::coset_action;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::scalar::ExactScalar;
use crate::triple::GSTriple;

pub use derived::{derived_triple_overgroup, derived_triple_subgroup, duality_extension};
pub use search::{automorphism_group, find_duality, isomorphisms, Duality, SearchOutcome, DEFAULT_SEARCH_BUDGET};

/// Points × lines incidence relation, row-major by point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    points: usize,
    lines: usize,
    incidence: Vec<bool>,
}

/// Geometry file: `{"points": int, "lines": int, "incident": [[p, l], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFile {
    pub points: usize,
    pub lines: usize,
    pub incident: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParameters {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperStrong {
    pub nonsingular: bool,
    pub determinant: BigInt,
}

impl IncidenceGeometry {
    pub fn new(points: usize, lines: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = IncidenceGeometry { points, lines, incidence: vec![false; points * lines] };
        for (p, l) in pairs {
            if p >= points || l >= lines {
                return Err(Error::Format(format!("incidence ({p}, {l}) out of range")));
            }
            g.incidence[p * lines + l] = true;
        }
        Ok(g)
    }

    pub fn from_fn(points: usize, lines: usize, incident: impl Fn(usize, usize) -> bool) -> Self {
        let incidence =
            (0..points).flat_map(|p| (0..lines).map(move |l| (p, l))).map(|(p, l)| incident(p, l)).collect();
        IncidenceGeometry { points, lines, incidence }
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn num_lines(&self) -> usize {
        self.lines
    }

    #[inline]
    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.incidence[point * self.lines + line]
    }

    /// Toggles one incidence; used by mutation tests.
    pub fn flip(&mut self, point: usize, line: usize) {
        let i = point * self.lines + line;
        self.incidence[i] = !self.incidence[i];
    }

    pub fn lines_on(&self, point: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.lines).filter(move |&l| self.incident(point, l))
    }

    pub fn points_on(&self, line: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.points).filter(move |&p| self.incident(p, line))
    }

    pub fn point_degree(&self, point: usize) -> usize {
        self.lines_on(point).count()
    }

    pub fn line_degree(&self, line: usize) -> usize {
        self.points_on(line).count()
    }

    pub fn incident_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points).flat_map(|p| self.lines_on(p).map(move |l| (p, l))).collect()
    }

    /// Swaps the roles of points and lines.
    pub fn dual(&self) -> Self {
        Self::from_fn(self.lines, self.points, |l, p| self.incident(p, l))
    }

    /// `a_ij = 1` iff point `i` is incident with line `j`.
    pub fn incidence_matrix<T: ExactScalar>(&self) -> Matrix<T> {
        Matrix::from_fn(self.points, self.lines, |i, j| if self.incident(i, j) { T::one() } else { T::zero() })
    }

    /// Nonsingularity of the incidence matrix, with the exact determinant.
    pub fn is_super_strong(&self) -> Result<SuperStrong> {
        let determinant = self.incidence_matrix::<BigInt>().determinant()?;
        Ok(SuperStrong { nonsingular: !determinant.is_zero(), determinant })
    }

    /// Parameters `(v, k, λ)` if this is a symmetric 2-design.
    pub fn is_symmetric_design(&self) -> Option<DesignParameters> {
        let v = self.points;
        if v < 2 || self.lines != v {
            return None;
        }
        let k = self.line_degree(0);
        if (0..v).any(|l| self.line_degree(l) != k) || (0..v).any(|p| self.point_degree(p) != k) {
            return None;
        }
        let common_lines = |a: usize, b: usize| (0..v).filter(|&l| self.incident(a, l) && self.incident(b, l)).count();
        let common_points = |a: usize, b: usize| (0..v).filter(|&p| self.incident(p, a) && self.incident(p, b)).count();
        let lambda = common_lines(0, 1);
        for a in 0..v {
            for b in a + 1..v {
                if common_lines(a, b) != lambda || common_points(a, b) != lambda {
                    return None;
                }
            }
        }
        Some(DesignParameters { v, k, lambda })
    }

    pub fn to_file(&self) -> GeometryFile {
        GeometryFile {
            points: self.points,
            lines: self.lines,
            incident: self.incident_pairs().into_iter().map(|(p, l)| [p, l]).collect(),
        }
    }

    pub fn from_file(file: &GeometryFile) -> Result<Self> {
        Self::new(file.points, file.lines, file.incident.iter().map(|&[p, l]| (p, l)))
    }

    /// Graphviz rendering of the bipartite incidence graph.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph incidence {\n");
        for p in 0..self.points {
            let _ = writeln!(s, "  p{p} [shape=circle];");
        }
        for l in 0..self.lines {
            let _ = writeln!(s, "  l{l} [shape=box];");
        }
        for (p, l) in self.incident_pairs() {
            let _ = writeln!(s, "  p{p} -- l{l};");
        }
        s.push_str("}\n");
        s
    }
}

/// `P A = A L` for the point and line permutations of `α`, where
/// `p_ij = 1` iff `α(x_i) = x_j` and likewise for lines.
pub fn pa_eq_al(geometry: &IncidenceGeometry, point_perm: &Perm, line_perm: &Perm) -> bool {
    let a = geometry.incidence_matrix::<BigInt>();
    let p = Matrix::<BigInt>::permutation(point_perm);
    let l = Matrix::<BigInt>::permutation(line_perm);
    match (p.mul(&a), a.mul(&l)) {
        (Ok(pa), Ok(al)) => pa == al,
        _ => false,
    }
}

/// An element fixing points and lines in unequal (or unequally empty) numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixWitness {
    pub element: Perm,
    pub fixed_points: usize,
    pub fixed_lines: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixCheck {
    pub holds: bool,
    pub classes_checked: usize,
    pub witness: Option<FixWitness>,
}

/// A geometry with a group of automorphisms acting on `points ⊔ lines`.
#[derive(Clone, Debug)]
pub struct DGeometry {
    geometry: IncidenceGeometry,
    group: PermGroup,
}

impl DGeometry {
    /// Validates that every generator preserves both sorts and the incidence.
    pub fn new(geometry: IncidenceGeometry, group: PermGroup) -> Result<Self> {
        let (mu, nu) = (geometry.points, geometry.lines);
        if group.degree() != mu + nu {
            return Err(Error::DegreeMismatch { expected: mu + nu, found: group.degree() });
        }
        for g in group.generators() {
            check_automorphism(&geometry, g)?;
        }
        Ok(DGeometry { geometry, group })
    }

    pub fn from_generators(geometry: IncidenceGeometry, generators: Vec<Perm>) -> Result<Self> {
        let degree = geometry.points + geometry.lines;
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
            check_automorphism(&geometry, g)?;
        }
        let group = PermGroup::from_generators(degree, generators)?;
        Ok(DGeometry { geometry, group })
    }

    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geometry
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn num_points(&self) -> usize {
        self.geometry.points
    }

    pub fn num_lines(&self) -> usize {
        self.geometry.lines
    }

    pub fn point_perm(&self, g: &Perm) -> Perm {
        g.restrict(0..self.num_points())
    }

    pub fn line_perm(&self, g: &Perm) -> Perm {
        g.restrict(self.num_points()..self.num_points() + self.num_lines())
    }

    /// Index of `line` in the combined domain.
    pub fn line_vertex(&self, line: usize) -> usize {
        self.num_points() + line
    }

    pub fn fixed_counts(&self, g: &Perm) -> (usize, usize) {
        let mu = self.num_points();
        let total = mu + self.num_lines();
        let points = (0..mu).filter(|&i| g.apply(i) == i).count();
        let lines = (mu..total).filter(|&i| g.apply(i) == i).count();
        (points, lines)
    }

    /// (TR): transitive on points and on lines.
    pub fn is_transitive(&self) -> bool {
        let mu = self.num_points();
        self.group.is_transitive_on(0..mu) && self.group.is_transitive_on(mu..mu + self.num_lines())
    }

    fn check_classes(&self, bad: impl Fn(usize, usize) -> bool) -> FixCheck {
        let classes = self.group.conjugacy_classes();
        let witness = classes.iter().find_map(|c| {
            let g = self.group.element(c.representative);
            let (p, l) = self.fixed_counts(g);
            bad(p, l).then(|| FixWitness { element: g.clone(), fixed_points: p, fixed_lines: l })
        });
        FixCheck { holds: witness.is_none(), classes_checked: classes.len(), witness }
    }

    /// (D): an element fixes some point iff it fixes some line.
    pub fn verify_d(&self) -> FixCheck {
        self.check_classes(|p, l| (p == 0) != (l == 0))
    }

    /// (SD): an element fixes exactly as many points as lines.
    pub fn verify_sd(&self) -> FixCheck {
        self.check_classes(|p, l| p != l)
    }

    /// The triple `(A, A_x, A_Y)`.
    pub fn triple(&self, point: usize, line: usize) -> Result<GSTriple> {
        let mu = self.num_points();
        if !self.group.is_transitive_on(0..mu) {
            return Err(Error::NotTransitive("points"));
        }
        if !self.group.is_transitive_on(mu..mu + self.num_lines()) {
            return Err(Error::NotTransitive("lines"));
        }
        let y = self.line_vertex(line);
        GSTriple::new(self.group.clone(), self.group.stabilizer(point), self.group.stabilizer(y))
    }

    /// Same as [`DGeometry::triple`].
    pub fn triple_from_geometry(&self, point: usize, line: usize) -> Result<GSTriple> {
        self.triple(point, line)
    }

    /// `P A = A L` for the permutation matrices of `alpha`.
    pub fn verify_pa_eq_al(&self, alpha: &Perm) -> Result<bool> {
        if !self.group.contains(alpha) {
            return Err(Error::NotMember);
        }
        Ok(pa_eq_al(&self.geometry, &self.point_perm(alpha), &self.line_perm(alpha)))
    }
}

fn check_automorphism(geometry: &IncidenceGeometry, g: &Perm) -> Result<()> {
    let mu = geometry.points;
    if (0..mu).any(|i| g.apply(i) >= mu) {
        return Err(Error::NotAnAutomorphism(format!("{g} maps a point to a line")));
    }
    for (p, l) in geometry.incident_pairs() {
        if !geometry.incident(g.apply(p), g.apply(mu + l) - mu) {
            return Err(Error::NotAnAutomorphism(format!("{g} breaks incidence of ({p}, {l})")));
        }
    }
    Ok(())
}

/// The coset geometry of a triple: points `G/U`, lines `G/V`, `aU` on `bV`
/// iff the cosets meet, with `G` acting by left translation.
pub fn build_drum_geometry(t: &GSTriple) -> Result<DGeometry> {
    let points = coset_action(t.group(), t.left())?;
    let lines = coset_action(t.group(), t.right())?;
    let (mu, nu) = (points.degree(), lines.degree());
    let mut incidence = vec![false; mu * nu];
    for i in 0..t.group().order() {
        incidence[points.coset_of_index(i) * nu + lines.coset_of_index(i)] = true;
    }
    let geometry = IncidenceGeometry { points: mu, lines: nu, incidence };
    let gens = points.generator_images().iter().zip(lines.generator_images()).map(|(p, l)| p.direct_sum(l)).collect();
    let group = PermGroup::from_generators(mu + nu, gens)?;
    Ok(DGeometry { geometry, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    fn pentagon() -> DGeometry {
        let n = 5;
        let geometry = IncidenceGeometry::from_fn(n, n, |p, l| p == l || p == (l + 1) % n);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).chain((0..n).map(|i| n + (i + 1) % n)).collect();
        DGeometry::from_generators(geometry, vec![Perm::from_usize(&rot).unwrap()]).unwrap()
    }

    #[test]
    fn degenerate_triple_gives_single_flag() {
        let s3 = symmetric(3);
        let t = GSTriple::new(s3.clone(), s3.as_subgroup(), s3.as_subgroup()).unwrap();
        let g = build_drum_geometry(&t).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (1, 1));
        assert!(g.geometry().incident(0, 0));
    }

    #[test]
    fn rotation_group_of_pentagon() {
        let g = pentagon();
        assert!(g.is_transitive());
        assert!(g.verify_sd().holds);
        assert_eq!(g.geometry().incidence_matrix::<BigInt>().rows(), 5);
        let ss = g.geometry().is_super_strong().unwrap();
        assert_eq!(ss.determinant, BigInt::from(2));
        assert!(g.geometry().is_symmetric_design().is_none());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let geometry = IncidenceGeometry::from_fn(3, 3, |p, l| p == l);
        let swap_point_only = Perm::from_cycles(6, &[&[0, 1]]).unwrap();
        assert!(matches!(
            DGeometry::from_generators(geometry.clone(), vec![swap_point_only]),
            Err(Error::NotAnAutomorphism(_))
        ));
        let mix = Perm::from_cycles(6, &[&[0, 3]]).unwrap();
        assert!(DGeometry::from_generators(geometry, vec![mix]).is_err());
    }

    #[test]
    fn identity_only_group_is_sd() {
        let geometry = IncidenceGeometry::from_fn(3, 3, |p, l| p <= l);
        let g = DGeometry::new(geometry, PermGroup::trivial(6)).unwrap();
        assert!(g.verify_sd().holds);
        assert!(g.verify_d().holds);
        assert!(matches!(g.triple(0, 0), Err(Error::NotTransitive(_))));
    }

    #[test]
    fn one_by_one_incidence_matrix() {
        let g = IncidenceGeometry::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(g.incidence_matrix::<BigInt>(), Matrix::from_i64_rows(&[&[1]]).unwrap());
        assert!(g.is_super_strong().unwrap().nonsingular);
    }

    #[test]
    fn file_round_trip_and_dot() {
        let g = pentagon();
        let file = g.geometry().to_file();
        assert_eq!(IncidenceGeometry::from_file(&file).unwrap(), *g.geometry());
        let dot = g.geometry().to_dot();
        assert_eq!(dot.matches(" -- ").count(), 10);
    }

    #[test]
    fn non_square_is_not_super_strong_candidate() {
        let g = IncidenceGeometry::from_fn(2, 3, |_, _| true);
        assert_eq!(g.is_super_strong().unwrap_err(), Error::NotSquare { rows: 2, cols: 3 });
    }
}
