//! Transitive actions on left cosets, fixed points and primitivity.

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Perm;

/// The action of `G` by left translation on the left cosets `G/H`.
///
/// Cosets are labelled by their lexicographically least element, in
/// ascending order, so coset 0 is `H` itself.
#[derive(Clone, Debug)]
pub struct PermutationAction {
    group: PermGroup,
    subgroup: Subgroup,
    representatives: Vec<Perm>,
    coset_of: Vec<u32>,
    generator_images: Vec<Perm>,
}

/// Checks `H ≤ G`.
pub fn require_subgroup(group: &PermGroup, subgroup: &PermGroup) -> Result<()> {
    if subgroup.degree() != group.degree() || !group.contains_group(subgroup) {
        return Err(Error::NotSubgroup);
    }
    Ok(())
}

impl PermutationAction {
    pub fn on_cosets(group: &PermGroup, subgroup: &Subgroup) -> Result<Self> {
        require_subgroup(group, subgroup)?;
        let n = group.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut representatives = Vec::with_capacity(n / subgroup.order());
        for (i, x) in group.elements().iter().enumerate() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let id = representatives.len() as u32;
            representatives.push(x.clone());
            for h in subgroup.elements() {
                let j = group.index_of(&x.compose(h)).ok_or(Error::NotSubgroup)?;
                coset_of[j] = id;
            }
        }
        let mut action = PermutationAction {
            group: group.clone(),
            subgroup: subgroup.clone(),
            representatives,
            coset_of,
            generator_images: Vec::new(),
        };
        action.generator_images = group.generators().iter().map(|g| action.image_unchecked(g)).collect();
        Ok(action)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Number of cosets, `[G : H]`.
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }

    /// Coset containing the element with the given group index.
    pub fn coset_of_index(&self, element: usize) -> usize {
        self.coset_of[element] as usize
    }

    pub fn coset_of(&self, g: &Perm) -> Result<usize> {
        let i = self.group.index_of(g).ok_or(Error::NotMember)?;
        Ok(self.coset_of_index(i))
    }

    /// `g · (x H) = (g x) H`.
    pub fn act(&self, g: &Perm, point: usize) -> Result<usize> {
        self.coset_of(&g.compose(&self.representatives[point]))
    }

    fn image_unchecked(&self, g: &Perm) -> Perm {
        let images = self
            .representatives
            .iter()
            .map(|r| self.coset_of[self.group.index_of(&g.compose(r)).expect("closed group")])
            .collect();
        Perm::from_images_unchecked(images)
    }

    /// The permutation of cosets induced by `g`.
    pub fn image(&self, g: &Perm) -> Result<Perm> {
        if !self.group.contains(g) {
            return Err(Error::NotMember);
        }
        Ok(self.image_unchecked(g))
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    /// Number of cosets fixed by `g`.
    pub fn fixed_points(&self, g: &Perm) -> Result<usize> {
        if !self.group.contains(g) {
            return Err(Error::NotMember);
        }
        Ok(self.image_unchecked(g).fixed_point_count())
    }

    /// Whether no nontrivial block system exists.
    pub fn is_primitive(&self) -> Result<bool> {
        let degree = self.degree();
        if degree < 2 {
            return Err(Error::DegenerateAction(degree));
        }
        Ok(is_primitive_on(degree, &self.generator_images))
    }

    /// Kernel of the action, which is the core of `H` in `G`.
    pub fn kernel(&self) -> Subgroup {
        let reps = &self.representatives;
        let group = &self.group;
        let coset_of = &self.coset_of;
        self.subgroup.filter_subgroup(|h| {
            reps.iter()
                .enumerate()
                .all(|(i, r)| coset_of[group.index_of(&h.compose(r)).expect("closed group")] as usize == i)
        })
    }
}

pub fn coset_action(group: &PermGroup, subgroup: &Subgroup) -> Result<PermutationAction> {
    PermutationAction::on_cosets(group, subgroup)
}

/// `Fix(g) = |C_G(g)| · |g^G ∩ H| / |H|`, computed from class data alone.
pub fn fixed_point_formula(group: &PermGroup, subgroup: &Subgroup, g: &Perm) -> Result<usize> {
    require_subgroup(group, subgroup)?;
    let class = group.class_index(g)?;
    let centralizer = group.centralizer_order(g)?;
    let classes = group.conjugacy_classes();
    let meet = subgroup
        .elements()
        .iter()
        .filter(|h| classes.class_of(group.index_of(h).expect("subgroup element")) == class)
        .count();
    let numerator = centralizer as u128 * meet as u128;
    let denominator = subgroup.order() as u128;
    if !numerator.is_multiple_of(denominator) {
        return Err(Error::NonIntegralResult { numerator, denominator });
    }
    Ok((numerator / denominator) as usize)
}

/// Largest subgroup of `H` normal in `G`.
pub fn core(group: &PermGroup, subgroup: &Subgroup) -> Result<Subgroup> {
    Ok(coset_action(group, subgroup)?.kernel())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Finest block system in which `a` and `b` share a block; returns block labels.
pub fn minimal_block_system(degree: usize, generators: &[Perm], a: usize, b: usize) -> Vec<usize> {
    let mut uf = UnionFind::new(degree);
    let mut pending = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = pending.pop() {
        for s in generators {
            let (sx, sy) = (s.apply(x), s.apply(y));
            if uf.union(sx, sy) {
                pending.push((sx, sy));
            }
        }
    }
    (0..degree).map(|i| uf.find(i)).collect()
}

/// Primitivity of a transitive group on `0..degree` given by generators.
pub fn is_primitive_on(degree: usize, generators: &[Perm]) -> bool {
    (1..degree).all(|b| {
        let blocks = minimal_block_system(degree, generators, 0, b);
        blocks.iter().all(|&r| r == blocks[0])
    })
}
