//! Finite permutation groups by full element enumeration.
//!
//! Groups are small enough (at most [`DEFAULT_ELEMENT_CAP`] elements) that
//! every element is stored explicitly, sorted lexicographically by image
//! array. Conjugacy classes are computed on first use and cached.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_ELEMENT_CAP`].
pub const ELEMENT_CAP_ENV: &str = "GSDRUM_ELEMENT_CAP";

pub fn element_cap() -> usize {
    std::env::var(ELEMENT_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ELEMENT_CAP)
}

/// Group file: `{"name": str, "degree": int, "generators": [[int, ...], ...]}`
/// with 0-based image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupFile {
    pub fn from_group(name: impl Into<String>, group: &PermGroup) -> Self {
        GroupFile {
            name: name.into(),
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.images().to_vec()).collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::from_generators(self.degree, parse_generators(&self.generators)?)
    }
}

/// Image arrays to permutations.
pub fn parse_generators(images: &[Vec<u32>]) -> Result<Vec<Perm>> {
    images.iter().map(|g| Perm::new(g.clone())).collect()
}

/// A finite permutation group with its full element list.
///
/// Cloning is cheap; the element table is shared.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    classes: OnceLock<ConjugacyClasses>,
}

/// Conjugacy classes, each keyed by its lexicographically least member.
#[derive(Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Index (into the group's element list) of the least member.
    pub representative: usize,
    /// Element indices, ascending.
    pub members: Vec<u32>,
    pub element_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConjugacyClass> {
        self.classes.iter()
    }

    pub fn get(&self, class: usize) -> &ConjugacyClass {
        &self.classes[class]
    }

    /// Class index of the element with the given element index.
    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }
}

impl PermGroup {
    /// Closure of `generators` under composition, with the default cap.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::from_generators_capped(degree, generators, element_cap())
    }

    pub fn from_generators_capped(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, u32> = HashMap::new();
        let mut elements = vec![identity.clone()];
        seen.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let y = s.compose(&elements[i]);
                if !seen.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(Self::from_closed_set(degree, generators, elements))
    }

    /// Builds a group from an element set already known to be closed.
    pub(crate) fn from_closed_set(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        PermGroup { inner: Arc::new(GroupData { degree, generators, elements, index, classes: OnceLock::new() }) }
    }

    /// Group generated by a closed element set, with a small generating set extracted greedily.
    pub(crate) fn from_closed_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let generators = greedy_generators(degree, &elements);
        Self::from_closed_set(degree, generators, elements)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_closed_set(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    /// Elements in ascending lexicographic order; index 0 is the identity.
    pub fn elements(&self) -> &[Perm] {
        &self.inner.elements
    }

    pub fn element(&self, index: usize) -> &Perm {
        &self.inner.elements[index]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.inner.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.inner.index.contains_key(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> &Perm {
        &self.inner.elements[0]
    }

    fn require_member(&self, g: &Perm) -> Result<usize> {
        self.index_of(g).ok_or(Error::NotMember)
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.inner.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let gens: Vec<(Perm, Perm)> = self.generators().iter().map(|s| (s.clone(), s.inverse())).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        // elements ascend, so the first unclassified element is its class's least member
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_of[start] = id;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = self.element(members[head] as usize).clone();
                head += 1;
                for (s, s_inv) in &gens {
                    let y = s_inv.compose(&x.compose(s));
                    let j = self.inner.index[&y] as usize;
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        members.push(j as u32);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let classes = raw
            .into_iter()
            .map(|members| {
                let representative = members[0] as usize;
                ConjugacyClass { element_order: self.element(representative).order(), representative, members }
            })
            .collect();
        ConjugacyClasses { class_of, classes }
    }

    /// Class index of `g`.
    pub fn class_index(&self, g: &Perm) -> Result<usize> {
        let i = self.require_member(g)?;
        Ok(self.conjugacy_classes().class_of(i))
    }

    /// `g^G = { h⁻¹ g h : h ∈ G }`, ascending.
    pub fn conjugacy_class(&self, g: &Perm) -> Result<Vec<Perm>> {
        let c = self.class_index(g)?;
        Ok(self.conjugacy_classes().get(c).members.iter().map(|&i| self.element(i as usize).clone()).collect())
    }

    /// `|C_G(g)|`, via orbit–stabilizer from the cached class size.
    pub fn centralizer_order(&self, g: &Perm) -> Result<usize> {
        let c = self.class_index(g)?;
        Ok(self.order() / self.conjugacy_classes().get(c).size())
    }

    /// Brute-force centralizer order; used to cross-check the class tables.
    pub fn centralizer_order_brute(&self, g: &Perm) -> Result<usize> {
        self.require_member(g)?;
        Ok(self.elements().iter().filter(|h| g.compose(h) == h.compose(g)).count())
    }

    /// Subgroup generated by `generators`, each of which must lie in `self`.
    pub fn subgroup(&self, generators: Vec<Perm>) -> Result<Subgroup> {
        for g in &generators {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch { expected: self.degree(), found: g.degree() });
            }
            if !self.contains(g) {
                return Err(Error::NotSubgroup);
            }
        }
        let group = PermGroup::from_generators_capped(self.degree(), generators, self.order().max(1))?;
        Ok(Subgroup { group })
    }

    /// Subgroup whose elements are exactly those of `self` satisfying `keep`.
    /// The predicate must select a subgroup (e.g. a stabilizer).
    pub fn filter_subgroup(&self, keep: impl Fn(&Perm) -> bool) -> Subgroup {
        let elements: Vec<Perm> = self.elements().iter().filter(|g| keep(g)).cloned().collect();
        Subgroup { group: PermGroup::from_closed_elements(self.degree(), elements) }
    }

    /// The whole group viewed as a subgroup of itself.
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup { group: self.clone() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { group: PermGroup::trivial(self.degree()) }
    }

    /// Stabilizer of a point of the natural domain.
    pub fn stabilizer(&self, point: usize) -> Subgroup {
        self.filter_subgroup(|g| g.apply(point) == point)
    }

    /// Orbit of `point` under the natural action, ascending.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for s in self.generators() {
                let y = s.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Whether the group is transitive on the (invariant) range of points.
    pub fn is_transitive_on(&self, range: std::ops::Range<usize>) -> bool {
        if range.is_empty() {
            return true;
        }
        self.orbit(range.start) == range.collect::<Vec<_>>()
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree() == self.degree() && other.generators().iter().all(|g| self.contains(g))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.elements() == other.elements()
    }
}

impl Eq for PermGroup {}

/// A subgroup of some parent group, validated at construction.
///
/// The parent is not stored; operations taking `(G, H)` re-check containment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: PermGroup,
}

impl Subgroup {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    pub fn is_subgroup_of(&self, parent: &PermGroup) -> bool {
        parent.contains_group(&self.group)
    }
}

impl std::ops::Deref for Subgroup {
    type Target = PermGroup;
    fn deref(&self) -> &PermGroup {
        &self.group
    }
}

/// Extracts generators from a closed element list by greedy closure growth.
fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut closure: std::collections::HashSet<Perm> = std::collections::HashSet::new();
    closure.insert(Perm::identity(degree));
    // larger element orders first tends to give short generating sets
    let mut candidates: Vec<&Perm> = elements.iter().filter(|g| !g.is_identity()).collect();
    candidates.sort_by_key(|g| std::cmp::Reverse(g.order()));
    for g in candidates {
        if closure.len() == elements.len() {
            break;
        }
        if closure.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let mut frontier: Vec<Perm> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = s.compose(&x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Named constructors for small groups used throughout the tests and the CLI.
pub mod named {
    use super::*;

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        PermGroup::from_generators(n, gens).expect("symmetric group within cap")
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens = (2..n as u32).map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
        PermGroup::from_generators(n, gens).expect("alternating group within cap")
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gens = if n >= 2 { vec![Perm::from_cycles(n, &[&cycle]).unwrap()] } else { vec![] };
        PermGroup::from_generators(n, gens).expect("cyclic group within cap")
    }
}
