//! Isomorphism of triples: an isomorphism `φ: G₁ → G₂` carrying `U₁` onto a
//! conjugate of `U₂` and `V₁` onto a conjugate of `V₂`.
//!
//! The search assigns images to a short generating set of `G₁`, pruned by
//! per-class invariants (element order, class size and the fixed-point
//! counts on both coset spaces, all of which an isomorphism of triples must
//! preserve). The first generator only ranges over class representatives:
//! composing with an inner automorphism of `G₂` keeps the conjugacy
//! conditions intact.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::triple::{conjugating_element, GSTriple};

pub const DEFAULT_ISOMORPHISM_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Generator images of an isomorphism found by [`are_isomorphic`].
#[derive(Clone, Debug)]
pub struct TripleIsomorphism {
    pub generators: Vec<Perm>,
    pub images: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub struct IsomorphismResult {
    pub decision: Decision,
    pub witness: Option<TripleIsomorphism>,
    pub candidates_examined: u64,
}

type Signature = (u64, usize, usize, usize);

struct Invariants {
    by_class: Vec<Signature>,
}

impl Invariants {
    fn new(t: &GSTriple) -> Result<Self> {
        let group = t.group();
        let left = t.left_action()?;
        let right = t.right_action()?;
        let by_class = group
            .conjugacy_classes()
            .iter()
            .map(|c| {
                let rep = group.element(c.representative);
                Ok((c.element_order, c.size(), left.fixed_points(rep)?, right.fixed_points(rep)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Invariants { by_class })
    }

    fn of(&self, group: &PermGroup, g: &Perm) -> Signature {
        let i = group.index_of(g).expect("group element");
        self.by_class[group.conjugacy_classes().class_of(i)]
    }

    fn sorted(&self) -> Vec<Signature> {
        let mut v = self.by_class.clone();
        v.sort_unstable();
        v
    }
}

/// A generating set with at most two elements when one is found quickly.
fn short_generating_set(group: &PermGroup) -> Vec<Perm> {
    let given = group.generators();
    if given.len() <= 2 {
        return given.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let a = group.element(rng.gen_range(0..group.order())).clone();
        let b = group.element(rng.gen_range(0..group.order())).clone();
        let cap = group.order();
        if let Ok(h) = PermGroup::from_generators_capped(group.degree(), vec![a.clone(), b.clone()], cap) {
            if h.order() == group.order() {
                return vec![a, b];
            }
        }
    }
    given.to_vec()
}

/// Extends generator images to a map on all of `G₁`; `None` unless it is
/// an injective homomorphism.
fn extend_to_isomorphism(g1: &PermGroup, gens: &[Perm], g2: &PermGroup, images: &[Perm]) -> Option<Vec<u32>> {
    let n = g1.order();
    let mut phi = vec![u32::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    let mut used = HashSet::with_capacity(n);
    used.insert(0u32);
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = g2.element(phi[x] as usize);
        for (s, t) in gens.iter().zip(images) {
            let y = g1.index_of(&s.compose(g1.element(x)))?;
            let fy = g2.index_of(&t.compose(fx))? as u32;
            if phi[y] == u32::MAX {
                if !used.insert(fy) {
                    return None;
                }
                phi[y] = fy;
                queue.push(y);
            } else if phi[y] != fy {
                return None;
            }
        }
    }
    (queue.len() == n).then_some(phi)
}

fn image_subgroup(g1: &PermGroup, g2: &PermGroup, phi: &[u32], sub: &PermGroup) -> Result<PermGroup> {
    let gens =
        sub.generators().iter().map(|u| g2.element(phi[g1.index_of(u).expect("subgroup")] as usize).clone()).collect();
    Ok(g2.subgroup(gens)?.into_group())
}

/// Decides whether two triples are isomorphic within `budget` candidate generator assignments.
pub fn are_isomorphic_with_budget(t1: &GSTriple, t2: &GSTriple, budget: u64) -> Result<IsomorphismResult> {
    let no = |examined| Ok(IsomorphismResult { decision: Decision::No, witness: None, candidates_examined: examined });
    let (g1, g2) = (t1.group(), t2.group());
    if g1.order() != g2.order() || t1.left().order() != t2.left().order() || t1.right().order() != t2.right().order() {
        return no(0);
    }
    let inv1 = Invariants::new(t1)?;
    let inv2 = Invariants::new(t2)?;
    if inv1.sorted() != inv2.sorted() {
        return no(0);
    }
    let gens = short_generating_set(g1);
    if gens.is_empty() {
        // both groups trivial
        return Ok(IsomorphismResult {
            decision: Decision::Yes,
            witness: Some(TripleIsomorphism { generators: vec![], images: vec![] }),
            candidates_examined: 1,
        });
    }
    let sig: Vec<Signature> = gens.iter().map(|s| inv1.of(g1, s)).collect();
    let pair_sig: Vec<Vec<Signature>> =
        gens.iter().map(|a| gens.iter().map(|b| inv1.of(g1, &a.compose(b))).collect()).collect();

    let classes2 = g2.conjugacy_classes();
    let first: Vec<Perm> = classes2
        .iter()
        .enumerate()
        .filter(|(i, _)| inv2.by_class[*i] == sig[0])
        .map(|(_, c)| g2.element(c.representative).clone())
        .collect();
    let pools: Vec<Vec<Perm>> =
        sig[1..].iter().map(|s| g2.elements().iter().filter(|x| inv2.of(g2, x) == *s).cloned().collect()).collect();

    let mut examined = 0u64;
    let mut images: Vec<Perm> = Vec::with_capacity(gens.len());
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for f in &first {
        images.clear();
        images.push(f.clone());
        stack.clear();
        stack.push((1, 0));
        while let Some((level, next)) = stack.pop() {
            images.truncate(level);
            if level == gens.len() {
                examined += 1;
                if examined > budget {
                    return Ok(IsomorphismResult {
                        decision: Decision::Undecided,
                        witness: None,
                        candidates_examined: examined,
                    });
                }
                if let Some(phi) = extend_to_isomorphism(g1, &gens, g2, &images) {
                    let u = image_subgroup(g1, g2, &phi, t1.left())?;
                    let v = image_subgroup(g1, g2, &phi, t1.right())?;
                    if conjugating_element(g2, &u, t2.left()).is_some()
                        && conjugating_element(g2, &v, t2.right()).is_some()
                    {
                        return Ok(IsomorphismResult {
                            decision: Decision::Yes,
                            witness: Some(TripleIsomorphism { generators: gens, images }),
                            candidates_examined: examined,
                        });
                    }
                }
                continue;
            }
            let pool = &pools[level - 1];
            let mut k = next;
            while k < pool.len() {
                let cand = &pool[k];
                k += 1;
                let consistent = (0..level).all(|j| {
                    inv2.of(g2, &images[j].compose(cand)) == pair_sig[j][level]
                        && inv2.of(g2, &cand.compose(&images[j])) == pair_sig[level][j]
                });
                if consistent {
                    stack.push((level, k));
                    images.push(cand.clone());
                    stack.push((level + 1, 0));
                    break;
                }
            }
        }
    }
    no(examined)
}

pub fn are_isomorphic(t1: &GSTriple, t2: &GSTriple) -> Result<IsomorphismResult> {
    are_isomorphic_with_budget(t1, t2, DEFAULT_ISOMORPHISM_BUDGET)
}
