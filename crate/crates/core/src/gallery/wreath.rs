//! Wreath-product triples `(A ≀ T, A_x ≀ T, A_L ≀ T)` on the imprimitive
//! block domain: `n` copies of the base domain, permuted as blocks by `T`.

use crate::error::{Error, Result};
use crate::group::{element_cap, PermGroup};
use crate::perm::Perm;
use crate::triple::GSTriple;

#[derive(Clone, Debug)]
pub struct WreathSpec {
    pub base: GSTriple,
    pub copies: usize,
    /// Transitive group of degree `copies` permuting the blocks.
    pub top: PermGroup,
}

/// Permutation of `copies · d` points moving block `i` to block `t(i)`.
fn block_permutation(t: &Perm, d: usize) -> Perm {
    let n = t.degree();
    let images: Vec<usize> = (0..n * d).map(|x| t.apply(x / d) * d + x % d).collect();
    Perm::from_usize(&images).expect("block permutation")
}

/// Base generators copied into every block, plus the block permutations of `top`.
fn wreath_generators(base: &[Perm], d: usize, top: &PermGroup) -> Vec<Perm> {
    let n = top.degree();
    let mut gens: Vec<Perm> = (0..n).flat_map(|i| base.iter().map(move |g| g.embed(n * d, i * d))).collect();
    gens.extend(top.generators().iter().map(|t| block_permutation(t, d)));
    gens
}

pub fn wreath_order(base: usize, copies: usize, top: usize) -> Option<usize> {
    base.checked_pow(copies as u32)?.checked_mul(top)
}

pub fn wreath_triple(spec: &WreathSpec) -> Result<GSTriple> {
    let WreathSpec { base, copies, top } = spec;
    let n = *copies;
    if n < 2 {
        return Err(Error::DegenerateParameters(format!("wreath products need at least 2 copies, got {n}")));
    }
    if top.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: top.degree() });
    }
    if !top.is_transitive_on(0..n) {
        return Err(Error::NotTransitive("blocks"));
    }
    let cap = element_cap();
    let expected = wreath_order(base.group().order(), n, top.order()).filter(|&o| o <= cap);
    let Some(expected) = expected else { return Err(Error::CapExceeded { cap }) };
    let d = base.group().degree();
    let wreathe = |g: &PermGroup| wreath_generators(g.generators(), d, top);
    let group = PermGroup::from_generators(n * d, wreathe(base.group()))?;
    if group.order() != expected {
        return Err(Error::PreconditionUnmet(format!(
            "wreath order {} differs from |A|^n|T| = {expected}",
            group.order()
        )));
    }
    let left = group.subgroup(wreathe(base.left()))?;
    let right = group.subgroup(wreathe(base.right()))?;
    GSTriple::new(group, left, right)
}
