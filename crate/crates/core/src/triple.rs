//! Gassmann–Sunada triples `(G, U, V)`: elementwise and almost conjugacy,
//! the irreducibility flags and reduction to a faithful triple.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{core, coset_action, require_subgroup, PermutationAction};
use crate::error::Result;
use crate::group::{parse_generators, GroupFile, PermGroup, Subgroup};
use crate::perm::Perm;

/// A finite group with two distinguished subgroups.
#[derive(Clone, Debug)]
pub struct GSTriple {
    group: PermGroup,
    left: Subgroup,
    right: Subgroup,
}

impl GSTriple {
    pub fn new(group: PermGroup, left: Subgroup, right: Subgroup) -> Result<Self> {
        require_subgroup(&group, &left)?;
        require_subgroup(&group, &right)?;
        Ok(GSTriple { group, left, right })
    }

    pub fn from_generators(group: PermGroup, left: Vec<Perm>, right: Vec<Perm>) -> Result<Self> {
        let left = group.subgroup(left)?;
        let right = group.subgroup(right)?;
        Ok(GSTriple { group, left, right })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn swapped(&self) -> GSTriple {
        GSTriple { group: self.group.clone(), left: self.right.clone(), right: self.left.clone() }
    }

    pub fn left_index(&self) -> usize {
        self.group.order() / self.left.order()
    }

    pub fn right_index(&self) -> usize {
        self.group.order() / self.right.order()
    }

    pub fn left_action(&self) -> Result<PermutationAction> {
        coset_action(&self.group, &self.left)
    }

    pub fn right_action(&self) -> Result<PermutationAction> {
        coset_action(&self.group, &self.right)
    }
}

/// The group entry of a triple file: a path to a group file or the group inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Path(String),
    Inline(GroupFile),
}

/// Triple file: `{"group": <group file or inline>, "u_generators": [...], "v_generators": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFile {
    pub group: GroupSource,
    pub u_generators: Vec<Vec<u32>>,
    pub v_generators: Vec<Vec<u32>>,
}

impl TripleFile {
    /// Inline file for `t`, with the subgroups given by their generators.
    pub fn from_triple(name: impl Into<String>, t: &GSTriple) -> Self {
        let images = |s: &Subgroup| s.generators().iter().map(|g| g.images().to_vec()).collect();
        TripleFile {
            group: GroupSource::Inline(GroupFile::from_group(name, &t.group)),
            u_generators: images(&t.left),
            v_generators: images(&t.right),
        }
    }

    /// Builds the triple, resolving a group path with `load`.
    pub fn to_triple(&self, load: impl FnOnce(&str) -> Result<GroupFile>) -> Result<GSTriple> {
        let group = match &self.group {
            GroupSource::Inline(g) => g.to_group()?,
            GroupSource::Path(path) => load(path)?.to_group()?,
        };
        GSTriple::from_generators(group, parse_generators(&self.u_generators)?, parse_generators(&self.v_generators)?)
    }
}

/// A conjugacy class on which a class-wise comparison failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    pub representative: Perm,
    pub class_size: usize,
    pub left_count: usize,
    pub right_count: usize,
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class of {} (size {}) meets U in {} and V in {} elements",
            self.representative, self.class_size, self.left_count, self.right_count
        )
    }
}

/// Outcome of an exhaustive class-by-class comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCheck {
    pub holds: bool,
    pub classes_checked: usize,
    pub witness: Option<ClassWitness>,
}

/// `|C ∩ H|` for every conjugacy class `C` of `G`, in class order.
pub fn class_intersections(group: &PermGroup, subgroup: &PermGroup) -> Vec<usize> {
    let classes = group.conjugacy_classes();
    let mut counts = vec![0usize; classes.len()];
    for h in subgroup.elements() {
        let i = group.index_of(h).expect("subgroup element lies in the group");
        counts[classes.class_of(i)] += 1;
    }
    counts
}

fn compare_classes(t: &GSTriple, differs: impl Fn(usize, usize) -> bool) -> ClassCheck {
    let left = class_intersections(&t.group, &t.left);
    let right = class_intersections(&t.group, &t.right);
    let classes = t.group.conjugacy_classes();
    let witness = classes.iter().enumerate().find(|(i, _)| differs(left[*i], right[*i])).map(|(i, c)| ClassWitness {
        representative: t.group.element(c.representative).clone(),
        class_size: c.size(),
        left_count: left[i],
        right_count: right[i],
    });
    ClassCheck { holds: witness.is_none(), classes_checked: classes.len(), witness }
}

/// Almost conjugacy: `|C ∩ U| = |C ∩ V|` for every class `C`.
pub fn check_ac(t: &GSTriple) -> ClassCheck {
    compare_classes(t, |a, b| a != b)
}

/// Elementwise conjugacy: every class meets `U` iff it meets `V`.
pub fn check_ec(t: &GSTriple) -> ClassCheck {
    compare_classes(t, |a, b| (a == 0) != (b == 0))
}

/// Whether `g⁻¹ A g = B` for some `g ∈ G`.
pub fn conjugating_element(group: &PermGroup, a: &PermGroup, b: &PermGroup) -> Option<Perm> {
    if a.order() != b.order() {
        return None;
    }
    // equal orders, so g⁻¹ A g ⊆ B already forces equality
    group.elements().iter().find(|g| a.generators().iter().all(|x| b.contains(&x.conjugate_by(g)))).cloned()
}

/// Whether the two subgroups are conjugate in `G`.
pub fn check_conjugate(t: &GSTriple) -> bool {
    conjugating_element(&t.group, &t.left, &t.right).is_some()
}

/// One entry of a [`FlagReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub value: bool,
    /// On failure a concrete counterexample, on success the scope of the check.
    pub witness: String,
}

/// The triple's flags with per-flag witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub ec: bool,
    pub ac: bool,
    pub ff: bool,
    pub max: bool,
    pub pair: bool,
    pub conjugate: bool,
    pub witnesses: FlagWitnesses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagWitnesses {
    pub ec: String,
    pub ac: String,
    pub ff: String,
    pub max: String,
    pub pair: String,
    pub conjugate: String,
}

fn class_flag(check: ClassCheck) -> Flag {
    match check.witness {
        Some(w) => Flag { value: false, witness: w.to_string() },
        None => Flag { value: true, witness: format!("all {} conjugacy classes checked", check.classes_checked) },
    }
}

/// FF: the common core `core(U) ∩ core(V)` is trivial.
pub fn check_ff(t: &GSTriple) -> Result<Flag> {
    let core_left = core(&t.group, &t.left)?;
    let core_right = core(&t.group, &t.right)?;
    let common = core_left.filter_subgroup(|g| core_right.contains(g));
    Ok(if common.is_trivial() {
        Flag { value: true, witness: "core(U) ∩ core(V) is trivial".into() }
    } else {
        let gens: Vec<String> = common.generators().iter().map(|g| g.to_string()).collect();
        Flag {
            value: false,
            witness: format!("normal subgroup N = <{}> of order {} lies in U ∩ V", gens.join(", "), common.order()),
        }
    })
}

fn maximality(group: &PermGroup, sub: &Subgroup, name: &str) -> Result<(bool, String)> {
    let action = coset_action(group, sub)?;
    if action.degree() < 2 {
        return Ok((false, format!("{name} = G is not a proper subgroup")));
    }
    Ok(if action.is_primitive()? {
        (true, String::new())
    } else {
        (false, format!("G acts imprimitively on G/{name} (degree {})", action.degree()))
    })
}

/// MAX: both subgroups are maximal, i.e. both coset actions are primitive.
pub fn check_max(t: &GSTriple) -> Result<Flag> {
    let (l, lw) = maximality(&t.group, &t.left, "U")?;
    let (r, rw) = maximality(&t.group, &t.right, "V")?;
    Ok(match (l, r) {
        (true, true) => Flag { value: true, witness: "both coset actions are primitive".into() },
        (false, _) => Flag { value: false, witness: lw },
        (true, false) => Flag { value: false, witness: rw },
    })
}

pub fn check_pair(t: &GSTriple) -> Flag {
    let (l, r) = (t.left.order(), t.right.order());
    Flag { value: l == r, witness: format!("|U| = {l}, |V| = {r}") }
}

/// All flags together.
pub fn check_flags(t: &GSTriple) -> Result<FlagReport> {
    let ec = class_flag(check_ec(t));
    let ac = class_flag(check_ac(t));
    let ff = check_ff(t)?;
    let max = check_max(t)?;
    let pair = check_pair(t);
    let conjugate = match conjugating_element(&t.group, &t.left, &t.right) {
        Some(g) => Flag { value: true, witness: format!("g = {g} conjugates U onto V") },
        None => {
            Flag { value: false, witness: format!("no element of the {} checked conjugates U onto V", t.group.order()) }
        }
    };
    Ok(FlagReport {
        ec: ec.value,
        ac: ac.value,
        ff: ff.value,
        max: max.value,
        pair: pair.value,
        conjugate: conjugate.value,
        witnesses: FlagWitnesses {
            ec: ec.witness,
            ac: ac.witness,
            ff: ff.witness,
            max: max.witness,
            pair: pair.witness,
            conjugate: conjugate.witness,
        },
    })
}

/// Replaces `G` by its image acting on `G/U ⊔ G/V`, which kills the
/// common core, and `U`, `V` by their images.
pub fn reduce_ff(t: &GSTriple) -> Result<GSTriple> {
    let left = t.left_action()?;
    let right = t.right_action()?;
    let degree = left.degree() + right.degree();
    let image = |g: &Perm| -> Result<Perm> { Ok(left.image(g)?.direct_sum(&right.image(g)?)) };
    let gens = t.group.generators().iter().map(image).collect::<Result<Vec<_>>>()?;
    let group = PermGroup::from_generators(degree, gens)?;
    let u = t.left.generators().iter().map(image).collect::<Result<Vec<_>>>()?;
    let v = t.right.generators().iter().map(image).collect::<Result<Vec<_>>>()?;
    GSTriple::from_generators(group, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    fn p(degree: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    fn a4_ec_triple() -> GSTriple {
        let a4 = alternating(4);
        GSTriple::from_generators(
            a4,
            vec![p(4, &[&[0, 1], &[2, 3]])],
            vec![p(4, &[&[0, 1], &[2, 3]]), p(4, &[&[0, 2], &[1, 3]])],
        )
        .unwrap()
    }

    #[test]
    fn triple_file_round_trip() {
        let t = a4_ec_triple();
        let json = serde_json::to_string(&TripleFile::from_triple("A4", &t)).unwrap();
        let file: TripleFile = serde_json::from_str(&json).unwrap();
        let back = file.to_triple(|_| unreachable!("inline group")).unwrap();
        assert_eq!(back.left().elements(), t.left().elements());
        assert_eq!(back.right().elements(), t.right().elements());
        let by_path = TripleFile { group: GroupSource::Path("a4.json".into()), ..file };
        let loaded = by_path.to_triple(|p| {
            assert_eq!(p, "a4.json");
            Ok(GroupFile::from_group("A4", t.group()))
        });
        assert_eq!(loaded.unwrap().group().order(), 12);
    }

    #[test]
    fn a_subgroup_is_almost_conjugate_to_itself() {
        let s4 = symmetric(4);
        let h = s4.stabilizer(0);
        let t = GSTriple::new(s4, h.clone(), h).unwrap();
        assert!(check_ac(&t).holds);
        assert!(check_ec(&t).holds);
        assert!(check_conjugate(&t));
    }

    #[test]
    fn a4_example_is_ec_but_not_ac() {
        let t = a4_ec_triple();
        assert!(check_ec(&t).holds);
        let ac = check_ac(&t);
        assert!(!ac.holds);
        let w = ac.witness.unwrap();
        assert_eq!(w.representative, p(4, &[&[0, 1], &[2, 3]]));
        assert_eq!((w.left_count, w.right_count), (1, 3));
        let flags = check_flags(&t).unwrap();
        assert!(!flags.pair);
        assert!(!flags.conjugate);
    }

    #[test]
    fn s3_transposition_vs_three_cycle_not_ec() {
        let s3 = symmetric(3);
        let t = GSTriple::from_generators(s3, vec![p(3, &[&[0, 1]])], vec![p(3, &[&[0, 1, 2]])]).unwrap();
        let ec = check_ec(&t);
        assert!(!ec.holds);
        assert_eq!(ec.witness.unwrap().representative.order(), 2);
    }

    #[test]
    fn shared_normal_subgroup_breaks_ff() {
        let c4 = cyclic(4);
        let r = c4.generators()[0].clone();
        let square = r.compose(&r);
        let t = GSTriple::from_generators(c4, vec![square.clone()], vec![square]).unwrap();
        let ff = check_ff(&t).unwrap();
        assert!(!ff.value);
        assert!(ff.witness.contains("order 2"));
        let reduced = reduce_ff(&t).unwrap();
        assert_eq!(reduced.group().order(), 2);
        assert!(check_ff(&reduced).unwrap().value);
    }

    #[test]
    fn reduce_ff_keeps_faithful_triples() {
        let t = a4_ec_triple();
        assert!(check_ff(&t).unwrap().value);
        let r = reduce_ff(&t).unwrap();
        assert_eq!(r.group().order(), 12);
        assert_eq!(check_ec(&r).holds, check_ec(&t).holds);
        assert_eq!(check_ac(&r).holds, check_ac(&t).holds);
        let rr = reduce_ff(&r).unwrap();
        assert_eq!(rr.group().order(), r.group().order());
    }

    #[test]
    fn flags_symmetric_under_swap() {
        let t = a4_ec_triple();
        let a = check_flags(&t).unwrap();
        let b = check_flags(&t.swapped()).unwrap();
        assert_eq!((a.ec, a.ac, a.ff, a.max, a.pair, a.conjugate), (b.ec, b.ac, b.ff, b.max, b.pair, b.conjugate));
    }

    #[test]
    fn flag_report_json_field_names() {
        let json = serde_json::to_value(check_flags(&a4_ec_triple()).unwrap()).unwrap();
        for key in ["ec", "ac", "ff", "max", "pair", "conjugate", "witnesses"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
    }
}
