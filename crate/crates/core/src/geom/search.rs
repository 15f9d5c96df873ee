//! Backtracking search for isomorphisms between incidence geometries.
//!
//! Both geometries are treated as bipartite graphs on `points ⊔ lines`.
//! Vertices are assigned in breadth-first order so that each new vertex is
//! adjacent to an already assigned one; a candidate image must have the same
//! sort, the same refined degree label and the same adjacency to every
//! assigned vertex. Every complete assignment is therefore an isomorphism.

use std::collections::{HashSet, VecDeque};

use super::IncidenceGeometry;
use crate::error::{Error, Result};
use crate::group::{element_cap, PermGroup};
use crate::perm::Perm;

/// Search nodes visited before a search gives up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Every isomorphism was visited.
    Completed,
    /// The visitor asked to stop.
    Stopped,
    /// The node budget ran out before the search finished.
    BudgetExhausted,
}

/// A sort-swapping, incidence-preserving bijection of a geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duality {
    pub point_to_line: Vec<usize>,
    pub line_to_point: Vec<usize>,
}

impl Duality {
    /// The duality as a permutation of `points ⊔ lines`.
    pub fn as_perm(&self) -> Perm {
        let mu = self.point_to_line.len();
        let images: Vec<usize> =
            self.point_to_line.iter().map(|&l| mu + l).chain(self.line_to_point.iter().copied()).collect();
        Perm::from_usize(&images).expect("duality is a bijection")
    }

    pub fn is_duality_of(&self, g: &IncidenceGeometry) -> bool {
        let (mu, nu) = (g.num_points(), g.num_lines());
        mu == nu
            && self.point_to_line.len() == mu
            && self.line_to_point.len() == nu
            && (0..mu)
                .all(|p| (0..nu).all(|l| g.incident(p, l) == g.incident(self.line_to_point[l], self.point_to_line[p])))
    }
}

struct Graph {
    points: usize,
    adjacency: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Graph {
    fn new(g: &IncidenceGeometry) -> Self {
        let (mu, nu) = (g.num_points(), g.num_lines());
        let mut adjacency = vec![Vec::new(); mu + nu];
        for (p, l) in g.incident_pairs() {
            adjacency[p].push(mu + l);
            adjacency[mu + l].push(p);
        }
        // Sort plus degree, refined by the sorted multiset of neighbour degrees.
        let degree: Vec<u64> = adjacency.iter().map(|a| a.len() as u64).collect();
        let labels = (0..mu + nu)
            .map(|v| {
                let mut nd: Vec<u64> = adjacency[v].iter().map(|&w| degree[w]).collect();
                nd.sort_unstable();
                let sort = u64::from(v >= mu);
                nd.iter().fold(sort.wrapping_mul(0x9e37_79b9) ^ degree[v], |h, &d| {
                    h.wrapping_mul(0x0100_0000_01b3) ^ d.wrapping_add(0x517c_c1b7)
                })
            })
            .collect();
        Graph { points: mu, adjacency, labels }
    }

    fn adjacent(&self, v: usize, w: usize) -> bool {
        self.adjacency[v].binary_search(&w).is_ok()
    }

    fn multiset_labels(&self) -> Vec<u64> {
        let mut l = self.labels.clone();
        l.sort_unstable();
        l
    }

    /// Breadth-first vertex order covering every component.
    fn order(&self) -> Vec<usize> {
        let n = self.adjacency.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }
}

/// Visits every isomorphism `a → b` as an image array on `points ⊔ lines`
/// (points map to points, lines to lines, both offset as in `a`).
/// `visit` returns `true` to stop the search.
pub fn isomorphisms(
    a: &IncidenceGeometry,
    b: &IncidenceGeometry,
    budget: u64,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> SearchOutcome {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return SearchOutcome::Completed;
    }
    let ga = Graph::new(a);
    let gb = Graph::new(b);
    if ga.multiset_labels() != gb.multiset_labels() {
        return SearchOutcome::Completed;
    }
    let n = ga.adjacency.len();
    if n == 0 {
        return if visit(&[]) { SearchOutcome::Stopped } else { SearchOutcome::Completed };
    }
    let order = ga.order();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    // next[k] is the next candidate to try for order[k]
    let mut next = vec![0usize; n];
    let mut depth = 0usize;
    loop {
        let v = order[depth];
        let mut placed = false;
        while next[depth] < n {
            let c = next[depth];
            next[depth] += 1;
            if used[c] || gb.labels[c] != ga.labels[v] || (c >= gb.points) != (v >= ga.points) {
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return SearchOutcome::BudgetExhausted;
            }
            let consistent = order[..depth].iter().all(|&w| ga.adjacent(v, w) == gb.adjacent(c, image[w]));
            if consistent {
                image[v] = c;
                used[c] = true;
                placed = true;
                break;
            }
        }
        if placed {
            if depth + 1 == n {
                if visit(&image) {
                    return SearchOutcome::Stopped;
                }
                used[image[v]] = false;
                image[v] = usize::MAX;
            } else {
                depth += 1;
                next[depth] = 0;
            }
            continue;
        }
        if depth == 0 {
            return SearchOutcome::Completed;
        }
        depth -= 1;
        let w = order[depth];
        used[image[w]] = false;
        image[w] = usize::MAX;
    }
}

/// Full automorphism group, acting on `points ⊔ lines`.
pub fn automorphism_group(geometry: &IncidenceGeometry, budget: u64) -> Result<PermGroup> {
    let cap = element_cap();
    let mut elements = Vec::new();
    let mut over_cap = false;
    let outcome = isomorphisms(geometry, geometry, budget, |image| {
        if elements.len() >= cap {
            over_cap = true;
            return true;
        }
        elements.push(Perm::from_usize(image).expect("isomorphism is a bijection"));
        false
    });
    if over_cap {
        return Err(Error::CapExceeded { cap });
    }
    if outcome == SearchOutcome::BudgetExhausted {
        return Err(Error::BudgetExhausted(budget));
    }
    let distinct: HashSet<&Perm> = elements.iter().collect();
    debug_assert_eq!(distinct.len(), elements.len());
    Ok(PermGroup::from_closed_elements(geometry.num_points() + geometry.num_lines(), elements))
}

/// A duality, if one exists (`Ok(None)`), or an error if the budget runs out.
pub fn find_duality(geometry: &IncidenceGeometry, budget: u64) -> Result<Option<Duality>> {
    let (mu, nu) = (geometry.num_points(), geometry.num_lines());
    if mu != nu {
        return Ok(None);
    }
    let dual = geometry.dual();
    let mut found = None;
    let outcome = isomorphisms(geometry, &dual, budget, |image| {
        // points of the dual are lines of the original and vice versa
        let point_to_line = image[..mu].to_vec();
        let line_to_point = image[mu..].iter().map(|&v| v - mu).collect();
        found = Some(Duality { point_to_line, line_to_point });
        true
    });
    match outcome {
        SearchOutcome::BudgetExhausted => Err(Error::BudgetExhausted(budget)),
        _ => Ok(found),
    }
}
