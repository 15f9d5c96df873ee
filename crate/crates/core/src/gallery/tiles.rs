//! Planar domains assembled edge-to-edge from triangles with exact rational vertices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        Point { x: Q::from_integer(x), y: Q::from_integer(y) }
    }

    pub fn cross(self, o: Point) -> Q {
        self.x * o.y - self.y * o.x
    }
}

impl Add for Point {
    type Output = Point;

    fn add(self, o: Point) -> Point {
        Point { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for Point {
    type Output = Point;

    fn sub(self, o: Point) -> Point {
        Point { x: self.x - o.x, y: self.y - o.y }
    }
}

pub type Triangle = [Point; 3];

/// Twice the signed area.
fn orient(a: Point, b: Point, c: Point) -> Q {
    (b - a).cross(c - a)
}

/// Exact sums `Σ c_f √f` with `f` squarefree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum(pub BTreeMap<i64, Q>);

impl SurdSum {
    /// `√(a/b)` as `(s/b) √f` with `ab = s²f`, `f` squarefree.
    pub fn sqrt_of(q: Q) -> Self {
        let (a, b) = (*q.numer(), *q.denom());
        let mut rest = a * b;
        let (mut s, mut f) = (1i64, 1i64);
        let mut d = 2i64;
        while d * d <= rest {
            while rest % (d * d) == 0 {
                rest /= d * d;
                s *= d;
            }
            if rest % d == 0 {
                rest /= d;
                f *= d;
            }
            d += 1;
        }
        f *= rest;
        let mut m = BTreeMap::new();
        if a != 0 {
            m.insert(f, Q::new(s, b));
        }
        SurdSum(m)
    }

    pub fn add_assign(&mut self, other: &SurdSum) {
        for (&f, &c) in &other.0 {
            let e = self.0.entry(f).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                self.0.remove(&f);
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.iter().map(|(&f, c)| (*c.numer() as f64 / *c.denom() as f64) * (f as f64).sqrt()).sum()
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.0.iter().map(|(&r, c)| if r == 1 { c.to_string() } else { format!("{c}*sqrt({r})") }).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Domain file: `{"triangles": [[[xn, xd, yn, yd], ×3], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFile {
    pub triangles: Vec<[[i64; 4]; 3]>,
}

/// A union of triangles meeting edge-to-edge, with disjoint interiors and
/// a connected interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileDomain {
    triangles: Vec<Triangle>,
}

fn edge_key(a: Point, b: Point) -> (Point, Point) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether some edge line of one triangle separates the two closed triangles' interiors.
fn interiors_disjoint(s: &Triangle, t: &Triangle) -> bool {
    let separated = |a: &Triangle, b: &Triangle| {
        let sign = orient(a[0], a[1], a[2]).signum();
        (0..3).any(|i| {
            let (p, q) = (a[i], a[(i + 1) % 3]);
            b.iter().all(|&v| orient(p, q, v) * sign <= Q::zero())
        })
    };
    separated(s, t) || separated(t, s)
}

impl TileDomain {
    pub fn new(triangles: Vec<Triangle>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidDomain("no triangles".into()));
        }
        for (i, t) in triangles.iter().enumerate() {
            if orient(t[0], t[1], t[2]).is_zero() {
                return Err(Error::InvalidDomain(format!("triangle {i} is degenerate")));
            }
        }
        for i in 0..triangles.len() {
            for j in i + 1..triangles.len() {
                if !interiors_disjoint(&triangles[i], &triangles[j]) {
                    return Err(Error::InvalidDomain(format!("triangles {i} and {j} overlap")));
                }
            }
        }
        let d = TileDomain { triangles };
        if !d.adjacency_is_connected() {
            return Err(Error::InvalidDomain("tiles are not connected through shared edges".into()));
        }
        Ok(d)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn area(&self) -> Q {
        self.triangles.iter().map(|t| orient(t[0], t[1], t[2]).abs() / 2).sum()
    }

    /// For each undirected edge, the tiles that have it.
    fn edges(&self) -> HashMap<(Point, Point), Vec<usize>> {
        let mut m: HashMap<(Point, Point), Vec<usize>> = HashMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                m.entry(edge_key(t[k], t[(k + 1) % 3])).or_default().push(i);
            }
        }
        m
    }

    /// Pairs of tiles sharing an edge, sorted.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            self.edges().values().filter(|v| v.len() == 2).map(|v| (v[0].min(v[1]), v[0].max(v[1]))).collect();
        pairs.sort_unstable();
        pairs
    }

    fn adjacency_is_connected(&self) -> bool {
        let n = self.triangles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (a, b) in self.adjacency() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Whether the tile adjacency graph is a tree.
    pub fn adjacency_is_tree(&self) -> bool {
        self.adjacency_is_connected() && self.adjacency().len() + 1 == self.triangles.len()
    }

    /// Edges belonging to exactly one tile.
    pub fn boundary_edges(&self) -> Vec<(Point, Point)> {
        let mut edges: Vec<(Point, Point)> =
            self.edges().into_iter().filter(|(_, v)| v.len() == 1).map(|(e, _)| e).collect();
        edges.sort_unstable();
        edges
    }

    /// Exact boundary length.
    pub fn perimeter(&self) -> SurdSum {
        let mut total = SurdSum::default();
        for (a, b) in self.boundary_edges() {
            let d = b - a;
            total.add_assign(&SurdSum::sqrt_of(d.x * d.x + d.y * d.y));
        }
        total
    }

    /// Area-weighted centroid.
    pub fn centroid(&self) -> Point {
        let mut sx = Q::zero();
        let mut sy = Q::zero();
        for t in &self.triangles {
            let w = orient(t[0], t[1], t[2]).abs();
            sx += w * (t[0].x + t[1].x + t[2].x) / 3;
            sy += w * (t[0].y + t[1].y + t[2].y) / 3;
        }
        let total = self.area() * 2;
        Point::new(sx / total, sy / total)
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> TileDomain {
        TileDomain { triangles: self.triangles.iter().map(|t| [f(t[0]), f(t[1]), f(t[2])]).collect() }
    }

    /// Reflection across the vertical line through the centroid.
    pub fn reflected(&self) -> TileDomain {
        let c = self.centroid();
        self.map(|p| Point::new(c.x * 2 - p.x, p.y))
    }

    fn canonical_tiles(&self) -> Vec<[Point; 3]> {
        let mut tiles: Vec<[Point; 3]> = self
            .triangles
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        tiles.sort_unstable();
        tiles
    }

    /// Whether one of the eight lattice isometries (rotations by quarter
    /// turns and reflections), translated to align centroids, carries the
    /// tiles of `self` onto the tiles of `other`.
    pub fn is_congruent_to(&self, other: &TileDomain) -> bool {
        if self.triangles.len() != other.triangles.len() || self.area() != other.area() {
            return false;
        }
        let target = other.canonical_tiles();
        let (ca, cb) = (self.centroid(), other.centroid());
        lattice_isometries().into_iter().any(|[a, b, c, d]| {
            let linear = |p: Point| Point::new(p.x * a + p.y * b, p.x * c + p.y * d);
            let shift = cb - linear(ca);
            self.map(|p| linear(p) + shift).canonical_tiles() == target
        })
    }

    /// Whether `p` lies in the open interior of the union: every direction
    /// out of `p` starts inside some closed tile.
    pub fn contains_interior(&self, p: Point) -> bool {
        let mut rays: Vec<Point> = Vec::new();
        let mut touching: Vec<&Triangle> = Vec::new();
        for t in &self.triangles {
            let s = orient(t[0], t[1], t[2]).signum();
            let sides: Vec<Q> = (0..3).map(|i| orient(t[i], t[(i + 1) % 3], p) * s).collect();
            if sides.iter().any(|x| x.is_negative()) {
                continue;
            }
            if sides.iter().all(|x| x.is_positive()) {
                return true;
            }
            touching.push(t);
            for i in 0..3 {
                if sides[i].is_zero() {
                    for v in [t[i], t[(i + 1) % 3]] {
                        if v != p {
                            rays.push(v - p);
                        }
                    }
                }
            }
        }
        if touching.is_empty() {
            return false;
        }
        rays.sort_by(|a, b| angle_cmp(*a, *b));
        rays.dedup_by(|a, b| angle_cmp(*a, *b) == std::cmp::Ordering::Equal);
        if rays.is_empty() {
            return false;
        }
        let covered = |d: Point| touching.iter().any(|t| direction_in(t, p, d));
        (0..rays.len()).all(|i| {
            let (a, b) = (rays[i], rays[(i + 1) % rays.len()]);
            let turn = a.cross(b);
            // a direction strictly between consecutive rays
            let between = if rays.len() > 1 && turn.is_positive() { a + b } else { Point::new(-a.y, a.x) };
            covered(between)
        })
    }

    pub fn to_file(&self) -> DomainFile {
        let enc = |p: Point| [*p.x.numer(), *p.x.denom(), *p.y.numer(), *p.y.denom()];
        DomainFile { triangles: self.triangles.iter().map(|t| [enc(t[0]), enc(t[1]), enc(t[2])]).collect() }
    }

    pub fn from_file(file: &DomainFile) -> Result<Self> {
        let dec = |[xn, xd, yn, yd]: [i64; 4]| {
            if xd == 0 || yd == 0 {
                return Err(Error::InvalidDomain("zero denominator".into()));
            }
            Ok(Point::new(Q::new(xn, xd), Q::new(yn, yd)))
        };
        let triangles =
            file.triangles.iter().map(|t| Ok([dec(t[0])?, dec(t[1])?, dec(t[2])?])).collect::<Result<Vec<_>>>()?;
        Self::new(triangles)
    }

    /// Axis-aligned rectangle `[0, w] × [0, h]` split into two triangles.
    pub fn rectangle(w: Q, h: Q) -> Result<Self> {
        let z = Q::zero();
        let (a, b, c, d) = (Point::new(z, z), Point::new(w, z), Point::new(w, h), Point::new(z, h));
        Self::new(vec![[a, b, c], [a, c, d]])
    }

    pub fn unit_square() -> Self {
        Self::rectangle(Q::from_integer(1), Q::from_integer(1)).expect("unit square")
    }

    /// Least common multiple of all coordinate denominators.
    pub fn coordinate_denominator(&self) -> i64 {
        self.triangles.iter().flatten().fold(1i64, |acc, p| acc.lcm(p.x.denom()).lcm(p.y.denom()))
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let pts = self.triangles.iter().flatten();
        let min_x = pts.clone().map(|p| p.x).min().expect("nonempty");
        let max_x = pts.clone().map(|p| p.x).max().expect("nonempty");
        let min_y = pts.clone().map(|p| p.y).min().expect("nonempty");
        let max_y = pts.map(|p| p.y).max().expect("nonempty");
        (Point::new(min_x, min_y), Point::new(max_x, max_y))
    }
}

/// Linear parts `[a, b, c, d]` of the symmetries of the square lattice.
fn lattice_isometries() -> Vec<[i64; 4]> {
    vec![
        [1, 0, 0, 1],
        [0, -1, 1, 0],
        [-1, 0, 0, -1],
        [0, 1, -1, 0],
        [1, 0, 0, -1],
        [-1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, -1, -1, 0],
    ]
}

/// Angular order of nonzero vectors, starting from the positive x-axis.
fn angle_cmp(a: Point, b: Point) -> std::cmp::Ordering {
    let half = |p: Point| if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| Q::zero().cmp(&a.cross(b)))
}

/// Whether `p + εd` lies in the closed triangle `t` for all small `ε > 0`,
/// given that `p` itself lies in `t`.
fn direction_in(t: &Triangle, p: Point, d: Point) -> bool {
    let s = orient(t[0], t[1], t[2]).signum();
    (0..3).all(|i| {
        let (a, b) = (t[i], t[(i + 1) % 3]);
        let at_p = orient(a, b, p) * s;
        at_p.is_positive() || ((b - a).cross(d) * s) >= Q::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn unit_square_interior() {
        let s = TileDomain::unit_square();
        assert_eq!(s.area(), q(1, 1));
        assert!(s.contains_interior(Point::new(q(1, 2), q(1, 2))));
        // on the internal diagonal
        assert!(s.contains_interior(Point::new(q(1, 4), q(1, 4))));
        assert!(!s.contains_interior(Point::new(q(0, 1), q(1, 2))));
        assert!(!s.contains_interior(Point::new(q(1, 1), q(1, 1))));
        assert!(!s.contains_interior(Point::new(q(2, 1), q(1, 2))));
        assert_eq!(s.perimeter(), SurdSum::sqrt_of(q(16, 1)));
        assert!(s.adjacency_is_tree());
    }

    #[test]
    fn reentrant_corner_is_boundary() {
        // L-shape from three unit squares; the inner corner (1,1) is on the boundary
        let sq = |x: i64, y: i64| {
            let p = |a, b| Point::from_integers(a, b);
            vec![[p(x, y), p(x + 1, y), p(x + 1, y + 1)], [p(x, y), p(x + 1, y + 1), p(x, y + 1)]]
        };
        let tris: Vec<Triangle> = [sq(0, 0), sq(1, 0), sq(0, 1)].concat();
        let l = TileDomain::new(tris).unwrap();
        assert!(!l.contains_interior(Point::from_integers(1, 1) + Point::new(q(1, 2), q(1, 2))));
        assert!(!l.contains_interior(Point::from_integers(1, 1) + Point::new(q(1, 1), q(1, 1))));
        assert!(l.contains_interior(Point::new(q(1, 1), q(1, 2))));
        assert!(l.contains_interior(Point::new(q(1, 2), q(1, 1))));
        assert!(!l.contains_interior(Point::new(q(3, 2), q(3, 2))));
    }

    #[test]
    fn surds() {
        assert_eq!(SurdSum::sqrt_of(q(2, 1)).to_string(), "1*sqrt(2)");
        assert_eq!(SurdSum::sqrt_of(q(1, 2)).to_string(), "1/2*sqrt(2)");
        assert_eq!(SurdSum::sqrt_of(q(9, 4)).to_string(), "3/2");
    }

    #[test]
    fn overlap_rejected() {
        let p = |a, b| Point::from_integers(a, b);
        let t = [p(0, 0), p(2, 0), p(0, 2)];
        let u = [p(1, 1), p(0, 0), p(2, 0)];
        assert!(matches!(TileDomain::new(vec![t, u]), Err(Error::InvalidDomain(_))));
    }

    #[test]
    fn reflection_is_congruent() {
        let r = TileDomain::rectangle(q(1, 1), q(2, 1)).unwrap();
        assert!(r.is_congruent_to(&r.reflected()));
        assert!(!r.is_congruent_to(&TileDomain::unit_square()));
        let f = r.to_file();
        assert_eq!(TileDomain::from_file(&f).unwrap(), r);
    }
}
