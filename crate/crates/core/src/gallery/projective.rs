//! `PG(n−1, p)` with the action of `PGL_n(p)` on points and hyperplanes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{DGeometry, IncidenceGeometry};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::triple::GSTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSpec {
    /// Matrix size; the space is `PG(n−1, p)`.
    pub n: usize,
    pub p: u32,
}

#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    pub spec: ProjectiveSpec,
    /// Normalized homogeneous coordinates of the points (first nonzero entry 1).
    pub points: Vec<Vec<u32>>,
    /// Normalized dual coordinates of the hyperplanes.
    pub hyperplanes: Vec<Vec<u32>>,
    pub geometry: DGeometry,
    /// Stabilizers of point 0 and the first hyperplane through it.
    pub triple: GSTriple,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Least primitive root modulo the prime `p`.
fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = |g: u32| {
        let (mut x, mut k) = (g as u64, 1u32);
        while x != 1 {
            x = x * g as u64 % p as u64;
            k += 1;
        }
        k
    };
    (2..p).find(|&g| order(g) == p - 1).expect("primes have primitive roots")
}

/// Nonzero vectors of `F_p^n` with first nonzero coordinate 1, in lexicographic order.
fn normalized_vectors(n: usize, p: u32) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut code| {
            let mut v = vec![0u32; n];
            for x in v.iter_mut().rev() {
                *x = (code % p as usize) as u32;
                code /= p as usize;
            }
            v
        })
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn normalize(v: &mut [u32], p: u32) {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    // inverse by Fermat
    let mut inv = 1u64;
    for _ in 0..p - 2 {
        inv = inv * lead as u64 % p as u64;
    }
    for x in v.iter_mut() {
        *x = (*x as u64 * inv % p as u64) as u32;
    }
}

fn apply(matrix: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    matrix.iter().map(|row| (row.iter().zip(v).map(|(a, b)| (a * b) as u64).sum::<u64>() % p as u64) as u32).collect()
}

/// The point–hyperplane geometry of `PG(n−1, p)` with `PGL_n(p)` acting.
pub fn projective_geometry(spec: ProjectiveSpec) -> Result<ProjectiveSpace> {
    let ProjectiveSpec { n, p } = spec;
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if n < 3 {
        return Err(Error::DegenerateParameters(format!("projective spaces need n >= 3, got {n}")));
    }
    let points = normalized_vectors(n, p);
    let hyperplanes = points.clone();
    let count = points.len();
    let point_index: HashMap<Vec<u32>, usize> = points.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let dot = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| (x * y) as u64).sum::<u64>() % p as u64 == 0;
    let geometry = IncidenceGeometry::from_fn(count, count, |x, h| dot(&points[x], &hyperplanes[h]));
    let hyperplane_of: HashMap<Vec<usize>, usize> =
        (0..count).map(|h| (geometry.points_on(h).collect::<Vec<_>>(), h)).collect();

    // Transvections I + E_ij generate SL_n(p); one primitive-root diagonal adds the rest of GL_n(p).
    let mut matrices = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m: Vec<Vec<u32>> = (0..n).map(|r| (0..n).map(|c| u32::from(r == c)).collect()).collect();
                m[i][j] = 1;
                matrices.push(m);
            }
        }
    }
    let omega = primitive_root(p);
    if omega != 1 {
        let mut d: Vec<Vec<u32>> = (0..n).map(|r| (0..n).map(|c| u32::from(r == c)).collect()).collect();
        d[0][0] = omega;
        matrices.push(d);
    }

    let generators = matrices
        .iter()
        .map(|m| {
            let point_images: Vec<usize> = points
                .iter()
                .map(|v| {
                    let mut w = apply(m, v, p);
                    normalize(&mut w, p);
                    point_index[&w]
                })
                .collect();
            let line_images = (0..count).map(|h| {
                let mut image: Vec<usize> = geometry.points_on(h).map(|x| point_images[x]).collect();
                image.sort_unstable();
                count + hyperplane_of[&image]
            });
            let images: Vec<usize> = point_images.iter().copied().chain(line_images).collect();
            Perm::from_usize(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::from_generators(2 * count, generators)?;
    let geometry = DGeometry::new(geometry, group)?;
    let first_line = geometry.geometry().lines_on(0).next().expect("every point lies on a hyperplane");
    let triple = geometry.triple(0, first_line)?;
    Ok(ProjectiveSpace { spec, points, hyperplanes, geometry, triple })
}

/// `|PGL_n(q)| = q^{n(n−1)/2} · Π_{i=2..n} (q^i − 1)`.
pub fn pgl_order(n: u32, q: u64) -> u64 {
    q.pow(n * (n - 1) / 2) * (2..=n).map(|i| q.pow(i) - 1).product::<u64>()
}
