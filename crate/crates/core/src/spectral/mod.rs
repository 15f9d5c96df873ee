//! Dirichlet eigenvalues of the Laplacian on tile domains by finite differences.
//!
//! The domain is sampled on the square lattice of step `h`; every lattice
//! point strictly inside the domain is an unknown, decided in exact rational
//! arithmetic. The 5-point stencil couples two unknowns when the segment
//! between them runs through the interior; neighbours on or outside the
//! boundary contribute zero (the Dirichlet condition).

mod eigen;
mod sparse;

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use eigen::{
    count_below, jacobi_eigen, smallest_eigenvalues, tridiagonal_eigen, BandCholesky, EigenOptions, EigenResult,
    DEFAULT_EIGEN_SEED, DEFAULT_MAX_ITERATIONS,
};
pub use sparse::SparseSym;

use crate::error::{Error, Result};
use crate::gallery::{Point, TileDomain, Q};
use crate::scalar::Real;

/// Interior lattice nodes `(i h, j h)`, ordered by `j` then `i`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub h: Q,
    pub nodes: Vec<(i64, i64)>,
    pub index: HashMap<(i64, i64), usize>,
}

fn q_to_real<T: Real>(q: Q) -> T {
    T::lit(*q.numer() as f64) / T::lit(*q.denom() as f64)
}

/// Parses `"1/32"`, `"0.25"`-free rational steps such as `"1/2"` or `"1"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse =
        |t: &str| t.trim().parse::<i64>().map_err(|_| Error::InvalidStep(format!("cannot parse {s:?} as a rational")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == 0 {
                return Err(Error::InvalidStep(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(parse(n)?, d))
        }
        None => Ok(Q::from_integer(parse(s)?)),
    }
}

impl Grid {
    pub fn new(domain: &TileDomain, h: Q) -> Result<Self> {
        if !h.is_positive() {
            return Err(Error::InvalidStep(format!("step {h} is not positive")));
        }
        for t in domain.triangles() {
            for p in t {
                if !(p.x / h).is_integer() || !(p.y / h).is_integer() {
                    return Err(Error::InvalidStep(format!("step {h} does not divide vertex ({}, {})", p.x, p.y)));
                }
            }
        }
        let (lo, hi) = domain.bounds();
        let to_i = |x: Q| (x / h).to_integer();
        let mut nodes = Vec::new();
        for j in to_i(lo.y)..=to_i(hi.y) {
            for i in to_i(lo.x)..=to_i(hi.x) {
                if domain.contains_interior(Point::new(h * i, h * j)) {
                    nodes.push((i, j));
                }
            }
        }
        if nodes.is_empty() {
            return Err(Error::EmptyGrid);
        }
        let index = nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
        Ok(Grid { h, nodes, index })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The 5-point discrete Dirichlet Laplacian `−Δ_h` on the interior nodes.
pub fn discretize<T: Real>(domain: &TileDomain, h: Q) -> Result<(Grid, SparseSym<T>)> {
    let grid = Grid::new(domain, h)?;
    let h_real: T = q_to_real(h);
    let inv_h2 = T::one() / (h_real * h_real);
    let half = h / 2;
    let mut entries = Vec::with_capacity(5 * grid.len());
    for (row, &(i, j)) in grid.nodes.iter().enumerate() {
        entries.push((row, row, T::lit(4.0) * inv_h2));
        for (di, dj) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let Some(&col) = grid.index.get(&(i + di, j + dj)) else { continue };
            let mid = Point::new(h * i + half * di, h * j + half * dj);
            if domain.contains_interior(mid) {
                entries.push((row, col, -inv_h2));
            }
        }
    }
    let m = SparseSym::from_triplets(grid.len(), entries)?;
    Ok((grid, m))
}

/// Smallest Dirichlet eigenvalues with residuals, tagged with the step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    pub h: String,
    pub k: usize,
    pub eigenvalues: Vec<T>,
    pub residuals: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn step(&self) -> Result<Q> {
        parse_rational(&self.h)
    }
}

pub fn compute_spectrum<T: Real>(domain: &TileDomain, h: Q, k: usize, options: &EigenOptions) -> Result<Spectrum<T>> {
    let (_, m) = discretize::<T>(domain, h)?;
    let r = smallest_eigenvalues(&m, k, options)?;
    Ok(Spectrum { h: h.to_string(), k, eigenvalues: r.values, residuals: r.residuals })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    pub h: String,
    pub k: usize,
    /// `|λᵢᵃ − λᵢᵇ| / λᵢᵃ` per index.
    pub relative_differences: Vec<f64>,
    pub max_difference: f64,
}

pub fn compare_spectra<T: Real>(a: &Spectrum<T>, b: &Spectrum<T>, k: usize) -> Result<SpectrumComparison> {
    if a.step()? != b.step()? {
        return Err(Error::MismatchedParameters(format!("steps differ: {} vs {}", a.h, b.h)));
    }
    if k == 0 || a.eigenvalues.len() < k || b.eigenvalues.len() < k {
        return Err(Error::MismatchedParameters(format!(
            "need {k} eigenvalues, have {} and {}",
            a.eigenvalues.len(),
            b.eigenvalues.len()
        )));
    }
    let relative_differences: Vec<f64> = a.eigenvalues[..k]
        .iter()
        .zip(&b.eigenvalues[..k])
        .map(|(&x, &y)| ((x - y).abs() / x).to_f64().expect("finite"))
        .collect();
    let max_difference = relative_differences.iter().copied().fold(0.0, f64::max);
    Ok(SpectrumComparison { h: a.h.clone(), k, relative_differences, max_difference })
}

/// Ratio of the maximum relative difference at the coarse step to that at the fine step.
pub fn refinement_ratio(coarse: &SpectrumComparison, fine: &SpectrumComparison) -> f64 {
    coarse.max_difference / fine.max_difference
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    /// Least-squares slope of the counting function over the upper half of the range.
    pub slope: f64,
    /// `area / (4π)`.
    pub expected: f64,
    pub ratio: f64,
    pub points_used: usize,
}

/// Compares the growth of the counting function `N(x)` with `area/(4π)`.
pub fn weyl_check<T: Real>(eigenvalues: &[T], area: Q) -> Result<WeylReport> {
    if !area.is_positive() {
        return Err(Error::InvalidDomain(format!("area {area} is not positive")));
    }
    let n = eigenvalues.len();
    if n < 4 {
        return Err(Error::InsufficientSpectrum(format!("{n} eigenvalues; need at least 4")));
    }
    let mut values: Vec<f64> = eigenvalues.iter().map(|v| v.to_f64().expect("finite")).collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    // N(λ_i) = i + 1 for the i-th eigenvalue (0-based), ties counted with multiplicity
    let points: Vec<(f64, f64)> = values.iter().enumerate().skip(n / 2).map(|(i, &x)| (x, (i + 1) as f64)).collect();
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx.is_zero() {
        return Err(Error::InsufficientSpectrum("upper half of the spectrum is a single value".into()));
    }
    let slope = sxy / sxx;
    let expected = area.to_f64().expect("finite") / (4.0 * std::f64::consts::PI);
    Ok(WeylReport { slope, expected, ratio: slope / expected, points_used: points.len() })
}

/// Dirichlet eigenvalues `π²(j²/a² + l²/b²)` of the `a × b` rectangle not exceeding `limit`, ascending.
pub fn rectangle_eigenvalues(a: f64, b: f64, limit: f64) -> Vec<f64> {
    let pi2 = std::f64::consts::PI.powi(2);
    let mut out = Vec::new();
    let mut j = 1;
    while pi2 * (j * j) as f64 / (a * a) <= limit {
        let mut l = 1;
        loop {
            let v = pi2 * ((j * j) as f64 / (a * a) + (l * l) as f64 / (b * b));
            if v > limit {
                break;
            }
            out.push(v);
            l += 1;
        }
        j += 1;
    }
    out.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    out
}
