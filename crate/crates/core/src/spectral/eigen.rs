//! Symmetric eigensolvers for the smallest eigenvalues of a sparse
//! positive-definite matrix.
//!
//! Large problems use Lanczos with full reorthogonalization on the inverse
//! (a banded Cholesky factorization applied as an operator). Whether any
//! eigenvalue below the k-th was missed is decided by an inertia count of a
//! shifted banded `LDLᵀ` factorization; missing copies of repeated
//! eigenvalues are collected by further runs orthogonal to every pair found
//! so far. Small problems are diagonalized densely by cyclic Jacobi rotations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseSym;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_EIGEN_SEED: u64 = 0x01a2_c705;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct EigenOptions {
    pub seed: u64,
    /// Budget of operator applications (Lanczos steps) over all restarts.
    pub max_iterations: usize,
    /// Matrices up to this dimension are diagonalized densely.
    pub dense_threshold: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { seed: DEFAULT_EIGEN_SEED, max_iterations: DEFAULT_MAX_ITERATIONS, dense_threshold: 128 }
    }
}

#[derive(Clone, Debug)]
pub struct EigenResult<T> {
    /// Ascending, with multiplicity.
    pub values: Vec<T>,
    /// Unit eigenvectors matching `values`.
    pub vectors: Vec<Vec<T>>,
    /// `‖Mv − λv‖` for each pair.
    pub residuals: Vec<T>,
    /// Absolute residual bound every pair satisfies.
    pub tolerance: T,
    pub iterations: usize,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

fn residual<T: Real>(m: &SparseSym<T>, v: &[T], lambda: T) -> T {
    let mut mv = vec![T::zero(); v.len()];
    m.mul_vec(v, &mut mv);
    axpy(-lambda, v, &mut mv);
    norm(&mv) / norm(v)
}

/// Cholesky factor `L` of a banded SPD matrix, stored row by row over the band.
pub struct BandCholesky<T> {
    n: usize,
    bw: usize,
    l: Vec<T>,
}

impl<T: Real> BandCholesky<T> {
    pub fn new(m: &SparseSym<T>) -> Result<Self> {
        let (n, bw) = (m.dim(), m.bandwidth());
        let w = bw + 1;
        let mut l = vec![T::zero(); n * w];
        // l[i * w + (j + bw - i)] holds L[i][j] for i - bw <= j <= i
        for i in 0..n {
            for (j, v) in m.row(i) {
                if j <= i {
                    l[i * w + (j + bw - i)] = v;
                }
            }
        }
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            for j in lo..=i {
                let mut s = l[i * w + (j + bw - i)];
                for k in lo.max(j.saturating_sub(bw))..j {
                    s = s - l[i * w + (k + bw - i)] * l[j * w + (k + bw - j)];
                }
                if i == j {
                    if s <= T::zero() || !s.is_finite() {
                        return Err(Error::NotPositiveDefinite);
                    }
                    l[i * w + bw] = s.sqrt();
                } else {
                    l[i * w + (j + bw - i)] = s / l[j * w + bw];
                }
            }
        }
        Ok(BandCholesky { n, bw, l })
    }

    /// Solves `L Lᵀ x = b` in place.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, x: &mut [T]) {
        let (n, bw, w) = (self.n, self.bw, self.bw + 1);
        for i in 0..n {
            let mut s = x[i];
            for k in i.saturating_sub(bw)..i {
                s = s - self.l[i * w + (k + bw - i)] * x[k];
            }
            x[i] = s / self.l[i * w + bw];
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..(i + bw + 1).min(n) {
                s = s - self.l[k * w + (i + bw - k)] * x[k];
            }
            x[i] = s / self.l[i * w + bw];
        }
    }
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `off` by the implicit QL method. Returns ascending
/// eigenvalues and the matrix whose column `j` is the `j`-th eigenvector.
pub fn tridiagonal_eigen<T: Real>(d: &[T], off: &[T]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<T> = off.iter().copied().chain(std::iter::once(T::zero())).take(n).collect();
    let mut v: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let eps = T::epsilon();
    let two = T::lit(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let max_iter = 30 * n.max(1);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::ConvergenceFailure { iterations: iter });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;
                p = d[m];
                let (mut c, mut c2, mut c3) = (T::one(), T::one(), T::one());
                let el1 = e[l + 1];
                let (mut s, mut s2) = (T::zero(), T::zero());
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = v.iter().map(|row| order.iter().map(|&i| row[i]).collect()).collect();
    Ok((values, vectors))
}

/// All eigenpairs of a dense symmetric matrix by cyclic Jacobi rotations;
/// ascending values, eigenvectors as rows.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigen<T: Real>(a: &[Vec<T>]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = a.len();
    let mut a: Vec<Vec<T>> = a.to_vec();
    let mut v: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let total: T = a.iter().flatten().fold(T::zero(), |acc, &x| acc + x * x);
    let threshold = T::epsilon() * T::epsilon() * total;
    let max_sweeps = 100;
    let mut sweeps = 0;
    loop {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j]);
        if off <= threshold {
            break;
        }
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::ConvergenceFailure { iterations: sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::lit(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| v.iter().map(|row| row[i]).collect()).collect();
    Ok((values, vectors))
}

fn dense_smallest<T: Real>(m: &SparseSym<T>, k: usize, tolerance: T) -> Result<EigenResult<T>> {
    let (values, vectors) = jacobi_eigen(&m.to_dense())?;
    let values: Vec<T> = values.into_iter().take(k).collect();
    let vectors: Vec<Vec<T>> = vectors.into_iter().take(k).collect();
    if values.first().is_some_and(|&v| v <= T::zero()) {
        return Err(Error::NotPositiveDefinite);
    }
    let residuals: Vec<T> = values.iter().zip(&vectors).map(|(&l, v)| residual(m, v, l)).collect();
    if residuals.iter().any(|&r| r > tolerance) {
        return Err(Error::ConvergenceFailure { iterations: 0 });
    }
    Ok(EigenResult { values, vectors, residuals, tolerance, iterations: 0 })
}

fn orthogonalize<T: Real>(w: &mut [T], basis: &[Vec<T>]) {
    // two passes keep the basis orthogonal to working precision
    for _ in 0..2 {
        for b in basis {
            let c = dot(w, b);
            axpy(-c, b, w);
        }
    }
}

struct RitzPair<T> {
    value: T,
    vector: Vec<T>,
    residual: T,
}

/// Number of eigenvalues of `m` strictly below `sigma`, read off the signs of
/// `D` in a banded `LDLᵀ` factorization of `m − σI` (Sylvester's law of
/// inertia). `None` if a pivot vanishes, i.e. `sigma` sits on an eigenvalue
/// to working precision.
pub fn count_below<T: Real>(m: &SparseSym<T>, sigma: T) -> Option<usize> {
    let (n, bw) = (m.dim(), m.bandwidth());
    let w = bw + 1;
    let mut l = vec![T::zero(); n * w];
    for i in 0..n {
        for (j, v) in m.row(i) {
            if j <= i {
                l[i * w + (j + bw - i)] = v;
            }
        }
        l[i * w + bw] = l[i * w + bw] - sigma;
    }
    let mut d = vec![T::zero(); n];
    let mut negatives = 0;
    for i in 0..n {
        let lo = i.saturating_sub(bw);
        for j in lo..i {
            let mut s = l[i * w + (j + bw - i)];
            for k in lo.max(j.saturating_sub(bw))..j {
                s = s - l[i * w + (k + bw - i)] * d[k] * l[j * w + (k + bw - j)];
            }
            l[i * w + (j + bw - i)] = s / d[j];
        }
        let mut s = l[i * w + bw];
        for k in lo..i {
            let x = l[i * w + (k + bw - i)];
            s = s - x * x * d[k];
        }
        if s == T::zero() || !s.is_finite() {
            return None;
        }
        if s < T::zero() {
            negatives += 1;
        }
        d[i] = s;
    }
    Some(negatives)
}

struct LanczosRun<T> {
    /// Ritz pairs of `m` for the `wanted` largest Ritz values of the inverse, ascending.
    pairs: Vec<RitzPair<T>>,
    /// The next Ritz value of `m` above the returned pairs, if any.
    next: Option<T>,
    used: usize,
}

/// Lanczos on the inverse of `m`, started orthogonal to `locked`, until the
/// `wanted` smallest Ritz values of `m` have converged (by the cheap
/// `β |s|` estimate) or `max_steps` steps have been taken.
fn lanczos_run<T: Real>(
    m: &SparseSym<T>,
    chol: &BandCholesky<T>,
    locked: &[Vec<T>],
    wanted: usize,
    max_steps: usize,
    tolerance: T,
    rng: &mut ChaCha8Rng,
) -> Result<LanczosRun<T>> {
    let n = m.dim();
    let norm_m = m.norm_bound();
    let target = tolerance * T::lit(0.1);
    let mut q: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
    orthogonalize(&mut q, locked);
    let nq = norm(&q);
    q.iter_mut().for_each(|x| *x = *x / nq);
    let mut basis: Vec<Vec<T>> = vec![q];
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();
    let mut next_check = (wanted + 20).min(max_steps);
    loop {
        let j = alpha.len();
        let mut w = basis[j].clone();
        chol.solve(&mut w);
        alpha.push(dot(&w, &basis[j]));
        let before = norm(&w);
        orthogonalize(&mut w, locked);
        orthogonalize(&mut w, &basis);
        let b = norm(&w);
        let breakdown = b <= T::epsilon() * T::lit(100.0) * before;
        let last = breakdown || alpha.len() >= max_steps;
        if !last && alpha.len() < next_check {
            beta.push(b);
            w.iter_mut().for_each(|x| *x = *x / b);
            basis.push(w);
            continue;
        }
        let steps = alpha.len();
        let (theta, s) = tridiagonal_eigen(&alpha, &beta)?;
        let tail = if breakdown { T::zero() } else { b };
        // largest θ of the inverse are the smallest eigenvalues of m
        let top: Vec<usize> = (0..steps).rev().filter(|&i| theta[i] > T::zero()).collect();
        // ‖M y − λ y‖ = λ ‖M (M⁻¹ y − θ y)‖ ≤ λ ‖M‖ β |s_last|
        let converged = top.len() >= wanted
            && top[..wanted].iter().all(|&i| norm_m * tail * s[steps - 1][i].abs() / theta[i] <= target);
        if converged || last {
            let pairs = top
                .iter()
                .take(wanted)
                .map(|&i| {
                    let mut y = vec![T::zero(); n];
                    for (j, qj) in basis.iter().enumerate() {
                        axpy(s[j][i], qj, &mut y);
                    }
                    let ny = norm(&y);
                    y.iter_mut().for_each(|x| *x = *x / ny);
                    let value = T::one() / theta[i];
                    let residual = residual(m, &y, value);
                    RitzPair { value, vector: y, residual }
                })
                .collect();
            let next = top.get(wanted).map(|&i| T::one() / theta[i]);
            return Ok(LanczosRun { pairs, next, used: steps });
        }
        next_check = (steps + 20).max(steps + steps / 8).min(max_steps);
        beta.push(b);
        w.iter_mut().for_each(|x| *x = *x / b);
        basis.push(w);
    }
}

/// The `k` smallest eigenvalues of a symmetric positive-definite matrix, with multiplicity.
///
/// A first Lanczos run collects `k` converged pairs. An inertia count at a
/// shift just above the `k`-th then certifies that no eigenvalue below it was
/// missed; a single Krylov space sees only one copy of a repeated eigenvalue,
/// so missing copies are collected by further runs orthogonal to everything
/// found so far until the count agrees.
pub fn smallest_eigenvalues<T: Real>(m: &SparseSym<T>, k: usize, options: &EigenOptions) -> Result<EigenResult<T>> {
    let n = m.dim();
    if k > n {
        return Err(Error::DimensionMismatch(format!("requested {k} eigenvalues of a {n}x{n} matrix")));
    }
    let tolerance = T::residual_tolerance() * m.norm_bound();
    if k == 0 {
        return Ok(EigenResult { values: vec![], vectors: vec![], residuals: vec![], tolerance, iterations: 0 });
    }
    if n <= options.dense_threshold {
        return dense_smallest(m, k, tolerance);
    }
    let chol = BandCholesky::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut locked: Vec<(T, Vec<T>, T)> = Vec::new();
    let mut iterations = 0usize;
    let mut wanted = k;
    let mut next_seen: Option<T> = None;
    loop {
        let available = n - locked.len();
        let max_steps = available.min(options.max_iterations.saturating_sub(iterations));
        if max_steps == 0 || wanted > available {
            return Err(Error::ConvergenceFailure { iterations });
        }
        let vectors: Vec<Vec<T>> = locked.iter().map(|(_, v, _)| v.clone()).collect();
        let run = lanczos_run(m, &chol, &vectors, wanted, max_steps, tolerance, &mut rng)?;
        iterations += run.used;
        let mut unconverged: Option<T> = run.next;
        for p in run.pairs {
            if p.residual <= tolerance {
                locked.push((p.value, p.vector, p.residual));
            } else {
                unconverged = Some(unconverged.map_or(p.value, |u: T| u.min(p.value)));
            }
        }
        locked.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
        if let Some(u) = unconverged {
            next_seen = Some(next_seen.map_or(u, |v: T| v.min(u)));
        }
        if locked.len() < k {
            wanted = k - locked.len();
            continue;
        }
        let kth = locked[k - 1].0;
        if kth <= T::zero() {
            return Err(Error::NotPositiveDefinite);
        }
        // a shift between the k-th value and the next one seen above it
        let upper = locked[k..].iter().map(|l| l.0).chain(next_seen).filter(|&v| v > kth).fold(T::infinity(), T::min);
        let half_gap = if upper.is_finite() { (upper - kth) / T::lit(2.0) } else { kth * T::lit(1e-3) };
        let mut sigma = kth + half_gap.max(tolerance);
        let count = loop {
            match count_below(m, sigma) {
                Some(c) => break c,
                None => sigma = sigma + tolerance,
            }
        };
        let have = locked.iter().filter(|l| l.0 < sigma).count();
        match count.cmp(&have) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Greater => {
                wanted = count - have;
                next_seen = None;
            }
            std::cmp::Ordering::Less => return Err(Error::ConvergenceFailure { iterations }),
        }
    }
    locked.truncate(k);
    if locked[0].0 <= T::zero() {
        return Err(Error::NotPositiveDefinite);
    }
    let values = locked.iter().map(|l| l.0).collect();
    let residuals = locked.iter().map(|l| l.2).collect();
    let vectors = locked.into_iter().map(|l| l.1).collect();
    Ok(EigenResult { values, vectors, residuals, tolerance, iterations })
}
