//! Transplantation matrices: `T` with `P_g T = T Q_g` for the permutation
//! matrices of `g` on `G/U` and `G/V`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Matrix, SparseEchelon};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::triple::GSTriple;

pub const DEFAULT_SEED: u64 = 0x6757_5731;

/// Generator images on both coset spaces; the defining data of the
/// intertwiner equations.
#[derive(Clone, Debug)]
pub struct IntertwinerProblem {
    pub size: usize,
    pub left: Vec<Perm>,
    pub right: Vec<Perm>,
}

impl IntertwinerProblem {
    pub fn from_triple(t: &GSTriple) -> Result<Self> {
        let (l, r) = (t.left_index(), t.right_index());
        if l != r {
            return Err(Error::IndexMismatch { left: l, right: r });
        }
        let left = t.left_action()?;
        let right = t.right_action()?;
        Ok(IntertwinerProblem {
            size: l,
            left: left.generator_images().to_vec(),
            right: right.generator_images().to_vec(),
        })
    }

    pub fn new(size: usize, left: Vec<Perm>, right: Vec<Perm>) -> Result<Self> {
        if left.len() != right.len() || left.iter().chain(&right).any(|p| p.degree() != size) {
            return Err(Error::DimensionMismatch("generator images must pair up with degree = size".into()));
        }
        Ok(IntertwinerProblem { size, left, right })
    }

    /// The stacked equations `T[π(i)][σ(j)] − T[i][j] = 0`, unknown `i·ℓ + j`.
    pub fn equations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.size;
        self.left.iter().zip(&self.right).flat_map(move |(pi, sigma)| {
            (0..l).flat_map(move |i| (0..l).map(move |j| (pi.apply(i) * l + sigma.apply(j), i * l + j)))
        })
    }

    /// Rational basis of the intertwiner space via sparse exact elimination.
    pub fn basis(&self) -> Vec<Matrix<BigRational>> {
        let l = self.size;
        let mut echelon = SparseEchelon::new(l * l);
        for (a, b) in self.equations() {
            if a != b {
                echelon.push([(a, BigRational::one()), (b, -BigRational::one())]);
            }
        }
        echelon.nullspace().into_iter().map(|v| Matrix::from_fn(l, l, |i, j| v[i * l + j].clone())).collect()
    }

    /// Same space through the dense stacked system; used as a cross-check on small cases.
    pub fn basis_dense(&self) -> Vec<Matrix<BigRational>> {
        let l = self.size;
        let eqs: Vec<(usize, usize)> = self.equations().collect();
        let system = Matrix::from_fn(eqs.len().max(1), l * l, |r, c| {
            let Some(&(a, b)) = eqs.get(r) else { return BigRational::zero() };
            let mut v = BigRational::zero();
            if c == a {
                v += BigRational::one();
            }
            if c == b {
                v -= BigRational::one();
            }
            v
        });
        system.nullspace().into_iter().map(|v| Matrix::from_fn(l, l, |i, j| v[i * l + j].clone())).collect()
    }

    /// Exact check of `P_g T = T Q_g` for every generator pair.
    pub fn is_intertwiner<T: crate::scalar::ExactScalar>(&self, t: &Matrix<T>) -> bool {
        self.left.iter().zip(&self.right).all(|(pi, sigma)| intertwines(t, pi, sigma))
    }
}

/// `P T = T Q` for the permutation matrices of `pi` and `sigma`.
pub fn intertwines<T: crate::scalar::ExactScalar>(t: &Matrix<T>, pi: &Perm, sigma: &Perm) -> bool {
    let p = Matrix::<T>::permutation(pi);
    let q = Matrix::<T>::permutation(sigma);
    match (p.mul(t), t.mul(&q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

pub fn intertwiner_space(t: &GSTriple) -> Result<Vec<Matrix<BigRational>>> {
    Ok(IntertwinerProblem::from_triple(t)?.basis())
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    /// Coefficients of the deterministic sweep range over `-bound..=bound`.
    pub coefficient_bound: i64,
    /// Maximum number of sweep vectors before switching to random draws.
    pub sweep_limit: usize,
    pub random_draws: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { seed: DEFAULT_SEED, coefficient_bound: 3, sweep_limit: 100_000, random_draws: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct InvertibleIntertwiner {
    pub matrix: Matrix<BigInt>,
    pub determinant: BigInt,
    /// Coefficients with respect to the integer-scaled basis.
    pub coefficients: Vec<i64>,
}

/// Scales a rational matrix to a primitive integer matrix spanning the same line.
pub fn to_integer_matrix(m: &Matrix<BigRational>) -> Matrix<BigInt> {
    let mut lcm = BigInt::one();
    for i in 0..m.rows() {
        for x in m.row(i) {
            lcm = lcm.lcm(x.denom());
        }
    }
    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let x = m.get(i, j);
        x.numer() * (&lcm / x.denom())
    })
}

/// Visits coefficient vectors in `{-b..b}^dim` by increasing max-norm; within
/// a norm, odometer order over the coordinate values `0, 1, −1, 2, −2, …`.
fn sweep(dim: usize, bound: i64, limit: usize, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let value = |digit: usize| if digit % 2 == 1 { (digit as i64 + 1) / 2 } else { -(digit as i64 / 2) };
    let mut count = 0usize;
    for r in 1..=bound {
        let top = 2 * r as usize;
        let mut digits = vec![0usize; dim];
        'odometer: loop {
            let v: Vec<i64> = digits.iter().map(|&d| value(d)).collect();
            if v.iter().any(|x| x.abs() == r) {
                count += 1;
                if count > limit {
                    return false;
                }
                if visit(&v) {
                    return true;
                }
            }
            let mut k = dim;
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                if digits[k] < top {
                    digits[k] += 1;
                    break;
                }
                digits[k] = 0;
            }
        }
    }
    false
}

/// Searches the span of `basis` for a matrix with nonzero determinant.
pub fn find_invertible_intertwiner(
    basis: &[Matrix<BigRational>],
    options: &SearchOptions,
) -> Option<InvertibleIntertwiner> {
    if basis.is_empty() || !basis[0].is_square() {
        return None;
    }
    let integer_basis: Vec<Matrix<BigInt>> = basis.iter().map(to_integer_matrix).collect();
    let mut found = None;
    let mut try_coeffs = |coeffs: &[i64]| -> bool {
        let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        let m = Matrix::linear_combination(&integer_basis, &c).expect("equal shapes");
        let det = m.determinant().expect("square");
        if det.is_zero() {
            return false;
        }
        found = Some(InvertibleIntertwiner { matrix: m, determinant: det, coefficients: coeffs.to_vec() });
        true
    };
    if sweep(basis.len(), options.coefficient_bound, options.sweep_limit, &mut try_coeffs) {
        return found;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.random_draws {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-10..=10)).collect();
        if try_coeffs(&coeffs) {
            return found;
        }
    }
    None
}

impl InvertibleIntertwiner {
    pub fn abs_determinant(&self) -> BigInt {
        self.determinant.abs()
    }
}
