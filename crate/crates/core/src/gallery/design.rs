//! Symmetric designs from nonsingular quadratic forms over `F₂`: points are
//! the vectors of `F₂^{2m}`, blocks the translates `a + D` of
//! `D = {v | q(v) = 1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{DGeometry, DesignParameters, IncidenceGeometry};
use crate::group::PermGroup;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    /// `Σ x_{2i} x_{2i+1}`; sign −1.
    Hyperbolic,
    /// Hyperbolic plus `x_0² + x_1²`; sign +1.
    Elliptic,
}

impl FormType {
    pub fn sign(self) -> i64 {
        match self {
            FormType::Hyperbolic => -1,
            FormType::Elliptic => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticDesignSpec {
    /// Half the dimension of the underlying vector space.
    pub m: usize,
    pub form: FormType,
    /// Extend the translation group by the isometry group of the form.
    pub orthogonal: bool,
}

#[derive(Clone, Debug)]
pub struct QuadraticDesign {
    pub spec: QuadraticDesignSpec,
    /// Elements of `D`, as bit vectors.
    pub difference_set: Vec<usize>,
    pub parameters: DesignParameters,
    pub geometry: DGeometry,
}

/// The value of the form at a vector with bit `i` holding coordinate `x_i`.
pub fn quadratic_form(form: FormType, m: usize, v: usize) -> bool {
    let bit = |i: usize| (v >> i) & 1 == 1;
    let mut q = (0..m).fold(false, |acc, i| acc ^ (bit(2 * i) & bit(2 * i + 1)));
    if form == FormType::Elliptic {
        q ^= bit(0) ^ bit(1);
    }
    q
}

/// `(2^{2m}, 2^{2m−1} + ε2^{m−1}, 2^{2m−2} + ε2^{m−1})`.
pub fn expected_parameters(m: usize, form: FormType) -> Result<DesignParameters> {
    if m == 0 {
        return Err(Error::DegenerateParameters("m must be positive".into()));
    }
    let e = form.sign();
    let (v, half) = (1i64 << (2 * m), 1i64 << (m - 1));
    let k = v / 2 + e * half;
    let lambda = v / 4 + e * half;
    if lambda <= 0 {
        return Err(Error::DegenerateParameters(format!("m = {m} with sign {e} gives lambda = {lambda}")));
    }
    Ok(DesignParameters { v: v as usize, k: k as usize, lambda: lambda as usize })
}

/// Linear isometries of the form, by backtracking over images of the standard basis.
pub fn isometries(form: FormType, m: usize) -> Vec<Vec<usize>> {
    let dim = 2 * m;
    let q = |v: usize| quadratic_form(form, m, v);
    let polar = |a: usize, b: usize| q(a ^ b) ^ q(a) ^ q(b);
    let mut out = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(dim);
    fn span(dim: usize, images: &[usize]) -> Vec<bool> {
        let mut mark = vec![false; 1 << dim];
        mark[0] = true;
        let mut vecs = vec![0usize];
        for &b in images {
            let extra: Vec<usize> = vecs.iter().map(|&x| x ^ b).collect();
            vecs.extend(extra);
        }
        for v in vecs {
            mark[v] = true;
        }
        mark
    }
    #[allow(clippy::needless_range_loop)]
    fn go(
        dim: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        q: &dyn Fn(usize) -> bool,
        polar: &dyn Fn(usize, usize) -> bool,
    ) {
        let i = images.len();
        if i == dim {
            out.push(images.clone());
            return;
        }
        let spanned = span(dim, images);
        for cand in 1..1usize << dim {
            if spanned[cand] {
                continue;
            }
            if q(cand) != q(1 << i) || (0..i).any(|j| polar(images[j], cand) != polar(1 << j, 1 << i)) {
                continue;
            }
            images.push(cand);
            go(dim, images, out, q, polar);
            images.pop();
        }
    }
    go(dim, &mut images, &mut out, &q, &polar);
    out
}

fn linear_map(images: &[usize], v: usize) -> usize {
    images.iter().enumerate().filter(|(i, _)| (v >> i) & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b)
}

pub fn quadratic_design(spec: QuadraticDesignSpec) -> Result<QuadraticDesign> {
    let QuadraticDesignSpec { m, form, orthogonal } = spec;
    let parameters = expected_parameters(m, form)?;
    let v = parameters.v;
    let in_d: Vec<bool> = (0..v).map(|x| quadratic_form(form, m, x)).collect();
    let difference_set: Vec<usize> = (0..v).filter(|&x| in_d[x]).collect();
    let incidence = IncidenceGeometry::from_fn(v, v, |point, block| in_d[point ^ block]);
    if incidence.is_symmetric_design() != Some(parameters) {
        return Err(Error::DegenerateParameters(format!(
            "translates of D do not form a 2-({}, {}, {}) design",
            parameters.v, parameters.k, parameters.lambda
        )));
    }
    let affine = |map: &dyn Fn(usize) -> usize| {
        let images: Vec<usize> = (0..v).map(map).chain((0..v).map(|b| v + map(b))).collect();
        Perm::from_usize(&images)
    };
    let mut generators = (0..2 * m).map(|i| affine(&|x| x ^ (1 << i))).collect::<Result<Vec<_>>>()?;
    if orthogonal {
        // Isometries fix D, so they carry a + D to g(a) + D; add them greedily
        // until the generated group stops growing.
        let mut group = PermGroup::from_generators(2 * v, generators.clone())?;
        for images in isometries(form, m) {
            let g = affine(&|x| linear_map(&images, x))?;
            if !group.contains(&g) {
                generators.push(g);
                group = PermGroup::from_generators(2 * v, generators.clone())?;
            }
        }
    }
    let group = PermGroup::from_generators(2 * v, generators)?;
    let geometry = DGeometry::new(incidence, group)?;
    Ok(QuadraticDesign { spec, difference_set, parameters, geometry })
}
