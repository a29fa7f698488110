//! Livsic-type determinantal tensors γ ∈ Λ^{k+1} ℚ^{d+1} ⊗ M_n and their
//! duals: wedge with a point, membership, evaluation at a linear center,
//! cycle degree and similarity.

use crate::algebra::rational::binomial;
use crate::algebra::{sort_sign, subsets, HomForm, Matrix, Rational, SymMatrix};
use crate::error::{Error, Result};
use crate::sampling::{random_nonzero_vector, substream};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

fn check_shape(d: usize, k: usize, n: usize) -> Result<()> {
    if k >= d {
        return Err(Error::Invalid(format!("need 0 <= k < d, got k={k}, d={d}")));
    }
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    Ok(())
}

fn check_coefficients(
    d: usize,
    n: usize,
    key_len: usize,
    coeffs: &BTreeMap<Vec<usize>, Matrix>,
) -> Result<()> {
    for (key, m) in coeffs {
        if key.len() != key_len {
            return Err(Error::DimensionMismatch {
                expected: key_len,
                got: key.len(),
            });
        }
        if key.windows(2).any(|w| w[0] >= w[1]) || key.iter().any(|&i| i > d) {
            return Err(Error::Invalid(format!("invalid index set {key:?}")));
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows().max(m.cols()),
            });
        }
    }
    if coeffs.values().all(|m| m.is_zero()) {
        return Err(Error::Invalid("tensor has no nonzero coefficient".into()));
    }
    Ok(())
}

/// Primal tensor: n×n coefficient γ_I for each (k+1)-subset I ⊆ {0, …, d}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LivsicTensor {
    d: usize,
    k: usize,
    n: usize,
    coeffs: BTreeMap<Vec<usize>, Matrix>,
}

impl LivsicTensor {
    pub fn new(d: usize, k: usize, n: usize, coeffs: BTreeMap<Vec<usize>, Matrix>) -> Result<Self> {
        check_shape(d, k, n)?;
        check_coefficients(d, n, k + 1, &coeffs)?;
        Ok(LivsicTensor { d, k, n, coeffs })
    }

    /// Hypersurface tensor (k = d − 1) of the pencil Σ x_i A_i, with signs
    /// chosen so that γ ∧ p = Σ p_i A_i.
    pub fn from_pencil(mats: &[Matrix]) -> Result<Self> {
        if mats.len() < 2 {
            return Err(Error::Invalid("a pencil needs at least two matrices".into()));
        }
        let d = mats.len() - 1;
        let n = mats[0].rows();
        let mut coeffs = BTreeMap::new();
        for (i, a) in mats.iter().enumerate() {
            let key: Vec<usize> = (0..=d).filter(|&j| j != i).collect();
            coeffs.insert(key, if i % 2 == 0 { a.clone() } else { a.neg() });
        }
        LivsicTensor::new(d, d - 1, n, coeffs)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, Matrix> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: &[usize]) -> Option<&Matrix> {
        self.coeffs.get(key)
    }

    /// A γ B.
    pub fn transform(&self, a: &Matrix, b: &Matrix) -> LivsicTensor {
        LivsicTensor {
            d: self.d,
            k: self.k,
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(key, m)| (key.clone(), a.mul(m).mul(b)))
                .collect(),
        }
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.coeffs.values().all(|m| m.is_symmetric())
    }
}

/// γ ∧ p: one n×n block per (k+2)-subset J, stacked in lexicographic order.
pub fn wedge_with_point(gamma: &LivsicTensor, p: &[Rational]) -> Result<Matrix> {
    if p.len() != gamma.d + 1 {
        return Err(Error::DimensionMismatch {
            expected: gamma.d + 1,
            got: p.len(),
        });
    }
    if p.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let n = gamma.n;
    let blocks: Vec<Matrix> = subsets(gamma.d + 1, gamma.k + 2)
        .into_iter()
        .map(|j| {
            let mut acc = Matrix::zeros(n, n);
            for (a, &ja) in j.iter().enumerate() {
                if p[ja].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = j.iter().copied().filter(|&x| x != ja).collect();
                if let Some(g) = gamma.coeffs.get(&rest) {
                    let term = g.scale(&p[ja]);
                    acc = if a % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
            }
            acc
        })
        .collect();
    Ok(Matrix::vstack(&blocks))
}

/// Whether γ ∧ p has a nonzero kernel, and the kernel dimension.
pub fn membership(gamma: &LivsicTensor, p: &[Rational]) -> Result<(bool, usize)> {
    let m = wedge_with_point(gamma, p)?;
    let dim = gamma.n - m.rank();
    Ok((dim > 0, dim))
}

/// Dual tensor: n×n coefficient T_J for each (d−k)-subset J ⊆ {0, …, d}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LivsicDual {
    d: usize,
    k: usize,
    n: usize,
    coeffs: BTreeMap<Vec<usize>, Matrix>,
}

impl LivsicDual {
    pub fn new(d: usize, k: usize, n: usize, coeffs: BTreeMap<Vec<usize>, Matrix>) -> Result<Self> {
        check_shape(d, k, n)?;
        check_coefficients(d, n, d - k, &coeffs)?;
        Ok(LivsicDual { d, k, n, coeffs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, Matrix> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: &[usize]) -> Option<&Matrix> {
        self.coeffs.get(key)
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.coeffs.values().all(|m| m.is_symmetric())
    }

    /// M · T_J for every J.
    pub fn left_multiply(&self, m: &Matrix) -> Result<LivsicDual> {
        LivsicDual::new(
            self.d,
            self.k,
            self.n,
            self.coeffs.iter().map(|(j, t)| (j.clone(), m.mul(t))).collect(),
        )
    }
}

fn complement(d: usize, j: &[usize]) -> Vec<usize> {
    (0..=d).filter(|i| !j.contains(i)).collect()
}

/// γ_I = sign(J, I) · T_J with I the complement of J.
pub fn hodge_dual(t: &LivsicDual) -> LivsicTensor {
    let coeffs = t
        .coeffs
        .iter()
        .map(|(j, m)| {
            let i = complement(t.d, j);
            let word: Vec<usize> = j.iter().chain(&i).copied().collect();
            let (s, _) = sort_sign(&word).expect("complementary sets");
            (i, if s > 0 { m.clone() } else { m.neg() })
        })
        .collect();
    LivsicTensor {
        d: t.d,
        k: t.k,
        n: t.n,
        coeffs,
    }
}

/// Inverse direction of `hodge_dual`: T_J = sign(J, I) · γ_I.
pub fn hodge_dual_inverse(g: &LivsicTensor) -> LivsicDual {
    let coeffs = g
        .coeffs
        .iter()
        .map(|(i, m)| {
            let j = complement(g.d, i);
            let word: Vec<usize> = j.iter().chain(i).copied().collect();
            let (s, _) = sort_sign(&word).expect("complementary sets");
            (j, if s > 0 { m.clone() } else { m.neg() })
        })
        .collect();
    LivsicDual {
        d: g.d,
        k: g.k,
        n: g.n,
        coeffs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Singular,
}

impl Definiteness {
    /// Definite of either sign.
    pub fn is_definite(self) -> bool {
        matches!(self, Definiteness::PositiveDefinite | Definiteness::NegativeDefinite)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterEvaluation {
    pub matrix: Matrix,
    /// `None` when the matrix is not symmetric.
    pub definiteness: Option<Definiteness>,
}

/// Σ_J T_J · det(W_J) for an ordered spanning set W of the center.
pub fn evaluate_at_center(t: &LivsicDual, w: &[Vec<Rational>]) -> Result<CenterEvaluation> {
    let c = t.d - t.k;
    if w.len() != c {
        return Err(Error::DimensionMismatch {
            expected: c,
            got: w.len(),
        });
    }
    for v in w {
        if v.len() != t.d + 1 {
            return Err(Error::DimensionMismatch {
                expected: t.d + 1,
                got: v.len(),
            });
        }
    }
    let wm = Matrix::from_rows(w.to_vec());
    if wm.rank() != c {
        return Err(Error::RankDeficient);
    }
    let all_rows: Vec<usize> = (0..c).collect();
    let mut acc = Matrix::zeros(t.n, t.n);
    for (j, m) in &t.coeffs {
        let minor = wm.submatrix(&all_rows, j).det();
        if !minor.is_zero() {
            acc = acc.add(&m.scale(&minor));
        }
    }
    let definiteness = if acc.is_symmetric() {
        let sig = SymMatrix::new(acc.clone())?.signature();
        Some(if sig.is_positive_definite() {
            Definiteness::PositiveDefinite
        } else if sig.is_negative_definite() {
            Definiteness::NegativeDefinite
        } else if sig.n_zero > 0 {
            Definiteness::Singular
        } else {
            Definiteness::Indefinite
        })
    } else {
        None
    };
    Ok(CenterEvaluation {
        matrix: acc,
        definiteness,
    })
}

/// A claimed irreducible component, given by a parametrization with forms
/// in m variables (a component of dimension m − 1) and its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub label: String,
    pub parametrization: Vec<HomForm>,
    pub degree: usize,
}

impl Component {
    pub fn new(label: impl Into<String>, parametrization: Vec<HomForm>, degree: usize) -> Result<Self> {
        let first = parametrization.first().ok_or(Error::Invalid("empty parametrization".into()))?;
        let m = first.nvars();
        if parametrization.iter().any(|f| f.nvars() != m) {
            return Err(Error::Invalid("parametrizing forms use different variable counts".into()));
        }
        if parametrization.iter().any(|f| f.degree() != first.degree()) {
            return Err(Error::Invalid("parametrizing forms have different degrees".into()));
        }
        Ok(Component {
            label: label.into(),
            parametrization,
            degree,
        })
    }

    /// A single point, as a constant parametrization.
    pub fn point(label: impl Into<String>, coords: &[Rational]) -> Result<Self> {
        let forms = coords
            .iter()
            .map(|c| HomForm::with_degree(crate::algebra::MultiPoly::constant(1, c.clone()), 0))
            .collect::<Result<Vec<_>>>()?;
        Component::new(label, forms, 1)
    }

    pub fn dimension(&self) -> usize {
        self.parametrization[0].nvars() - 1
    }

    pub fn eval(&self, params: &[Rational]) -> Vec<Rational> {
        self.parametrization.iter().map(|f| f.eval(params)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCycle {
    pub label: String,
    pub dimension: usize,
    /// Minimum kernel dimension over the samples.
    pub generic_kernel_dim: usize,
    pub degree: usize,
    /// Only components of dimension k enter the degree.
    pub contributes: bool,
    pub samples_disagree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub components: Vec<ComponentCycle>,
    pub total: usize,
    pub n: usize,
    pub admissible: bool,
    pub warnings: Vec<String>,
}

pub const DEFAULT_CYCLE_SAMPLES: usize = 25;

/// Cycle degree from a pointwise kernel-dimension oracle.
pub fn cycle_degree_by<F>(
    n: usize,
    k: usize,
    components: &[Component],
    samples: usize,
    seed: u64,
    kernel_dim: F,
) -> Result<CycleReport>
where
    F: Fn(&[Rational]) -> Result<usize> + Sync,
{
    if samples == 0 {
        return Err(Error::Invalid("at least one sample is required".into()));
    }
    let mut out = Vec::with_capacity(components.len());
    let mut warnings = Vec::new();
    for (j, comp) in components.iter().enumerate() {
        let m = comp.parametrization[0].nvars();
        let mut g = substream(seed, j as u64);
        let mut points = Vec::with_capacity(samples);
        let mut guard = 0;
        while points.len() < samples {
            let p = comp.eval(&random_nonzero_vector(&mut g, m, 9));
            if p.iter().any(|x| !x.is_zero()) {
                points.push(p);
            }
            guard += 1;
            if guard > 100 * samples {
                return Err(Error::Invalid(format!("component {} has no nonzero points", comp.label)));
            }
        }
        let dims: Vec<usize> = points
            .par_iter()
            .map(|p| kernel_dim(p))
            .collect::<Result<Vec<_>>>()?;
        let min = *dims.iter().min().expect("samples nonempty");
        let max = *dims.iter().max().expect("samples nonempty");
        if min == 0 {
            return Err(Error::NotOnVariety(j));
        }
        if min != max {
            warnings.push(format!(
                "component {}: kernel dimensions range over {min}..={max}",
                comp.label
            ));
        }
        out.push(ComponentCycle {
            label: comp.label.clone(),
            dimension: comp.dimension(),
            generic_kernel_dim: min,
            degree: comp.degree,
            contributes: comp.dimension() == k,
            samples_disagree: min != max,
        });
    }
    let total = out
        .iter()
        .filter(|c| c.contributes)
        .map(|c| c.generic_kernel_dim * c.degree)
        .sum();
    Ok(CycleReport {
        components: out,
        total,
        n,
        admissible: total == n,
        warnings,
    })
}

/// Cycle degree of γ from kernels of γ ∧ p at seeded points of each component.
pub fn cycle_degree(gamma: &LivsicTensor, components: &[Component], samples: usize, seed: u64) -> Result<CycleReport> {
    for c in components {
        if c.parametrization.len() != gamma.d + 1 {
            return Err(Error::DimensionMismatch {
                expected: gamma.d + 1,
                got: c.parametrization.len(),
            });
        }
    }
    cycle_degree_by(gamma.n, gamma.k, components, samples, seed, |p| {
        Ok(membership(gamma, p)?.1)
    })
}

/// Whether γ1_I = A γ2_I B for every I.
pub fn check_similarity(g1: &LivsicTensor, g2: &LivsicTensor, a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.rows() != g2.n || a.cols() != g2.n || b.rows() != g2.n || b.cols() != g2.n {
        return Err(Error::DimensionMismatch {
            expected: g2.n,
            got: a.rows(),
        });
    }
    if a.det().is_zero() || b.det().is_zero() {
        return Err(Error::Singular);
    }
    if (g1.d, g1.k, g1.n) != (g2.d, g2.k, g2.n) {
        return Ok(false);
    }
    let zero = Matrix::zeros(g1.n, g1.n);
    let keys: std::collections::BTreeSet<&Vec<usize>> = g1.coeffs.keys().chain(g2.coeffs.keys()).collect();
    Ok(keys.into_iter().all(|key| {
        let lhs = g1.coeffs.get(key).unwrap_or(&zero);
        let rhs = g2.coeffs.get(key).map(|m| a.mul(m).mul(b)).unwrap_or_else(|| zero.clone());
        lhs == &rhs
    }))
}

/// Number of rows of γ ∧ p.
pub fn wedge_rows(d: usize, k: usize, n: usize) -> usize {
    binomial(d + 1, k + 2) * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, vec_of};
    use crate::algebra::MultiPoly;

    fn diag_pencil() -> LivsicTensor {
        // det = x0 (x0 + x1) (x0 − x2)
        LivsicTensor::from_pencil(&[
            Matrix::identity(3),
            Matrix::diagonal(&vec_of(&[0, 1, 0])),
            Matrix::diagonal(&vec_of(&[0, 0, -1])),
        ])
        .unwrap()
    }

    #[test]
    fn hypersurface_wedge_is_pencil_value() {
        let a = [
            Matrix::identity(2),
            Matrix::from_i64(&[&[1, 2], &[2, 0]]),
            Matrix::from_i64(&[&[0, 1], &[1, 3]]),
        ];
        let g = LivsicTensor::from_pencil(&a).unwrap();
        let p = vec_of(&[2, -1, 3]);
        let w = wedge_with_point(&g, &p).unwrap();
        let expect = a[0].scale(&p[0]).add(&a[1].scale(&p[1])).add(&a[2].scale(&p[2]));
        assert_eq!(w, expect);
        assert_eq!(wedge_with_point(&g, &vec_of(&[0, 0, 0])), Err(Error::ZeroPoint));
    }

    #[test]
    fn membership_follows_determinant() {
        let g = diag_pencil();
        assert_eq!(membership(&g, &vec_of(&[1, 1, 2])).unwrap(), (false, 0));
        assert_eq!(membership(&g, &vec_of(&[1, 1, 1])).unwrap(), (true, 1));
        assert_eq!(membership(&g, &vec_of(&[1, -1, 0])).unwrap(), (true, 1));
        assert_eq!(membership(&g, &vec_of(&[0, 0, 1])).unwrap(), (true, 2));
    }

    #[test]
    fn hodge_dual_round_trip() {
        let g = diag_pencil();
        let t = hodge_dual_inverse(&g);
        assert_eq!(hodge_dual(&t), g);
        // on single indices T_j = A_j
        assert_eq!(t.coefficient(&[1]), Some(&Matrix::diagonal(&vec_of(&[0, 1, 0]))));
    }

    #[test]
    fn center_evaluation_is_multilinear_and_alternating() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0, 1], Matrix::identity(2));
        coeffs.insert(vec![1, 2], Matrix::from_i64(&[&[1, 1], &[1, 0]]));
        let t = LivsicDual::new(2, 0, 2, coeffs).unwrap();
        let w = vec![vec_of(&[1, 0, 0]), vec_of(&[0, 1, 0])];
        let e = evaluate_at_center(&t, &w).unwrap();
        assert_eq!(e.matrix, Matrix::identity(2));
        assert_eq!(e.definiteness, Some(Definiteness::PositiveDefinite));
        let scaled = evaluate_at_center(&t, &[vec_of(&[3, 0, 0]), vec_of(&[0, 1, 0])]).unwrap();
        assert_eq!(scaled.matrix, Matrix::identity(2).scale(&int(3)));
        let swapped = evaluate_at_center(&t, &[vec_of(&[0, 1, 0]), vec_of(&[1, 0, 0])]).unwrap();
        assert_eq!(swapped.matrix, Matrix::identity(2).neg());
        assert_eq!(swapped.definiteness, Some(Definiteness::NegativeDefinite));
        assert_eq!(
            evaluate_at_center(&t, &[vec_of(&[1, 0, 0]), vec_of(&[2, 0, 0])]),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn symmetry_check() {
        let g = diag_pencil();
        assert!(g.is_real_symmetric());
        let mut c = g.coefficients().clone();
        c.insert(vec![0, 1], Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(!LivsicTensor::new(2, 1, 3, c).unwrap().is_real_symmetric());
    }

    fn hyperplane(label: &str, l: [i64; 3]) -> Component {
        // the line {l · x = 0} in ℙ², parametrized by two linear forms
        let kernel = Matrix::from_i64(&[&l]).kernel();
        let forms = (0..3)
            .map(|i| HomForm::with_degree(MultiPoly::linear(&[kernel[0][i].clone(), kernel[1][i].clone()]), 1).unwrap())
            .collect();
        Component::new(label, forms, 1).unwrap()
    }

    #[test]
    fn cycle_of_diagonal_pencil() {
        let g = diag_pencil();
        let comps = vec![
            hyperplane("x0", [1, 0, 0]),
            hyperplane("x0+x1", [1, 1, 0]),
            hyperplane("x0-x2", [1, 0, -1]),
        ];
        let r = cycle_degree(&g, &comps, 10, 0).unwrap();
        assert!(r.components.iter().all(|c| c.generic_kernel_dim == 1 && c.contributes));
        assert_eq!(r.total, 3);
        assert!(r.admissible);
        // lower-dimensional components are reported but do not count
        let mut with_point = comps.clone();
        with_point.push(Component::point("p", &vec_of(&[0, 0, 1])).unwrap());
        let r = cycle_degree(&g, &with_point, 5, 0).unwrap();
        assert_eq!(r.total, 3);
        assert!(!r.components[3].contributes);
        // a line that is not a component
        assert_eq!(
            cycle_degree(&g, &[hyperplane("x1", [0, 1, 0])], 5, 0),
            Err(Error::NotOnVariety(0))
        );
    }

    #[test]
    fn similarity() {
        let g = diag_pencil();
        let a = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[1, 0, 1]]);
        let b = Matrix::from_i64(&[&[2, 0, 0], &[1, 1, 0], &[0, 0, -1]]);
        let g2 = g.transform(&a, &b);
        assert!(check_similarity(&g2, &g, &a, &b).unwrap());
        assert!(check_similarity(&g, &g, &Matrix::identity(3), &Matrix::identity(3)).unwrap());
        assert!(!check_similarity(&g, &g2, &Matrix::identity(3), &Matrix::identity(3)).unwrap());
        assert_eq!(check_similarity(&g, &g, &Matrix::zeros(3, 3), &b), Err(Error::Singular));
    }
}
