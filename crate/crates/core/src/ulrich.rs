//! Commuting pencils of linear forms and their Koszul complexes: wedge
//! composition into dual Livsic tensors, the symmetry and center-identity
//! checks, pointwise exactness probes and generalized joint kernels.

use crate::algebra::rational::{binomial, factorial, int};
use crate::algebra::{subsets, ExtElem, HomForm, Matrix, MultiPoly, Rational, TensorElem};
use crate::error::{Error, Result};
use crate::interlace::RationalMapP1;
use crate::livsic::{hodge_dual, membership, Component, CycleReport, LivsicDual, LivsicTensor};
use crate::sampling::{cayley_orthogonal, random_nonzero_vector, random_rational, substream};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Matrix whose entries are polynomials in a common set of variables.
pub type PolyMatrix = Matrix<MultiPoly>;

/// The constant matrix m with polynomial entries in `nvars` variables.
pub fn constant_matrix(m: &Matrix, nvars: usize) -> PolyMatrix {
    m.map(|x| MultiPoly::constant(nvars, x.clone()))
}

/// m · z_i.
pub fn matrix_times_var(m: &Matrix, nvars: usize, i: usize) -> PolyMatrix {
    let z = MultiPoly::var(nvars, i);
    m.map(|x| z.scale(x))
}

pub fn evaluate(m: &PolyMatrix, p: &[Rational]) -> Matrix {
    m.map(|x| x.eval(p))
}

fn is_symmetric_poly(m: &PolyMatrix) -> bool {
    m.is_symmetric()
}

/// Pairwise commuting n×n matrices T_1, …, T_c of linear forms in
/// z_0, …, z_d, with c ≤ d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingPencilSystem {
    nvars: usize,
    n: usize,
    mats: Vec<PolyMatrix>,
}

impl CommutingPencilSystem {
    pub fn d(&self) -> usize {
        self.nvars - 1
    }

    pub fn c(&self) -> usize {
        self.mats.len()
    }

    pub fn k(&self) -> usize {
        self.d() - self.c()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.mats
    }

    pub fn evaluate(&self, p: &[Rational]) -> Vec<Matrix> {
        self.mats.iter().map(|m| evaluate(m, p)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.mats.iter().all(is_symmetric_poly)
    }
}

/// Check shapes, linearity and pairwise commutation.
pub fn validate_system(mats: Vec<PolyMatrix>) -> Result<CommutingPencilSystem> {
    let first = mats.first().ok_or(Error::Invalid("empty system".into()))?;
    let n = first.rows();
    if n == 0 {
        return Err(Error::Invalid("matrices must be nonempty".into()));
    }
    let nvars = first.get(0, 0).nvars();
    for m in &mats {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows().max(m.cols()),
            });
        }
        for x in m.entries() {
            if x.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: x.nvars(),
                });
            }
            if x.total_degree() > 1 {
                return Err(Error::NonLinearEntry);
            }
        }
    }
    if mats.len() + 1 > nvars {
        return Err(Error::Invalid(format!(
            "{} matrices need at least {} variables",
            mats.len(),
            mats.len() + 1
        )));
    }
    for a in 0..mats.len() {
        for b in (a + 1)..mats.len() {
            if let Some((r, c)) = mats[a].commutator_witness(&mats[b]) {
                return Err(Error::NonCommuting(a + 1, b + 1, r, c));
            }
        }
    }
    Ok(CommutingPencilSystem { nvars, n, mats })
}

/// Koszul complex of the system: ψ_j : Λ^j ⊗ V → Λ^(j−1) ⊗ V for j = 1..c,
/// with Λ^j ⊗ V ordered by j-subsets in lexicographic order, then by V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulComplex {
    c: usize,
    n: usize,
    nvars: usize,
    psi: Vec<PolyMatrix>,
}

impl KoszulComplex {
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ψ_j for 1 ≤ j ≤ c.
    pub fn differential(&self, j: usize) -> &PolyMatrix {
        &self.psi[j - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.psi
    }

    /// ψ_j ψ_(j+1) = 0 for every j.
    pub fn composes_to_zero(&self) -> bool {
        self.psi.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn evaluate(&self, p: &[Rational]) -> Vec<Matrix> {
        self.psi.iter().map(|m| evaluate(m, p)).collect()
    }
}

/// Assemble the Koszul differentials e_S ⊗ v ↦ Σ_a (−1)^a e_(S∖s_a) ⊗ T_(s_a) v.
pub fn koszul(system: &CommutingPencilSystem) -> Result<KoszulComplex> {
    let (c, n, nvars) = (system.c(), system.n, system.nvars);
    let zero = MultiPoly::zero(nvars);
    let mut psi = Vec::with_capacity(c);
    for j in 1..=c {
        let cols = subsets(c, j);
        let rows = subsets(c, j - 1);
        let row_index: BTreeMap<Vec<usize>, usize> = rows.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = Matrix::filled(rows.len() * n, cols.len() * n, zero.clone());
        for (ci, s) in cols.iter().enumerate() {
            for (a, &sa) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != sa).collect();
                let ri = row_index[&rest];
                let t = &system.mats[sa];
                for r in 0..n {
                    for cc in 0..n {
                        let v = t.get(r, cc);
                        m.set(ri * n + r, ci * n + cc, if a % 2 == 0 { v.clone() } else { -v.clone() });
                    }
                }
            }
        }
        psi.push(m);
    }
    let complex = KoszulComplex { c, n, nvars, psi };
    if !complex.composes_to_zero() {
        return Err(Error::Inconsistent("Koszul differentials do not compose to zero".into()));
    }
    Ok(complex)
}

/// All permutations of 0..c with their signs.
pub fn permutations(c: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; c], &mut out);
    out.into_iter()
        .map(|p| {
            let (s, _) = crate::algebra::sort_sign(&p).expect("permutation");
            (p, s)
        })
        .collect()
}

fn to_exterior(m: &PolyMatrix) -> Result<Matrix<ExtElem>> {
    let mut out = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            let (constant, lin) = m.get(r, c).affine_parts().ok_or(Error::NonLinearEntry)?;
            if !constant.is_zero() {
                return Err(Error::NonHomogeneousEntry);
            }
            row.push(ExtElem::linear(&lin));
        }
        out.push(row);
    }
    Ok(Matrix::from_rows(out))
}

fn to_tensor(m: &PolyMatrix) -> Result<Matrix<TensorElem>> {
    let mut out = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            let (constant, lin) = m.get(r, c).affine_parts().ok_or(Error::NonLinearEntry)?;
            if !constant.is_zero() {
                return Err(Error::NonHomogeneousEntry);
            }
            row.push(TensorElem::linear(&lin));
        }
        out.push(row);
    }
    Ok(Matrix::from_rows(out))
}

/// X_1 ∧ ⋯ ∧ X_m: matrix product with exterior multiplication of entries.
pub fn wedge_product(factors: &[&Matrix<ExtElem>]) -> Matrix<ExtElem> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.mul(f);
    }
    acc
}

fn collect_dual(m: &Matrix<ExtElem>, nvars: usize, c: usize) -> BTreeMap<Vec<usize>, Matrix> {
    let n = m.rows();
    subsets(nvars, c)
        .into_iter()
        .map(|j| {
            let coeff = Matrix::from_fn(n, m.cols(), |r, cc| m.get(r, cc).coeff(&j));
            (j, coeff)
        })
        .filter(|(_, mat)| !mat.is_zero())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeComposition {
    /// (1/c!) Σ_σ sgn(σ) T_σ(1) ∧ ⋯ ∧ T_σ(c).
    pub dual: LivsicDual,
    /// Scalar λ with antisymmetrize(ψ_1 ⋯ ψ_c) = λ · dual, coefficientwise.
    pub koszul_factor: Rational,
}

/// Antisymmetrized wedge composition of the pencils, cross-checked against
/// the composite of the Koszul differentials taken in the tensor algebra.
pub fn wedge_compose(system: &CommutingPencilSystem) -> Result<WedgeComposition> {
    let (c, n, nvars) = (system.c(), system.n, system.nvars);
    let ext: Vec<Matrix<ExtElem>> = system.mats.iter().map(to_exterior).collect::<Result<_>>()?;
    let zero = Matrix::filled(n, n, ExtElem::zero());
    let sum = permutations(c)
        .into_par_iter()
        .map(|(sigma, sign)| {
            let factors: Vec<&Matrix<ExtElem>> = sigma.iter().map(|&i| &ext[i]).collect();
            let prod = wedge_product(&factors);
            if sign > 0 {
                prod
            } else {
                prod.neg()
            }
        })
        .reduce(|| zero.clone(), |a, b| a.add(&b));
    let norm = Rational::new(1.into(), factorial(c).into());
    let perm_coeffs: BTreeMap<Vec<usize>, Matrix> = collect_dual(&sum, nvars, c)
        .into_iter()
        .map(|(j, m)| (j, m.scale(&norm)))
        .collect();

    // second route: ψ_1 ψ_2 ⋯ ψ_c in the tensor algebra, then antisymmetrize
    let complex = koszul(system)?;
    let tens: Vec<Matrix<TensorElem>> = complex.psi.iter().map(to_tensor).collect::<Result<_>>()?;
    let mut prod = tens[0].clone();
    for t in &tens[1..] {
        prod = prod.mul(t);
    }
    let anti = prod.map(|x| x.antisymmetrize());
    let route2 = collect_dual(&anti, nvars, c);

    let keys: std::collections::BTreeSet<&Vec<usize>> = perm_coeffs.keys().chain(route2.keys()).collect();
    let mut factor: Option<Rational> = None;
    let zero_n = Matrix::zeros(n, n);
    for key in keys {
        let a = perm_coeffs.get(key).unwrap_or(&zero_n);
        let b = route2.get(key).unwrap_or(&zero_n);
        for (x, y) in a.entries().zip(b.entries()) {
            if x.is_zero() && y.is_zero() {
                continue;
            }
            if x.is_zero() || y.is_zero() {
                return Err(Error::Inconsistent("composition routes have different supports".into()));
            }
            let r = y / x;
            match &factor {
                None => factor = Some(r),
                Some(f) if *f != r => {
                    return Err(Error::Inconsistent("composition routes are not proportional".into()));
                }
                _ => {}
            }
        }
    }
    let dual = LivsicDual::new(nvars - 1, nvars - 1 - c, n, perm_coeffs)?;
    Ok(WedgeComposition {
        dual,
        koszul_factor: factor.expect("nonzero tensor has a nonzero coefficient"),
    })
}

/// (X_1 ∧ ⋯ ∧ X_c)ᵀ = (−1)^(c(c−1)/2) · X_cᵀ ∧ ⋯ ∧ X_1ᵀ for the given order.
pub fn transpose_identity_holds(system: &CommutingPencilSystem, order: &[usize]) -> Result<bool> {
    let ext: Vec<Matrix<ExtElem>> = system.mats.iter().map(to_exterior).collect::<Result<_>>()?;
    let c = order.len();
    let factors: Vec<&Matrix<ExtElem>> = order.iter().map(|&i| &ext[i]).collect();
    let lhs = wedge_product(&factors).transpose();
    let transposed: Vec<Matrix<ExtElem>> = order.iter().rev().map(|&i| ext[i].transpose()).collect();
    let refs: Vec<&Matrix<ExtElem>> = transposed.iter().collect();
    let rhs = wedge_product(&refs);
    let rhs = if (c * (c.saturating_sub(1)) / 2) % 2 == 0 { rhs } else { rhs.neg() };
    Ok(lhs == rhs)
}

/// For symmetric systems: the transpose identity on sampled orderings and the
/// symmetry of the composed tensor.
pub fn check_symmetry_theorem(system: &CommutingPencilSystem, seed: u64) -> Result<bool> {
    if !system.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let c = system.c();
    let mut orders: Vec<Vec<usize>> = if c <= 4 {
        permutations(c).into_iter().map(|(p, _)| p).collect()
    } else {
        let mut g = substream(seed, 0x7A);
        (0..24)
            .map(|_| {
                let mut p: Vec<usize> = (0..c).collect();
                p.shuffle(&mut g);
                p
            })
            .collect()
    };
    orders.dedup();
    for o in &orders {
        if !transpose_identity_holds(system, o)? {
            return Ok(false);
        }
    }
    Ok(wedge_compose(system)?.dual.is_real_symmetric())
}

/// Rank data of the evaluated complex at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointProbe {
    pub point: Vec<Rational>,
    /// rank ψ_j for j = 1..c.
    pub ranks: Vec<usize>,
    pub exact: bool,
    pub coker_psi1: usize,
    /// Membership and kernel dimension from the tensor, when supplied.
    pub member: Option<bool>,
    pub kernel_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub probes: Vec<PointProbe>,
    pub violations: Vec<String>,
}

impl ExactnessReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exactness of the evaluated complex 0 → Λ^c⊗V → ⋯ → Λ^0⊗V → 0.
pub fn probe_point(complex: &KoszulComplex, p: &[Rational]) -> (Vec<usize>, bool, usize) {
    let (c, n) = (complex.c, complex.n);
    let ranks: Vec<usize> = complex.evaluate(p).iter().map(|m| m.rank()).collect();
    let mut exact = ranks[0] == n && ranks[c - 1] == n;
    for j in 1..c {
        exact &= ranks[j] + ranks[j - 1] == binomial(c, j) * n;
    }
    (ranks.clone(), exact, n - ranks[0])
}

/// Probe exactness at the given points; with a tensor, member points must
/// have cokernel of ψ_1 equal to the kernel of γ ∧ p, and non-members must
/// be exact. Without one, every point must be exact.
pub fn exactness_probe(
    complex: &KoszulComplex,
    gamma: Option<&LivsicTensor>,
    points: &[Vec<Rational>],
) -> Result<ExactnessReport> {
    let probes: Vec<PointProbe> = points
        .par_iter()
        .map(|p| {
            let (ranks, exact, coker) = probe_point(complex, p);
            let (member, kernel_dim) = match gamma {
                Some(g) => {
                    let (m, k) = membership(g, p)?;
                    (Some(m), Some(k))
                }
                None => (None, None),
            };
            Ok(PointProbe {
                point: p.clone(),
                ranks,
                exact,
                coker_psi1: coker,
                member,
                kernel_dim,
            })
        })
        .collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for (i, pr) in probes.iter().enumerate() {
        match (pr.member, pr.kernel_dim) {
            (Some(true), Some(k)) => {
                if pr.coker_psi1 != k {
                    violations.push(format!(
                        "point {i}: cokernel of psi_1 has dimension {} but the tensor kernel has dimension {k}",
                        pr.coker_psi1
                    ));
                }
            }
            _ => {
                if !pr.exact {
                    violations.push(format!("point {i}: complex is not exact (ranks {:?})", pr.ranks));
                }
            }
        }
    }
    Ok(ExactnessReport { probes, violations })
}

/// Seeded rational points of ℚ^m (nonzero).
pub fn seeded_points(m: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut g = substream(seed, 0xE7);
    (0..count).map(|_| random_nonzero_vector(&mut g, m, 9)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointKernel {
    pub dim: usize,
    pub basis: Vec<Vec<Rational>>,
}

fn check_commuting(mats: &[Matrix]) -> Result<usize> {
    let first = mats.first().ok_or(Error::Invalid("no matrices".into()))?;
    let n = first.rows();
    for m in mats {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows().max(m.cols()),
            });
        }
    }
    for a in 0..mats.len() {
        for b in (a + 1)..mats.len() {
            if let Some((r, c)) = mats[a].commutator_witness(&mats[b]) {
                return Err(Error::NonCommuting(a + 1, b + 1, r, c));
            }
        }
    }
    Ok(n)
}

/// ∩ ker M_i.
pub fn joint_kernel(mats: &[Matrix]) -> Result<JointKernel> {
    check_commuting(mats)?;
    let basis = Matrix::vstack(mats).kernel();
    Ok(JointKernel { dim: basis.len(), basis })
}

/// ∩ ker M_i^n: vectors killed by every long enough monomial in the M_i.
pub fn generalized_joint_kernel(mats: &[Matrix]) -> Result<JointKernel> {
    let n = check_commuting(mats)?;
    let powers: Vec<Matrix> = mats.iter().map(|m| m.pow(n as u32)).collect();
    let basis = Matrix::vstack(&powers).kernel();
    Ok(JointKernel { dim: basis.len(), basis })
}

/// Cycle degree from generalized joint kernels of the evaluated pencils.
pub fn cycle_degree_jordan(
    system: &CommutingPencilSystem,
    components: &[Component],
    samples: usize,
    seed: u64,
) -> Result<CycleReport> {
    crate::livsic::cycle_degree_by(system.n, system.k(), components, samples, seed, |p| {
        Ok(generalized_joint_kernel(&system.evaluate(p))?.dim)
    })
}

/// Basis e_1, …, e_c of the center on which z_1 = ⋯ = z_c vanish in the dual
/// pairing, i.e. the coordinate vectors δ_1, …, δ_c of ℚ^(d+1).
pub fn delta_center(d: usize, c: usize) -> Vec<Vec<Rational>> {
    (1..=c)
        .map(|i| {
            let mut v = vec![Rational::zero(); d + 1];
            v[i] = Rational::one();
            v
        })
        .collect()
}

/// A random commuting symmetric system T_i = z_i I − Q D_i Qᵀ (i = 1..c),
/// with Q rational orthogonal and D_i diagonal in the remaining variables.
#[derive(Debug, Clone)]
pub struct SymmetricTestSystem {
    pub system: CommutingPencilSystem,
    pub q: Matrix,
    /// diag[i][r] = coefficient vector (over all variables) of D_(i+1)[r].
    pub diag: Vec<Vec<Vec<Rational>>>,
}

fn rest_vars(d: usize, c: usize) -> Vec<usize> {
    std::iter::once(0).chain((c + 1)..=d).collect()
}

pub fn random_symmetric_system(d: usize, c: usize, n: usize, seed: u64) -> Result<SymmetricTestSystem> {
    if c == 0 || c > d {
        return Err(Error::Invalid(format!("need 1 <= c <= d, got c={c}, d={d}")));
    }
    let nvars = d + 1;
    let mut g = substream(seed, 0x5A);
    let q = cayley_orthogonal(&mut g, n, 3);
    let rest = rest_vars(d, c);
    let mut diag = Vec::with_capacity(c);
    let mut mats = Vec::with_capacity(c);
    for i in 1..=c {
        let forms: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let mut v = vec![Rational::zero(); nvars];
                for &j in &rest {
                    v[j] = random_rational(&mut g, 4);
                }
                v
            })
            .collect();
        // −Q D_i Qᵀ + z_i I
        let mut m = matrix_times_var(&Matrix::identity(n), nvars, i);
        for &j in &rest {
            let dj = Matrix::diagonal(&forms.iter().map(|f| f[j].clone()).collect::<Vec<_>>());
            let conj = q.mul(&dj).mul(&q.transpose());
            m = m.sub(&matrix_times_var(&conj, nvars, j));
        }
        diag.push(forms);
        mats.push(m);
    }
    Ok(SymmetricTestSystem {
        system: validate_system(mats)?,
        q,
        diag,
    })
}

impl SymmetricTestSystem {
    /// The linear spaces {z_i = D_i[r]} for r = 0..n, parametrized by the
    /// remaining variables.
    pub fn components(&self) -> Result<Vec<Component>> {
        let d = self.system.d();
        let c = self.system.c();
        let rest = rest_vars(d, c);
        let m = rest.len();
        let n = self.system.n;
        (0..n)
            .map(|r| {
                let forms = (0..=d)
                    .map(|z| {
                        let coeffs: Vec<Rational> = if let Some(pos) = rest.iter().position(|&j| j == z) {
                            (0..m).map(|u| if u == pos { Rational::one() } else { Rational::zero() }).collect()
                        } else {
                            rest.iter().map(|&j| self.diag[z - 1][r][j].clone()).collect()
                        };
                        HomForm::with_degree(MultiPoly::linear(&coeffs), 1)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Component::new(format!("L{r}"), forms, 1)
            })
            .collect()
    }

    /// Points on and off the union of the component spaces.
    pub fn point_on_component(&self, r: usize, params: &[Rational]) -> Vec<Rational> {
        let d = self.system.d();
        let c = self.system.c();
        let rest = rest_vars(d, c);
        let mut p = vec![Rational::zero(); d + 1];
        for (u, &j) in rest.iter().enumerate() {
            p[j] = params[u].clone();
        }
        for i in 1..=c {
            p[i] = rest.iter().map(|&j| &self.diag[i - 1][r][j] * &p[j]).sum();
        }
        p
    }
}

/// Determinantal data of a rational normal curve of degree n projected from
/// the center {ℓ_0 = ℓ_1 = 0}.
#[derive(Debug, Clone)]
pub struct RationalNormalCurveSystem {
    /// T_i = w_i I − A_iᵀ(ℓ_0, ℓ_1), i = 0..n−2, linear in z_0..z_n.
    pub system: CommutingPencilSystem,
    /// Coordinate change w = P z (last two rows ℓ_0, ℓ_1).
    pub change: Matrix,
    /// Spanning set of the center: columns 0..n−2 of P⁻¹.
    pub center: Vec<Vec<Rational>>,
    /// Symmetric form H with A_i H = H A_iᵀ for all i, normalized to
    /// primitive integers with a positive first nonzero diagonal entry.
    pub form: Matrix,
    /// Dimension of the space of such forms.
    pub form_space_dim: usize,
    pub map: RationalMapP1,
}

impl RationalNormalCurveSystem {
    pub fn new(degree: u32, l0: &[Rational], l1: &[Rational]) -> Result<Self> {
        let n = degree as usize;
        if n < 2 {
            return Err(Error::Invalid("curve degree must be at least 2".into()));
        }
        if l0.len() != n + 1 || l1.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: l0.len().min(l1.len()),
            });
        }
        let map = RationalMapP1::new(HomForm::binary(l0), HomForm::binary(l1))?;
        // basis of forms of degree 2n−1 by t-exponent; f b_k has coefficient
        // l0[i] at t-exponent i + k
        let size = 2 * n;
        let sylv = Matrix::from_fn(size, size, |e, col| {
            let (l, k) = if col < n { (l0, col) } else { (l1, col - n) };
            if e >= k && e - k <= n {
                l[e - k].clone()
            } else {
                Rational::zero()
            }
        });
        let inv = sylv.inverse()?;
        // Z_i[k'][k] = α y0 + β y1 where z_i b_k = Σ (α f + β g) b_k'
        let z_mats: Vec<[Matrix; 2]> = (0..=n)
            .map(|i| {
                let mut za = Matrix::zeros(n, n);
                let mut zb = Matrix::zeros(n, n);
                for k in 0..n {
                    let col = i + k;
                    for kp in 0..n {
                        za.set(kp, k, inv.get(kp, col).clone());
                        zb.set(kp, k, inv.get(n + kp, col).clone());
                    }
                }
                [za, zb]
            })
            .collect();
        // complete ℓ_0, ℓ_1 by standard basis rows
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..=n {
            if rows.len() == n - 1 {
                break;
            }
            let mut e = vec![Rational::zero(); n + 1];
            e[i] = Rational::one();
            let mut trial = rows.clone();
            trial.push(e.clone());
            trial.push(l0.to_vec());
            trial.push(l1.to_vec());
            if Matrix::from_rows(trial).rank() == rows.len() + 3 {
                rows.push(e);
            }
        }
        rows.push(l0.to_vec());
        rows.push(l1.to_vec());
        let change = Matrix::from_rows(rows);
        let pinv = change.inverse()?;
        // A_i = Σ_j P_ij Z_j, split into y0 and y1 parts
        let a_mats: Vec<[Matrix; 2]> = (0..n - 1)
            .map(|i| {
                let mut a = Matrix::zeros(n, n);
                let mut b = Matrix::zeros(n, n);
                for (j, z) in z_mats.iter().enumerate() {
                    let c = change.get(i, j);
                    if !c.is_zero() {
                        a = a.add(&z[0].scale(c));
                        b = b.add(&z[1].scale(c));
                    }
                }
                [a, b]
            })
            .collect();
        let y0 = MultiPoly::linear(l0);
        let y1 = MultiPoly::linear(l1);
        let mats: Vec<PolyMatrix> = (0..n - 1)
            .map(|i| {
                let w = MultiPoly::linear(change.row(i));
                let id = Matrix::identity(n).map(|x| w.scale(x));
                let at0 = a_mats[i][0].transpose();
                let at1 = a_mats[i][1].transpose();
                let lin = Matrix::from_fn(n, n, |r, c| {
                    &y0.scale(at0.get(r, c)) + &y1.scale(at1.get(r, c))
                });
                id.sub(&lin)
            })
            .collect();
        let system = validate_system(mats)?;
        let center = (0..n - 1)
            .map(|i| (0..=n).map(|r| pinv.get(r, i).clone()).collect())
            .collect();
        let (form, form_space_dim) = self_adjoint_form(&a_mats.iter().flat_map(|p| p.iter().cloned()).collect::<Vec<_>>())?;
        Ok(RationalNormalCurveSystem {
            system,
            change,
            center,
            form,
            form_space_dim,
            map,
        })
    }

    /// The twisted cubic with center forms x0 − 4x2 and x1 − x3.
    pub fn twisted_cubic() -> Result<Self> {
        RationalNormalCurveSystem::new(3, &[int(1), int(0), int(-4), int(0)], &[int(0), int(1), int(0), int(-1)])
    }

    /// The curve itself as a cycle component.
    pub fn curve_component(&self) -> Result<Component> {
        let n = self.system.n() as u32;
        let forms = (0..=n)
            .map(|i| HomForm::with_degree(MultiPoly::monomial(2, vec![n - i, i], Rational::one()), n))
            .collect::<Result<Vec<_>>>()?;
        Component::new("curve", forms, n as usize)
    }

    /// H · (wedge composition): the symmetric dual tensor.
    pub fn symmetric_tensor(&self) -> Result<LivsicDual> {
        wedge_compose(&self.system)?.dual.left_multiply(&self.form)
    }

    pub fn primal_tensor(&self) -> Result<LivsicTensor> {
        Ok(hodge_dual(&self.symmetric_tensor()?))
    }
}

/// Symmetric H with A H = H Aᵀ for every given A: a primitive integer basis
/// element of that space (first nonzero diagonal entry positive) and the
/// dimension of the space.
pub fn self_adjoint_form(actions: &[Matrix]) -> Result<(Matrix, usize)> {
    let n = actions.first().ok_or(Error::Invalid("no actions".into()))?.rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let unknown = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        pairs.iter().position(|&p| p == (a, b)).expect("pair")
    };
    let mut rows = Vec::new();
    for a in actions {
        // (A H − H Aᵀ)[r][c] = Σ_m A[r][m] H[m][c] − H[r][m] A[c][m]
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rational::zero(); pairs.len()];
                for m in 0..n {
                    row[unknown(m, c)] += a.get(r, m);
                    row[unknown(r, m)] -= a.get(c, m);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(pairs.len()).to_rows()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let dim = kernel.len();
    let v = kernel.first().ok_or(Error::Inconsistent("no self-adjoint form".into()))?;
    let mut h = Matrix::from_fn(n, n, |i, j| v[unknown(i, j)].clone());
    let first_diag = (0..n).map(|i| h.get(i, i).clone()).find(|x| !x.is_zero());
    if first_diag.is_some_and(|x| x < Rational::zero()) {
        h = h.neg();
    }
    Ok((h, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::vec_of;
    use crate::interlace::bezoutian;
    use crate::livsic::{cycle_degree, evaluate_at_center, Definiteness};

    fn lin(nvars: usize, coeffs: &[i64]) -> MultiPoly {
        MultiPoly::linear(&vec_of(coeffs)).extend_vars(nvars)
    }

    #[test]
    fn validation() {
        let z0 = MultiPoly::var(3, 0);
        let z1 = MultiPoly::var(3, 1);
        let zero = MultiPoly::zero(3);
        let t1 = Matrix::from_rows(vec![vec![zero.clone(), z0.clone()], vec![zero.clone(), zero.clone()]]);
        let t2 = Matrix::from_rows(vec![vec![zero.clone(), zero.clone()], vec![z1.clone(), zero.clone()]]);
        assert!(matches!(validate_system(vec![t1.clone(), t2]), Err(Error::NonCommuting(1, 2, _, _))));
        assert!(validate_system(vec![t1.clone()]).is_ok());
        assert!(matches!(
            validate_system(vec![t1.clone(), t1.clone(), t1.clone()]),
            Err(Error::Invalid(_))
        ));
        let quad = Matrix::from_rows(vec![vec![&z0 * &z1]]);
        assert_eq!(validate_system(vec![quad]), Err(Error::NonLinearEntry));
    }

    #[test]
    fn koszul_shapes_and_c2_form() {
        let s = random_symmetric_system(3, 2, 2, 4).unwrap();
        let k = koszul(&s.system).unwrap();
        assert_eq!((k.differential(1).rows(), k.differential(1).cols()), (2, 4));
        assert_eq!((k.differential(2).rows(), k.differential(2).cols()), (4, 2));
        let t = s.system.matrices();
        let psi2 = Matrix::vstack(&[t[1].neg(), t[0].clone()]);
        assert_eq!(k.differential(2), &psi2);
        assert_eq!(k.differential(1), &Matrix::hstack(&[t[0].clone(), t[1].clone()]));
        assert!(k.composes_to_zero());
    }

    #[test]
    fn single_pencil_composes_to_itself() {
        let t = Matrix::from_rows(vec![
            vec![lin(2, &[1, -1]), lin(2, &[0, 2])],
            vec![lin(2, &[0, 2]), lin(2, &[1, 3])],
        ]);
        let s = validate_system(vec![t]).unwrap();
        let w = wedge_compose(&s).unwrap();
        assert_eq!(w.koszul_factor, int(1));
        assert_eq!(w.dual.coefficient(&[0]), Some(&Matrix::from_i64(&[&[1, 0], &[0, 1]])));
        assert_eq!(w.dual.coefficient(&[1]), Some(&Matrix::from_i64(&[&[-1, 2], &[2, 3]])));
    }

    #[test]
    fn scalar_system_gives_identity() {
        // T_i = z_i I for i = 1..3 in z_0..z_3
        let mats: Vec<PolyMatrix> = (1..=3).map(|i| matrix_times_var(&Matrix::identity(2), 4, i)).collect();
        let s = validate_system(mats).unwrap();
        let w = wedge_compose(&s).unwrap();
        assert_eq!(w.dual.coefficients().len(), 1);
        assert_eq!(w.dual.coefficient(&[1, 2, 3]), Some(&Matrix::identity(2)));
        // (−1)^(c(c−1)/2) c!
        assert_eq!(w.koszul_factor, int(-6));
    }

    #[test]
    fn composition_routes_differ_by_minus_two_for_two_pencils() {
        let s = random_symmetric_system(3, 2, 3, 9).unwrap();
        assert_eq!(wedge_compose(&s.system).unwrap().koszul_factor, int(-2));
    }

    #[test]
    fn affine_entries_are_rejected() {
        let t = Matrix::from_rows(vec![vec![&MultiPoly::var(2, 0) + &MultiPoly::one(2)]]);
        let s = validate_system(vec![t]).unwrap();
        assert_eq!(wedge_compose(&s), Err(Error::NonHomogeneousEntry));
    }

    #[test]
    fn symmetric_systems_satisfy_the_theorem() {
        for seed in 0..3 {
            let s = random_symmetric_system(4, 3, 3, seed).unwrap();
            assert!(check_symmetry_theorem(&s.system, seed).unwrap());
            let w = wedge_compose(&s.system).unwrap();
            let e = evaluate_at_center(&w.dual, &delta_center(4, 3)).unwrap();
            assert_eq!(e.matrix, Matrix::identity(3));
        }
        let nonsym = Matrix::from_rows(vec![
            vec![lin(2, &[1, 0]), lin(2, &[0, 1])],
            vec![lin(2, &[0, 2]), lin(2, &[1, 0])],
        ]);
        assert_eq!(
            check_symmetry_theorem(&validate_system(vec![nonsym]).unwrap(), 0),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn exactness_of_diagonal_pencil() {
        // T_1 = z_0 I − z_1 diag(1, 2)
        let t = Matrix::from_rows(vec![
            vec![lin(2, &[1, -1]), MultiPoly::zero(2)],
            vec![MultiPoly::zero(2), lin(2, &[1, -2])],
        ]);
        let s = validate_system(vec![t]).unwrap();
        let k = koszul(&s).unwrap();
        let r = exactness_probe(&k, None, &[vec_of(&[3, 1])]).unwrap();
        assert!(r.ok());
        assert_eq!(r.probes[0].ranks, vec![2]);
        let r = exactness_probe(&k, None, &[vec_of(&[1, 1])]).unwrap();
        assert_eq!(r.probes[0].coker_psi1, 1);
        assert!(!r.ok());
        let gamma = hodge_dual(&wedge_compose(&s).unwrap().dual);
        let r = exactness_probe(&k, Some(&gamma), &[vec_of(&[1, 1]), vec_of(&[3, 1])]).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
    }

    #[test]
    fn common_kernel_everywhere_is_flagged() {
        // T_1 = diag(z_0, 0): e_2 is in the kernel at every point
        let t = Matrix::from_rows(vec![
            vec![lin(2, &[1, 0]), MultiPoly::zero(2)],
            vec![MultiPoly::zero(2), MultiPoly::zero(2)],
        ]);
        let k = koszul(&validate_system(vec![t]).unwrap()).unwrap();
        let pts = seeded_points(2, 5, 1);
        let r = exactness_probe(&k, None, &pts).unwrap();
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn generalized_kernels() {
        let nil = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(generalized_joint_kernel(&[nil.clone()]).unwrap().dim, 2);
        assert_eq!(joint_kernel(&[nil]).unwrap().dim, 1);
        assert_eq!(generalized_joint_kernel(&[Matrix::identity(3)]).unwrap().dim, 0);
        let k = generalized_joint_kernel(&[
            Matrix::diagonal(&vec_of(&[0, 1])),
            Matrix::diagonal(&vec_of(&[0, 2])),
        ])
        .unwrap();
        assert_eq!(k.dim, 1);
        assert_eq!(k.basis, vec![vec_of(&[1, 0])]);
        assert!(matches!(
            generalized_joint_kernel(&[Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::from_i64(&[&[0, 0], &[1, 0]])]),
            Err(Error::NonCommuting(1, 2, _, _))
        ));
    }

    #[test]
    fn twisted_cubic_representation() {
        let tc = RationalNormalCurveSystem::twisted_cubic().unwrap();
        assert_eq!(tc.form_space_dim, 1);
        let bez = bezoutian(tc.map.f(), tc.map.g()).unwrap();
        assert_eq!(&tc.form, bez.matrix());
        let sym = tc.symmetric_tensor().unwrap();
        assert!(sym.is_real_symmetric());
        let e = evaluate_at_center(&sym, &tc.center).unwrap();
        assert_eq!(&e.matrix, bez.matrix());
        assert_eq!(e.definiteness, Some(Definiteness::PositiveDefinite));
        let gamma = tc.primal_tensor().unwrap();
        let report = cycle_degree(&gamma, &[tc.curve_component().unwrap()], 10, 0).unwrap();
        assert_eq!(report.components[0].generic_kernel_dim, 1);
        assert_eq!(report.total, 3);
        assert!(report.admissible);
        // off the curve the tensor has trivial kernel
        assert_eq!(membership(&gamma, &vec_of(&[1, 2, 3, 5])).unwrap(), (false, 0));
        let j = cycle_degree_jordan(&tc.system, &[tc.curve_component().unwrap()], 10, 0).unwrap();
        assert_eq!(j.total, 3);
    }

    #[test]
    fn random_system_components_carry_the_cycle() {
        let s = random_symmetric_system(3, 2, 3, 2).unwrap();
        let gamma = hodge_dual(&wedge_compose(&s.system).unwrap().dual);
        let comps = s.components().unwrap();
        let r = cycle_degree(&gamma, &comps, 8, 1).unwrap();
        assert_eq!(r.total, 3);
        assert!(r.admissible);
        let on = s.point_on_component(1, &vec_of(&[2, -1]));
        assert!(membership(&gamma, &on).unwrap().0);
    }
}
