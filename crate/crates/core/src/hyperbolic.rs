//! Hyperbolicity of forms and parametrized curves: line restrictions,
//! seeded refutation searches, the definite-pencil certificate, projection of
//! curves from linear centers, exact real intersection counts of plane
//! curves, and the Veronese refutation search.

use crate::algebra::{restrict_to_line, HomForm, Matrix, MultiPoly, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::interlace::{mobius_power_map, RationalMapP1};
use crate::realroots::{is_real_rooted, sturm_count};
use crate::sampling::{random_int_matrix, random_nonzero_vector, rng, substream, SeededRng};
use num_traits::{One, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperbolicityStatus {
    Refuted,
    NotRefuted,
    Certified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateReason {
    DefinitePencil,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicityVerdict {
    pub status: HyperbolicityStatus,
    pub witness: Option<Vec<Rational>>,
    pub samples: usize,
    pub reason: Option<CertificateReason>,
}

/// Whether t ↦ f(e + t x) has only real roots.
pub fn direction_test(f: &HomForm, e: &[Rational], x: &[Rational]) -> Result<bool> {
    if e.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: e.len(),
        });
    }
    if f.eval(e).is_zero() {
        return Err(Error::InvalidBasePoint);
    }
    let p = restrict_to_line(f, e, x)?;
    Ok(is_real_rooted(&p)?.all_real())
}

/// Deterministic direction sequence: the integer shells of radius 1 and 2,
/// then seeded random rational vectors, truncated to `budget`.
pub fn search_directions(n: usize, budget: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(budget);
    for r in 1..=2i64 {
        let width = (2 * r + 1) as u64;
        let total = width.checked_pow(n as u32).unwrap_or(u64::MAX);
        let mut code = 0u64;
        while code < total && out.len() < budget {
            let mut c = code;
            let mut v = vec![Rational::zero(); n];
            let mut maxabs = 0;
            for slot in v.iter_mut().rev() {
                let x = (c % width) as i64 - r;
                c /= width;
                maxabs = maxabs.max(x.abs());
                *slot = Rational::from_integer(x.into());
            }
            if maxabs == r {
                out.push(v);
            }
            code += 1;
        }
    }
    let mut g = rng(seed);
    while out.len() < budget {
        out.push(random_nonzero_vector(&mut g, n, 9));
    }
    out
}

const CHUNK: usize = 64;

fn search_form(f: &HomForm, e: &[Rational], budget: usize, seed: u64) -> Result<HyperbolicityVerdict> {
    let dirs = search_directions(f.nvars(), budget, seed);
    for (ci, chunk) in dirs.chunks(CHUNK).enumerate() {
        let results: Vec<Result<bool>> = chunk.par_iter().map(|x| direction_test(f, e, x)).collect();
        for (i, r) in results.into_iter().enumerate() {
            if !r? {
                return Ok(HyperbolicityVerdict {
                    status: HyperbolicityStatus::Refuted,
                    witness: Some(chunk[i].clone()),
                    samples: ci * CHUNK + i + 1,
                    reason: None,
                });
            }
        }
    }
    Ok(HyperbolicityVerdict {
        status: HyperbolicityStatus::NotRefuted,
        witness: None,
        samples: dirs.len(),
        reason: None,
    })
}

/// Seeded refutation search for hyperbolicity of f with respect to e.
pub fn hyperbolicity_search(f: &HomForm, e: &[Rational], budget: usize, seed: u64) -> Result<HyperbolicityVerdict> {
    if e.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: e.len(),
        });
    }
    if f.eval(e).is_zero() {
        return Err(Error::InvalidBasePoint);
    }
    search_form(f, e, budget, seed)
}

/// A linear matrix pencil x ↦ Σ x_i A_i with square coefficient matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPencil {
    mats: Vec<Matrix>,
}

impl MatrixPencil {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let n = mats.first().ok_or(Error::Invalid("empty pencil".into()))?.rows();
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        Ok(MatrixPencil { mats })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn nvars(&self) -> usize {
        self.mats.len()
    }

    pub fn size(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.mats.iter().all(|m| m.is_symmetric())
    }

    /// Σ p_i A_i.
    pub fn at(&self, p: &[Rational]) -> Matrix {
        let n = self.size();
        let mut acc = Matrix::zeros(n, n);
        for (a, x) in self.mats.iter().zip(p) {
            if !x.is_zero() {
                acc = acc.add(&a.scale(x));
            }
        }
        acc
    }

    /// The matrix Σ x_i A_i with polynomial entries.
    pub fn symbolic(&self) -> Matrix<MultiPoly> {
        let d = self.nvars();
        let n = self.size();
        Matrix::from_fn(n, n, |r, c| {
            MultiPoly::linear(&self.mats.iter().map(|a| a.get(r, c).clone()).collect::<Vec<_>>())
        })
        .map(|p| p.extend_vars(d))
    }

    /// det(Σ x_i A_i) as a form of degree n.
    pub fn determinant(&self) -> Result<HomForm> {
        let det = self.symbolic().det_ring();
        HomForm::with_degree(det, self.size() as u32)
    }
}

/// Hyperbolicity search for det(Σ x_i A_i); certified outright when the
/// pencil is symmetric and definite at e.
pub fn hyperbolicity_search_pencil(
    pencil: &MatrixPencil,
    e: &[Rational],
    budget: usize,
    seed: u64,
) -> Result<HyperbolicityVerdict> {
    if e.len() != pencil.nvars() {
        return Err(Error::DimensionMismatch {
            expected: pencil.nvars(),
            got: e.len(),
        });
    }
    let at_e = pencil.at(e);
    if at_e.det().is_zero() {
        return Err(Error::InvalidBasePoint);
    }
    if pencil.is_symmetric() {
        let sig = crate::algebra::SymMatrix::new(at_e)?.signature();
        if sig.is_definite() {
            return Ok(HyperbolicityVerdict {
                status: HyperbolicityStatus::Certified,
                witness: None,
                samples: 0,
                reason: Some(CertificateReason::DefinitePencil),
            });
        }
    }
    search_form(&pencil.determinant()?, e, budget, seed)
}

/// A parametrized curve ℙ¹ → ℙ^d together with the linear forms cutting out
/// a center V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCenter {
    parametrization: Vec<HomForm>,
    center_forms: Vec<Vec<Rational>>,
}

impl CurveCenter {
    pub fn new(parametrization: Vec<HomForm>, center_forms: Vec<Vec<Rational>>) -> Result<Self> {
        let first = parametrization.first().ok_or(Error::Invalid("empty parametrization".into()))?;
        let deg = first.degree();
        for p in &parametrization {
            if p.nvars() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: p.nvars(),
                });
            }
            if p.degree() != deg {
                return Err(Error::DegreeMismatch(deg, p.degree()));
            }
        }
        if parametrization.iter().all(|p| p.poly().is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        let n = parametrization.len();
        for l in &center_forms {
            if l.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        if Matrix::from_rows(center_forms.clone()).rank() != center_forms.len() {
            return Err(Error::RankDeficient);
        }
        Ok(CurveCenter {
            parametrization,
            center_forms,
        })
    }

    /// The rational normal curve (s^n, s^(n−1) t, …, t^n).
    pub fn rational_normal_curve(n: u32, center_forms: Vec<Vec<Rational>>) -> Result<Self> {
        let param = (0..=n)
            .map(|i| HomForm::with_degree(MultiPoly::monomial(2, vec![n - i, i], Rational::one()), n))
            .collect::<Result<Vec<_>>>()?;
        CurveCenter::new(param, center_forms)
    }

    pub fn parametrization(&self) -> &[HomForm] {
        &self.parametrization
    }

    pub fn center_forms(&self) -> &[Vec<Rational>] {
        &self.center_forms
    }

    /// ℓ ∘ parametrization.
    pub fn pull_back(&self, l: &[Rational]) -> HomForm {
        let mut acc = MultiPoly::zero(2);
        for (c, p) in l.iter().zip(&self.parametrization) {
            acc = &acc + &p.poly().scale(c);
        }
        HomForm::with_degree(acc, self.parametrization[0].degree()).expect("homogeneous by construction")
    }
}

/// Linear projection of the curve from the center, as a map ℙ¹ → ℙ¹.
pub fn project_curve(cc: &CurveCenter) -> Result<RationalMapP1> {
    if cc.center_forms.len() != 2 {
        return Err(Error::Invalid("projection needs exactly two center forms".into()));
    }
    let f = cc.pull_back(&cc.center_forms[0]);
    let g = cc.pull_back(&cc.center_forms[1]);
    if f.poly().is_zero() || g.poly().is_zero() {
        return Err(Error::CommonZero);
    }
    RationalMapP1::new(f, g)
}

/// Center forms for the rational normal curve of degree n whose projection
/// is the Möbius power map of degree n.
pub fn mobius_center(n: u32) -> Result<Vec<Vec<Rational>>> {
    let m = mobius_power_map(n)?;
    Ok(vec![m.f().binary_coeffs(), m.g().binary_coeffs()])
}

/// Distinct intersection points of two plane curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntersectionCount {
    pub real_count: usize,
    pub total_count: usize,
    /// Every intersection has multiplicity one.
    pub transversal: bool,
}

/// Data of two ternary forms after a generic coordinate change: the
/// resultant R(x) = Res_y(f, g)(x, 1) and the first subresultant
/// s11(x) y + s10(x), so that a root x0 of R corresponds to the single point
/// (x0 : −s10(x0)/s11(x0) : 1).
struct GenericElimination {
    change: Matrix,
    resultant: UniPoly,
    s11: UniPoly,
    s10: UniPoly,
}

/// y-coefficient matrix of a ternary form with z = 1: out[k] = coefficient
/// of y^k as a polynomial in x.
fn y_coefficients(f: &MultiPoly) -> Vec<UniPoly> {
    let dy = f.degree_in(1) as usize;
    let mut out = vec![vec![Rational::zero(); f.total_degree() as usize + 1]; dy + 1];
    for (e, c) in f.terms() {
        out[e[1] as usize][e[0] as usize] += c;
    }
    out.into_iter().map(UniPoly::new).collect()
}

/// Subresultant determinant built from the rows of the Sylvester matrix for
/// index k, keeping the leading columns and then the column of y^i.
fn subresultant_coeff(a: &[UniPoly], b: &[UniPoly], k: usize, i: usize) -> UniPoly {
    // a, b are coefficient vectors lowest power first
    let m = a.len() - 1;
    let n = b.len() - 1;
    let rows_a = n - k;
    let rows_b = m - k;
    let size = rows_a + rows_b;
    let top = m + n - k - 1; // highest power present in the rows
    let mut cols: Vec<usize> = (0..size - 1).map(|c| top - c).collect();
    cols.push(i);
    let entry = |poly: &[UniPoly], shift: usize, power: usize| -> UniPoly {
        if power < shift || power - shift >= poly.len() {
            UniPoly::zero()
        } else {
            poly[power - shift].clone()
        }
    };
    let mat = Matrix::from_fn(size, size, |r, c| {
        if r < rows_a {
            entry(a, rows_a - 1 - r, cols[c])
        } else {
            let rb = r - rows_a;
            entry(b, rows_b - 1 - rb, cols[c])
        }
    });
    mat.det_ring()
}

fn transform(f: &HomForm, change: &Matrix) -> MultiPoly {
    let subs: Vec<MultiPoly> = (0..3)
        .map(|r| MultiPoly::linear(&change.row(r).to_vec()))
        .collect();
    f.poly().substitute(&subs)
}

const MAX_COORDINATE_TRIES: usize = 32;

fn eliminate(f: &HomForm, g: &HomForm, seed: u64) -> Result<GenericElimination> {
    for (name, h) in [("f", f), ("g", g)] {
        if h.nvars() != 3 {
            return Err(Error::Invalid(format!("{name} must be a ternary form")));
        }
        if h.poly().is_zero() || h.degree() == 0 {
            return Err(Error::Invalid(format!("{name} must be a nonconstant form")));
        }
    }
    let (df, dg) = (f.degree() as usize, g.degree() as usize);
    let bezout = df * dg;
    let mut g_rng: SeededRng = rng(seed);
    for _ in 0..MAX_COORDINATE_TRIES {
        let change = random_int_matrix(&mut g_rng, 3, 3, 4);
        if change.det().is_zero() {
            continue;
        }
        let ft = transform(f, &change);
        let gt = transform(g, &change);
        if ft.degree_in(1) as usize != df || gt.degree_in(1) as usize != dg {
            continue;
        }
        let a = y_coefficients(&ft);
        let b = y_coefficients(&gt);
        let r = subresultant_coeff(&a, &b, 0, 0);
        if r.is_zero() {
            return Err(Error::CommonComponent);
        }
        if r.deg0() != bezout {
            continue;
        }
        let (s11, s10) = if df >= 1 && dg >= 1 && df + dg >= 3 {
            (subresultant_coeff(&a, &b, 1, 1), subresultant_coeff(&a, &b, 1, 0))
        } else {
            // two lines: one intersection point, solved directly below
            (UniPoly::zero(), UniPoly::zero())
        };
        let sq = r.squarefree_part();
        if df + dg >= 3 && !sq.gcd(&s11).is_constant() {
            continue;
        }
        return Ok(GenericElimination {
            change,
            resultant: r,
            s11,
            s10,
        });
    }
    Err(Error::Inconsistent("no generic coordinate system found".into()))
}

/// Exact counts of distinct real and complex intersection points of two
/// plane curves without a common component.
pub fn curve_pair_real_intersections(f: &HomForm, g: &HomForm, seed: u64) -> Result<IntersectionCount> {
    let el = eliminate(f, g, seed)?;
    let sq = el.resultant.squarefree_part();
    let total = sq.deg0();
    let real = if total == 0 { 0 } else { sturm_count(&sq)? };
    Ok(IntersectionCount {
        real_count: real,
        total_count: total,
        transversal: total == el.resultant.deg0(),
    })
}

/// Whether three plane conics (or curves) have a common projective zero.
pub fn have_common_zero(f: &HomForm, g: &HomForm, h: &HomForm, seed: u64) -> Result<bool> {
    let el = match eliminate(f, g, seed) {
        Ok(el) => el,
        Err(Error::CommonComponent) => return Ok(true),
        Err(e) => return Err(e),
    };
    let sq = el.resultant.squarefree_part();
    if sq.is_constant() {
        return Ok(false);
    }
    // h in the new coordinates at (x, −s10/s11, 1), cleared of denominators
    let ht = transform(h, &el.change);
    let dh = h.degree();
    let x = UniPoly::from_i64(&[0, 1]);
    let mut num = UniPoly::zero();
    for (e, c) in ht.terms() {
        // x^a y^b z^c with y = −s10/s11: multiply by s11^dh
        let term = UniPoly::constant(c.clone())
            * x.pow(e[0])
            * (-el.s10.clone()).pow(e[1])
            * el.s11.pow(dh - e[1]);
        num = num + term;
    }
    Ok(!sq.gcd(&num).is_constant())
}

/// Whether a curve of genus g with s real components can be of dividing type,
/// judged by the parity and Harnack constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DividingParity {
    Possible,
    Impossible,
}

pub fn dividing_parity(g: i64, s: i64) -> DividingParity {
    if s == 0 || s > g + 1 || (g + 1 - s).rem_euclid(2) == 1 {
        DividingParity::Impossible
    } else {
        DividingParity::Possible
    }
}

/// Human-readable reason for a parity verdict.
pub fn dividing_parity_reason(g: i64, s: i64) -> String {
    if s == 0 {
        "s=0: no real points".to_string()
    } else if s > g + 1 {
        format!("s={s} exceeds g+1={}", g + 1)
    } else if (g + 1 - s).rem_euclid(2) == 1 {
        format!("g+1-s={} odd", g + 1 - s)
    } else {
        format!("g+1-s={} even", g + 1 - s)
    }
}

/// ν(x, y, z) = (x², xy, xz, y², yz, z²).
pub fn veronese_point(p: &[Rational]) -> Vec<Rational> {
    let (x, y, z) = (&p[0], &p[1], &p[2]);
    vec![x * x, x * y, x * z, y * y, y * z, z * z]
}

/// Conic L ∘ ν on ℙ² for a linear form L on ℚ⁶.
pub fn veronese_pullback(l: &[Rational]) -> HomForm {
    let exps: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
    let p = MultiPoly::from_terms(3, exps.iter().zip(l).map(|(e, c)| (e.to_vec(), c.clone())));
    HomForm::with_degree(p, 2).expect("quadratic by construction")
}

fn annihilator_conics(points: &[Vec<Rational>]) -> Vec<HomForm> {
    Matrix::from_rows(points.to_vec())
        .kernel()
        .iter()
        .map(|l| veronese_pullback(l))
        .collect()
}

/// Whether the plane spanned by the given points of ℚ⁶ meets the Veronese
/// surface (over ℂ).
pub fn center_meets_veronese(points: &[Vec<Rational>], seed: u64) -> Result<bool> {
    let conics = annihilator_conics(points);
    if conics.len() != 3 {
        return Err(Error::RankDeficient);
    }
    // q1, q2 generic members of the net, q3 a basis conic completing them
    let mut g = substream(seed, 0xC0);
    for _ in 0..MAX_COORDINATE_TRIES {
        let c1 = random_nonzero_vector(&mut g, 3, 5);
        let c2 = random_nonzero_vector(&mut g, 3, 5);
        let combo = |c: &[Rational]| {
            let mut acc = MultiPoly::zero(3);
            for (k, q) in c.iter().zip(&conics) {
                acc = &acc + &q.poly().scale(k);
            }
            HomForm::with_degree(acc, 2).expect("quadratic")
        };
        let third = (0..3).find(|&j| {
            let mut unit = vec![Rational::zero(); 3];
            unit[j] = Rational::one();
            Matrix::from_rows(vec![c1.clone(), c2.clone(), unit]).rank() == 3
        });
        let Some(j) = third else { continue };
        match have_common_zero(&combo(&c1), &combo(&c2), &conics[j], seed) {
            Ok(b) => return Ok(b),
            Err(Error::Inconsistent(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Inconsistent("could not decide whether the center meets the surface".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VeroneseOutcome {
    RefutationFound {
        /// Extra point w with U = span(V, w).
        extra_point: Vec<Rational>,
        conics: (HomForm, HomForm),
        count: IntersectionCount,
        attempts: usize,
    },
    Exhausted {
        attempts: usize,
    },
}

/// Search for a real 3-space U ⊇ V whose intersection with the Veronese
/// surface contains a non-real point.
pub fn veronese_refutation(center: &[Vec<Rational>], budget: usize, seed: u64) -> Result<VeroneseOutcome> {
    if center.len() != 3 || center.iter().any(|p| p.len() != 6) {
        return Err(Error::Invalid("center must be three points of Q^6".into()));
    }
    if Matrix::from_rows(center.to_vec()).rank() != 3 {
        return Err(Error::RankDeficient);
    }
    if center_meets_veronese(center, seed)? {
        return Err(Error::CenterMeetsSurface);
    }
    let mut g = substream(seed, 0x5E);
    for attempt in 0..budget {
        let w = random_nonzero_vector(&mut g, 6, 9);
        let mut rows = center.to_vec();
        rows.push(w.clone());
        if Matrix::from_rows(rows.clone()).rank() != 4 {
            continue;
        }
        let conics = annihilator_conics(&rows);
        let (q1, q2) = (conics[0].clone(), conics[1].clone());
        let count = match curve_pair_real_intersections(&q1, &q2, seed.wrapping_add(attempt as u64)) {
            Ok(c) => c,
            Err(Error::CommonComponent) => continue,
            Err(e) => return Err(e),
        };
        if count.real_count < count.total_count {
            return Ok(VeroneseOutcome::RefutationFound {
                extra_point: w,
                conics: (q1, q2),
                count,
                attempts: attempt + 1,
            });
        }
    }
    Ok(VeroneseOutcome::Exhausted { attempts: budget })
}

/// Random center V (three integer points of ℚ⁶) disjoint from the Veronese
/// surface.
pub fn random_veronese_center(seed: u64) -> Result<Vec<Vec<Rational>>> {
    let mut g = substream(seed, 0xCE);
    loop {
        let pts: Vec<Vec<Rational>> = (0..3).map(|_| random_nonzero_vector(&mut g, 6, 5)).collect();
        if Matrix::from_rows(pts.clone()).rank() == 3 && !center_meets_veronese(&pts, seed)? {
            return Ok(pts);
        }
    }
}

/// 25(x⁴+y⁴+z⁴) − 34(x²y²+x²z²+y²z²).
pub fn edge_quartic() -> HomForm {
    let mut terms = Vec::new();
    for i in 0..3 {
        let mut e = vec![0; 3];
        e[i] = 4;
        terms.push((e, Rational::from_integer(25.into())));
        for j in (i + 1)..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            e[j] = 2;
            terms.push((e, Rational::from_integer((-34).into())));
        }
    }
    HomForm::new(MultiPoly::from_terms(3, terms)).expect("quartic")
}

/// λ(x² − z²) + μ(y² − z²): the conics through (±1 : ±1 : 1).
pub fn edge_pencil_member(lambda: &Rational, mu: &Rational) -> HomForm {
    let p = MultiPoly::from_terms(
        3,
        [
            (vec![2, 0, 0], lambda.clone()),
            (vec![0, 2, 0], mu.clone()),
            (vec![0, 0, 2], -(lambda + mu)),
        ],
    );
    HomForm::with_degree(p, 2).expect("quadratic")
}

/// The four base points (±1 : ±1 : 1).
pub fn edge_base_points() -> Vec<Vec<Rational>> {
    let one = Rational::one();
    let mut out = Vec::new();
    for sx in [1i64, -1] {
        for sy in [1i64, -1] {
            out.push(vec![
                Rational::from_integer(sx.into()),
                Rational::from_integer(sy.into()),
                one.clone(),
            ]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, vec_of};
    use crate::interlace::{classify_pair, PairVerdict};

    fn xs(n: usize) -> Vec<MultiPoly> {
        (0..n).map(|i| MultiPoly::var(n, i)).collect()
    }

    #[test]
    fn direction_examples() {
        let x = xs(3);
        let quad = HomForm::new(&(&x[0].pow(2) - &x[1].pow(2)) - &x[2].pow(2)).unwrap();
        assert!(direction_test(&quad, &vec_of(&[1, 0, 0]), &vec_of(&[0, 1, 0])).unwrap());
        let sos = HomForm::new(&(&x[0].pow(2) + &x[1].pow(2)) + &x[2].pow(2)).unwrap();
        assert!(!direction_test(&sos, &vec_of(&[1, 0, 0]), &vec_of(&[0, 1, 2])).unwrap());
        let prod = HomForm::new(&(&x[0] * &x[1]) * &x[2]).unwrap();
        assert!(direction_test(&prod, &vec_of(&[1, 1, 1]), &vec_of(&[1, 2, 3])).unwrap());
        assert_eq!(
            direction_test(&prod, &vec_of(&[1, 0, 1]), &vec_of(&[1, 2, 3])),
            Err(Error::InvalidBasePoint)
        );
    }

    #[test]
    fn search_examples() {
        let x = xs(3);
        let sos = HomForm::new(&(&x[0].pow(2) + &x[1].pow(2)) + &x[2].pow(2)).unwrap();
        let v = hyperbolicity_search(&sos, &vec_of(&[1, 0, 0]), 50, 0).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::Refuted);
        assert!(v.samples <= 3);
        let sq = HomForm::new(x[0].pow(2)).unwrap();
        let v = hyperbolicity_search(&sq, &vec_of(&[1, 0, 0]), 200, 1).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::NotRefuted);
        assert_eq!(v.samples, 200);
    }

    #[test]
    fn definite_pencil_is_certified() {
        let a1 = Matrix::from_i64(&[&[1, 2], &[2, -3]]);
        let a2 = Matrix::from_i64(&[&[0, 1], &[1, 5]]);
        let p = MatrixPencil::new(vec![Matrix::identity(2), a1, a2]).unwrap();
        let v = hyperbolicity_search_pencil(&p, &vec_of(&[1, 0, 0]), 10, 0).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::Certified);
        assert_eq!(v.reason, Some(CertificateReason::DefinitePencil));
        let det = p.determinant().unwrap();
        assert_eq!(det.eval(&vec_of(&[1, 1, 1])), Matrix::from_i64(&[&[2, 3], &[3, 3]]).det());
    }

    #[test]
    fn twisted_cubic_projection() {
        let cc = CurveCenter::rational_normal_curve(3, vec![vec_of(&[1, 0, -4, 0]), vec_of(&[0, 1, 0, -1])]).unwrap();
        let m = project_curve(&cc).unwrap();
        assert_eq!(m, RationalMapP1::from_coeffs(&[1, 0, -4, 0], &[0, 1, 0, -1]).unwrap());
        assert_eq!(classify_pair(&m).unwrap().verdict, PairVerdict::RealFiberedInterlacing);

        let cc = CurveCenter::rational_normal_curve(3, vec![vec_of(&[1, 0, 0, 0]), vec_of(&[0, 0, 0, 1])]).unwrap();
        let m = project_curve(&cc).unwrap();
        assert_eq!(classify_pair(&m).unwrap().verdict, PairVerdict::NotRealFibered);

        // center through the point (1:0:0:0) of the curve
        let cc = CurveCenter::rational_normal_curve(3, vec![vec_of(&[0, 1, 0, 0]), vec_of(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(project_curve(&cc), Err(Error::CommonZero));
    }

    #[test]
    fn rational_normal_curves_via_mobius_centers() {
        for n in 1..=5 {
            let cc = CurveCenter::rational_normal_curve(n, mobius_center(n).unwrap()).unwrap();
            let m = project_curve(&cc).unwrap();
            assert_eq!(classify_pair(&m).unwrap().verdict, PairVerdict::RealFiberedInterlacing);
        }
    }

    #[test]
    fn intersection_examples() {
        let x = xs(3);
        let circle = HomForm::new(&(&x[0].pow(2) + &x[1].pow(2)) - &x[2].pow(2)).unwrap();
        let xz = HomForm::new(&x[0] * &x[2]).unwrap();
        let c = curve_pair_real_intersections(&circle, &xz, 0).unwrap();
        assert_eq!((c.real_count, c.total_count, c.transversal), (2, 4, true));

        let big = HomForm::new(&(&x[0].pow(2) + &x[1].pow(2)) - &x[2].pow(2).scale(&int(4))).unwrap();
        let c = curve_pair_real_intersections(&circle, &big, 0).unwrap();
        assert_eq!((c.real_count, c.total_count, c.transversal), (0, 2, false));

        let line = HomForm::new(x[0].clone()).unwrap();
        let c = curve_pair_real_intersections(&circle, &line, 0).unwrap();
        assert_eq!((c.real_count, c.total_count), (2, 2));

        assert_eq!(
            curve_pair_real_intersections(&circle, &circle.scale(&int(2)), 0),
            Err(Error::CommonComponent)
        );
    }

    #[test]
    fn edge_quartic_signs_and_pencil() {
        let f = edge_quartic();
        for p in edge_base_points() {
            assert_eq!(f.eval(&p), int(-27));
        }
        assert_eq!(f.eval(&vec_of(&[0, 0, 1])), int(25));
        let q = edge_pencil_member(&int(1), &int(2));
        let c = curve_pair_real_intersections(&f, &q, 3).unwrap();
        assert_eq!((c.real_count, c.total_count), (8, 8));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(dividing_parity(3, 1), DividingParity::Impossible);
        assert_eq!(dividing_parity_reason(3, 1), "g+1-s=3 odd");
        assert_eq!(dividing_parity(3, 4), DividingParity::Possible);
        assert_eq!(dividing_parity(5, 6), DividingParity::Possible);
        assert_eq!(dividing_parity(3, 0), DividingParity::Impossible);
        assert_eq!(dividing_parity(1, 4), DividingParity::Impossible);
    }

    #[test]
    fn veronese_search() {
        let v = random_veronese_center(1).unwrap();
        match veronese_refutation(&v, 100, 1).unwrap() {
            VeroneseOutcome::RefutationFound { count, .. } => assert!(count.real_count < count.total_count),
            VeroneseOutcome::Exhausted { .. } => panic!("no refutation found"),
        }
        assert_eq!(veronese_refutation(&v, 0, 1).unwrap(), VeroneseOutcome::Exhausted { attempts: 0 });
        // a center containing ν(1, 0, 0)
        let mut bad = v.clone();
        bad[0] = veronese_point(&vec_of(&[1, 0, 0]));
        assert_eq!(veronese_refutation(&bad, 10, 1), Err(Error::CenterMeetsSurface));
    }
}
