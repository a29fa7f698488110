//! Trace forms of finite free algebras ℚ[z][t]/(q) and positivity of
//! presented module forms as real-fiberedness certificates.

use crate::algebra::{subsets, Matrix, MultiPoly, Rational, SignatureResult, SymMatrix, UniPoly};
use crate::error::{Error, Result};
use crate::interlace::RationalMapP1;
use crate::realroots::{negative_point, nonneg_on_reals};
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Polynomial in t with coefficients in the base ring, lowest degree first.
pub type PolyOverBase = Vec<UniPoly>;

/// Square matrix over the base ring ℚ[z] (constants when the base is ℚ).
pub type BaseMatrix = Matrix<UniPoly>;

/// B = base[t]/(q) with q monic in t of degree m ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    arity: u8,
    q: PolyOverBase,
}

impl FinitePresentation {
    /// `arity` is 0 (base ℚ) or 1 (base ℚ[z]).
    pub fn new(arity: u8, q: PolyOverBase) -> Result<Self> {
        if arity > 1 {
            return Err(Error::Invalid(format!("base arity {arity} is not supported")));
        }
        let mut q = q;
        while q.last().is_some_and(|c| c.is_zero()) {
            q.pop();
        }
        if q.len() < 2 {
            return Err(Error::Invalid("q must have degree at least 1 in t".into()));
        }
        if *q.last().expect("nonempty") != UniPoly::one() {
            return Err(Error::NotMonic);
        }
        if arity == 0 && q.iter().any(|c| !c.is_constant()) {
            return Err(Error::Invalid("coefficients must be constant over base arity 0".into()));
        }
        Ok(FinitePresentation { arity, q })
    }

    /// Base arity 0 from a monic univariate polynomial.
    pub fn over_point(q: &UniPoly) -> Result<Self> {
        FinitePresentation::new(0, q.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    /// Read q from a multivariate polynomial in variables t (index `t`) and
    /// optionally z (index `z`); any other variable is rejected. The arity is
    /// 1 exactly when z occurs.
    pub fn from_multipoly(q: &MultiPoly, t: usize, z: Option<usize>) -> Result<Self> {
        let mut coeffs: PolyOverBase = vec![UniPoly::zero(); q.degree_in(t) as usize + 1];
        let mut arity = 0;
        for (e, c) in q.terms() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 && i != t && Some(i) != z {
                    return Err(Error::Invalid(format!("unexpected variable index {i}")));
                }
            }
            let zk = z.map_or(0, |zi| e[zi]) as usize;
            if zk > 0 {
                arity = 1;
            }
            let slot = &mut coeffs[e[t] as usize];
            *slot = slot.clone() + UniPoly::monomial(c.clone(), zk);
        }
        FinitePresentation::new(arity, coeffs)
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self) -> &PolyOverBase {
        &self.q
    }

    /// q(t, z0) as a polynomial in t.
    pub fn fiber(&self, z0: &Rational) -> UniPoly {
        UniPoly::new(self.q.iter().map(|c| c.eval(z0)).collect())
    }

    /// element mod q.
    pub fn reduce(&self, element: &[UniPoly]) -> PolyOverBase {
        let m = self.degree();
        let mut r: PolyOverBase = element.to_vec();
        while r.len() > m {
            let lead = r.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() - m;
            for (i, qc) in self.q[..m].iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - lead.clone() * qc.clone();
            }
        }
        r.resize(m, UniPoly::zero());
        r
    }

    fn times_t(&self, v: &[UniPoly]) -> PolyOverBase {
        let mut w = vec![UniPoly::zero()];
        w.extend_from_slice(v);
        self.reduce(&w)
    }
}

/// Matrix of multiplication by `element` on the basis 1, t, …, t^(m−1).
pub fn mult_matrix(fp: &FinitePresentation, element: &[UniPoly]) -> BaseMatrix {
    let m = fp.degree();
    let mut col = fp.reduce(element);
    let mut out = Matrix::filled(m, m, UniPoly::zero());
    for j in 0..m {
        for (i, c) in col.iter().enumerate() {
            out.set(i, j, c.clone());
        }
        col = fp.times_t(&col);
    }
    out
}

fn trace(m: &BaseMatrix) -> UniPoly {
    (0..m.rows()).fold(UniPoly::zero(), |acc, i| acc + m.get(i, i).clone())
}

/// Trace form (a, b) ↦ tr(ab) on the basis 1, t, …, t^(m−1).
pub fn trace_form(fp: &FinitePresentation) -> BaseMatrix {
    let m = fp.degree();
    let mut power: PolyOverBase = vec![UniPoly::one()];
    let traces: Vec<UniPoly> = (0..2 * m - 1)
        .map(|_| {
            let tr = trace(&mult_matrix(fp, &power));
            power = fp.times_t(&power);
            tr
        })
        .collect();
    Matrix::from_fn(m, m, |i, j| traces[i + j].clone())
}

pub fn evaluate_base(m: &BaseMatrix, z0: &Rational) -> Matrix {
    m.map(|p| p.eval(z0))
}

/// A principal minor and whether it is nonnegative on ℝ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorEvidence {
    pub indices: Vec<usize>,
    pub minor: UniPoly,
    pub nonneg: bool,
}

/// A base point where the form fails to be positive semidefinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub z: Rational,
    pub signature: SignatureResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdResult {
    pub psd: bool,
    pub minors: Vec<MinorEvidence>,
    pub witness: Option<Witness>,
}

/// Exact decision of M(z0) ⪰ 0 for every real z0 via all principal minors.
pub fn psd_on_reals(m: &BaseMatrix) -> Result<PsdResult> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let index_sets: Vec<Vec<usize>> = (1..=n).flat_map(|k| subsets(n, k)).collect();
    let minors: Vec<MinorEvidence> = index_sets
        .into_par_iter()
        .map(|idx| {
            let minor = m.submatrix(&idx, &idx).det_ring();
            let nonneg = minor.is_zero() || nonneg_on_reals(&minor)?;
            Ok(MinorEvidence { indices: idx, minor, nonneg })
        })
        .collect::<Result<_>>()?;
    let witness = match minors.iter().find(|e| !e.nonneg) {
        Some(e) => {
            let z = negative_point(&e.minor)?
                .ok_or_else(|| Error::Inconsistent("negative minor without a negative point".into()))?;
            let signature = SymMatrix::new(evaluate_base(m, &z))?.signature();
            if signature.n_minus == 0 {
                return Err(Error::Inconsistent("witness point has a semidefinite form".into()));
            }
            Some(Witness { z, signature })
        }
        None => None,
    };
    Ok(PsdResult {
        psd: witness.is_none(),
        minors,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberVerdict {
    RealFibered,
    NotRealFibered,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberednessCertificate {
    pub verdict: FiberVerdict,
    pub psd: PsdResult,
    /// Number of real points of the fiber over the witness point.
    pub witness_real_points: Option<usize>,
}

/// Real fibered exactly when the trace form is positive semidefinite at
/// every real base point.
pub fn real_fibered_certificate(fp: &FinitePresentation) -> Result<FiberednessCertificate> {
    let psd = psd_on_reals(&trace_form(fp))?;
    let (verdict, witness_real_points) = match &psd.witness {
        None => (FiberVerdict::RealFibered, None),
        Some(w) => (FiberVerdict::NotRealFibered, Some(w.signature.index() as usize)),
    };
    Ok(FiberednessCertificate {
        verdict,
        psd,
        witness_real_points,
    })
}

/// Multiplication by t: the module structure of the regular representation.
pub fn regular_representation(fp: &FinitePresentation) -> Vec<BaseMatrix> {
    vec![mult_matrix(fp, &[UniPoly::zero(), UniPoly::one()])]
}

/// Positivity of a module form: the form must commute with the actions in
/// the sense form·B_i = B_iᵀ·form. A positive semidefinite form with
/// nonvanishing determinant certifies real fiberedness; anything else is
/// inconclusive.
pub fn f_positivity_check(actions: &[BaseMatrix], form: &BaseMatrix) -> Result<FiberednessCertificate> {
    let n = form.rows();
    if !form.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: form.cols(),
        });
    }
    for b in actions {
        if b.rows() != n || b.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.rows().max(b.cols()),
            });
        }
    }
    for a in 0..actions.len() {
        for b in (a + 1)..actions.len() {
            if let Some((r, c)) = actions[a].commutator_witness(&actions[b]) {
                return Err(Error::NonCommuting(a + 1, b + 1, r, c));
            }
        }
    }
    if !form.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for (i, b) in actions.iter().enumerate() {
        if form.mul(b) != b.transpose().mul(form) {
            return Err(Error::NotSelfAdjoint(i + 1));
        }
    }
    let psd = psd_on_reals(form)?;
    let verdict = if psd.psd && !form.det_ring().is_zero() {
        FiberVerdict::RealFibered
    } else {
        FiberVerdict::Inconclusive
    };
    Ok(FiberednessCertificate {
        verdict,
        psd,
        witness_real_points: None,
    })
}

/// Target change (c, d) and the swapped flag used to bring a map into a
/// monic presentation.
fn monic_change(m: &RationalMapP1) -> (RationalMapP1, Rational) {
    let f_inf = m.f().eval(&[Rational::one(), Rational::zero()]);
    let g_inf = m.g().eval(&[Rational::one(), Rational::zero()]);
    // g̃ = c f + d g vanishes at (1:0)
    let (c, d) = (-g_inf.clone(), f_inf.clone());
    let g_new = m.member(&c, &d);
    let (f_new, lead) = if !f_inf.is_zero() {
        (m.f().clone(), f_inf)
    } else {
        (m.g().clone(), g_inf)
    };
    let inv = Rational::one() / &lead;
    let mapped = RationalMapP1::new(f_new.scale(&inv), g_new).expect("invertible target change keeps the map valid");
    (mapped, lead)
}

/// q(t, z) = f̃(t, 1) − z g̃(t, 1) after a real target change making f̃ monic
/// of degree n in the affine chart and g̃ of lower degree.
pub fn map_to_presentation(m: &RationalMapP1) -> Result<FinitePresentation> {
    let (mapped, _) = monic_change(m);
    let f = mapped.f().dehomogenize_t();
    let g = mapped.g().dehomogenize_t();
    let n = m.degree() as usize;
    let mut q: PolyOverBase = (0..=n).map(|i| UniPoly::constant(f.coeff(i))).collect();
    for i in 0..=n {
        let gi = g.coeff(i);
        if !gi.is_zero() {
            q[i] = q[i].clone() - UniPoly::monomial(gi, 1);
        }
    }
    let arity = if g.is_zero() { 0 } else { 1 };
    FinitePresentation::new(arity, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::interlace::{classify_pair, PairVerdict};
    use crate::realroots::hermite_matrix;

    fn z() -> UniPoly {
        UniPoly::from_i64(&[0, 1])
    }

    fn c(x: i64) -> UniPoly {
        UniPoly::from_i64(&[x])
    }

    fn t2_minus(p: UniPoly) -> FinitePresentation {
        FinitePresentation::new(1, vec![-p, c(0), c(1)]).unwrap()
    }

    #[test]
    fn multiplication_matrices() {
        let fp = t2_minus(z());
        let t = mult_matrix(&fp, &[c(0), c(1)]);
        assert_eq!(t, Matrix::from_rows(vec![vec![c(0), z()], vec![c(1), c(0)]]));
        let one = mult_matrix(&fp, &[c(1)]);
        assert_eq!(one, Matrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(1)]]));
        let fp0 = FinitePresentation::over_point(&UniPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(
            mult_matrix(&fp0, &[c(0), c(1)]),
            Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]])
        );
    }

    #[test]
    fn trace_forms() {
        let tf = trace_form(&t2_minus(z()));
        assert_eq!(tf, Matrix::from_rows(vec![vec![c(2), c(0)], vec![c(0), z().scale(&int(2))]]));
        let p = UniPoly::from_i64(&[1, 0, 1]);
        let tf = trace_form(&t2_minus(p.clone()));
        assert_eq!(tf, Matrix::from_rows(vec![vec![c(2), c(0)], vec![c(0), p.scale(&int(2))]]));
        let q = UniPoly::from_i64(&[-1, 0, 1]);
        let tf0 = trace_form(&FinitePresentation::over_point(&q).unwrap());
        assert_eq!(evaluate_base(&tf0, &int(0)), *hermite_matrix(&q).unwrap().matrix());
    }

    #[test]
    fn psd_decisions() {
        let r = psd_on_reals(&trace_form(&t2_minus(z()))).unwrap();
        assert!(!r.psd);
        assert_eq!(r.witness.as_ref().unwrap().z, int(-1));
        assert!(psd_on_reals(&trace_form(&t2_minus(UniPoly::from_i64(&[1, 0, 1])))).unwrap().psd);
        let zero = Matrix::filled(2, 2, UniPoly::zero());
        let r = psd_on_reals(&zero).unwrap();
        assert!(r.psd);
        assert_eq!(r.minors.len(), 3);
    }

    #[test]
    fn certificates() {
        let cert = real_fibered_certificate(&t2_minus(UniPoly::from_i64(&[1, 0, 1]))).unwrap();
        assert_eq!(cert.verdict, FiberVerdict::RealFibered);
        let cert = real_fibered_certificate(&t2_minus(z())).unwrap();
        assert_eq!(cert.verdict, FiberVerdict::NotRealFibered);
        assert_eq!(cert.psd.witness.unwrap().z, int(-1));
        assert_eq!(cert.witness_real_points, Some(0));
        let cubic = FinitePresentation::over_point(&UniPoly::from_i64(&[0, -4, 0, 1])).unwrap();
        let cert = real_fibered_certificate(&cubic).unwrap();
        assert_eq!(cert.verdict, FiberVerdict::RealFibered);
    }

    #[test]
    fn module_forms() {
        let fp = t2_minus(UniPoly::from_i64(&[1, 0, 1]));
        let cert = f_positivity_check(&regular_representation(&fp), &trace_form(&fp)).unwrap();
        assert_eq!(cert.verdict, FiberVerdict::RealFibered);
        let b = Matrix::from_rows(vec![vec![z()]]);
        let one = Matrix::from_rows(vec![vec![c(1)]]);
        assert_eq!(f_positivity_check(&[b.clone()], &one).unwrap().verdict, FiberVerdict::RealFibered);
        let minus = Matrix::from_rows(vec![vec![c(-1)]]);
        assert_eq!(f_positivity_check(&[b], &minus).unwrap().verdict, FiberVerdict::Inconclusive);
        let t = mult_matrix(&fp, &[c(0), c(1)]);
        let identity = Matrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(1)]]);
        assert_eq!(f_positivity_check(&[t], &identity), Err(Error::NotSelfAdjoint(1)));
        let n1 = Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(0), c(0)]]);
        let n2 = n1.transpose();
        assert!(matches!(
            f_positivity_check(&[n1, n2], &identity),
            Err(Error::NonCommuting(1, 2, _, _))
        ));
    }

    #[test]
    fn presentations_of_maps() {
        let id = RationalMapP1::from_coeffs(&[1, 0], &[0, 1]).unwrap();
        let fp = map_to_presentation(&id).unwrap();
        assert_eq!(fp.q(), &vec![-z(), c(1)]);
        assert_eq!(real_fibered_certificate(&fp).unwrap().verdict, FiberVerdict::RealFibered);

        let m2 = RationalMapP1::from_coeffs(&[1, 0, -1], &[0, 2, 0]).unwrap();
        let fp = map_to_presentation(&m2).unwrap();
        assert_eq!(fp.q(), &vec![c(-1), z().scale(&int(-2)), c(1)]);
        assert_eq!(real_fibered_certificate(&fp).unwrap().verdict, FiberVerdict::RealFibered);

        let sq = RationalMapP1::from_coeffs(&[1, 0, 0], &[0, 0, 1]).unwrap();
        let fp = map_to_presentation(&sq).unwrap();
        assert_eq!(fp.q(), &vec![-z(), c(0), c(1)]);
        assert_eq!(real_fibered_certificate(&fp).unwrap().verdict, FiberVerdict::NotRealFibered);
        assert_eq!(classify_pair(&sq).unwrap().verdict, PairVerdict::NotRealFibered);

        // f vanishes at (1:0): the roles of f and g swap
        let swapped = RationalMapP1::from_coeffs(&[0, 2, 0], &[1, 0, -1]).unwrap();
        let fp = map_to_presentation(&swapped).unwrap();
        assert_eq!(fp.q().last().unwrap(), &c(1));
        assert_eq!(real_fibered_certificate(&fp).unwrap().verdict, FiberVerdict::RealFibered);
    }

    #[test]
    fn reads_multivariate_input() {
        // variables (t, z)
        let q = &MultiPoly::var(2, 0).pow(2) - &MultiPoly::var(2, 1);
        let fp = FinitePresentation::from_multipoly(&q, 0, Some(1)).unwrap();
        assert_eq!(fp, t2_minus(z()));
        let q = &MultiPoly::var(2, 0).pow(2) - &MultiPoly::one(2);
        assert_eq!(FinitePresentation::from_multipoly(&q, 0, Some(1)).unwrap().arity(), 0);
        let bad = &MultiPoly::var(2, 0).pow(2).scale(&int(2)) - &MultiPoly::one(2);
        assert_eq!(FinitePresentation::from_multipoly(&bad, 0, Some(1)), Err(Error::NotMonic));
    }
}
