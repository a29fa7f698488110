//! Binary forms and maps ℙ¹ → ℙ¹: Bézoutians, resultants, interlacing
//! classification with a sampled pencil guard, composition, Möbius power maps
//! and real ramification.

use crate::algebra::rational::{binomial, height};
use crate::algebra::{int, HomForm, Matrix, MultiPoly, Rational, SignatureResult, SymMatrix, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{is_real_rooted, is_real_rooted_sturm, isolate_real_roots, RealRoot};
use crate::sampling::{farey_projective_grid, farey_values, random_int, random_rational, SeededRng};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

fn check_binary(f: &HomForm) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.nvars(),
        });
    }
    Ok(())
}

/// Homogeneous Bézoutian of two binary forms of equal degree n ≥ 1, in the
/// basis s^(n−1), s^(n−2) t, …, t^(n−1).
pub fn bezoutian(f: &HomForm, g: &HomForm) -> Result<SymMatrix> {
    check_binary(f)?;
    check_binary(g)?;
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    let n = f.degree() as usize;
    if n == 0 {
        return Err(Error::Invalid("Bézoutian needs degree at least 1".into()));
    }
    // With s = u = 1: F(t)G(v) − F(v)G(t) = (v − t) Σ B[i][j] t^i v^j,
    // where F(t) = f(1, t) has coefficients fc[k] on t^k.
    let fc = f.binary_coeffs();
    let gc = g.binary_coeffs();
    // h[b] = coefficient polynomial in t of v^b, as a dense vector
    let h: Vec<Vec<Rational>> = (0..=n)
        .map(|b| {
            (0..=n)
                .map(|a| &fc[a] * &gc[b] - &fc[b] * &gc[a])
                .collect()
        })
        .collect();
    // synthetic division by (v − t) in v
    let mut q: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + 1]; n];
    q[n - 1] = h[n].clone();
    for j in (1..n).rev() {
        let mut next = h[j].clone();
        for a in 0..n {
            next[a + 1] += &q[j][a];
        }
        q[j - 1] = next;
    }
    debug_assert!({
        let mut rem = h[0].clone();
        for a in 0..n {
            rem[a + 1] += &q[0][a];
        }
        rem.iter().all(|x| x.is_zero())
    });
    SymMatrix::new(Matrix::from_fn(n, n, |i, j| q[j][i].clone()))
}

/// Sylvester resultant of two binary forms using their full coefficient
/// vectors; zero iff they share a projective zero (or both leading
/// coefficients vanish).
pub fn resultant(f: &HomForm, g: &HomForm) -> Result<Rational> {
    check_binary(f)?;
    check_binary(g)?;
    Ok(sylvester(&f.binary_coeffs(), &g.binary_coeffs()).det())
}

/// Sylvester matrix of coefficient vectors given highest power first.
pub fn sylvester(a: &[Rational], b: &[Rational]) -> Matrix {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let size = n + m;
    Matrix::from_fn(size, size, |r, c| {
        if r < m {
            c.checked_sub(r)
                .and_then(|k| a.get(k))
                .cloned()
                .unwrap_or_else(Rational::zero)
        } else {
            c.checked_sub(r - m)
                .and_then(|k| b.get(k))
                .cloned()
                .unwrap_or_else(Rational::zero)
        }
    })
}

/// A morphism ℙ¹ → ℙ¹, (s:t) ↦ (f:g), with f and g of equal degree and no
/// common projective zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMapP1 {
    f: HomForm,
    g: HomForm,
}

impl RationalMapP1 {
    pub fn new(f: HomForm, g: HomForm) -> Result<Self> {
        check_binary(&f)?;
        check_binary(&g)?;
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch(f.degree(), g.degree()));
        }
        if f.degree() == 0 {
            return Err(Error::Invalid("map degree must be at least 1".into()));
        }
        if resultant(&f, &g)?.is_zero() {
            return Err(Error::CommonZero);
        }
        Ok(RationalMapP1 { f, g })
    }

    /// From coefficient lists in the basis s^n, s^(n−1) t, …, t^n.
    pub fn from_coeffs(f: &[i64], g: &[i64]) -> Result<Self> {
        let conv = |c: &[i64]| HomForm::binary(&c.iter().map(|&x| int(x)).collect::<Vec<_>>());
        RationalMapP1::new(conv(f), conv(g))
    }

    pub fn identity() -> Self {
        RationalMapP1::from_coeffs(&[1, 0], &[0, 1]).expect("identity map")
    }

    pub fn f(&self) -> &HomForm {
        &self.f
    }

    pub fn g(&self) -> &HomForm {
        &self.g
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// λ f + μ g.
    pub fn member(&self, lambda: &Rational, mu: &Rational) -> HomForm {
        let p = &self.f.poly().scale(lambda) + &self.g.poly().scale(mu);
        HomForm::with_degree(p, self.degree()).expect("pencil member stays homogeneous")
    }

    pub fn bezoutian(&self) -> SymMatrix {
        bezoutian(&self.f, &self.g).expect("valid map")
    }

    /// Apply a target change (f, g) ↦ (a f + b g, c f + d g).
    pub fn target_change(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        RationalMapP1::new(self.member(a, b), self.member(c, d))
    }
}

/// Whether a binary form has only real projective zeros (distinct-root
/// convention); a degree drop in the affine chart is a zero at (1:0).
pub fn binary_form_real_rooted(h: &HomForm) -> Result<bool> {
    let p = h.dehomogenize_t();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(is_real_rooted(&p)?.all_real())
}

/// Sturm-only variant for the pencil grid.
fn binary_form_real_rooted_sturm(h: &HomForm) -> Result<bool> {
    let p = h.dehomogenize_t();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(is_real_rooted_sturm(&p)?.all_real())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairVerdict {
    RealFiberedInterlacing,
    CommonZero,
    NotRealFibered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    pub verdict: PairVerdict,
    pub bezoutian: Option<SymMatrix>,
    pub signature: Option<SignatureResult>,
    /// (λ:μ) with λ f + μ g not real-rooted.
    pub witness: Option<(Rational, Rational)>,
    pub samples_checked: usize,
}

/// Farey height of the deterministic pencil grid.
pub const PENCIL_GRID_HEIGHT: i64 = 7;
/// Largest height searched for a witness beyond the base grid.
pub const WITNESS_SEARCH_HEIGHT: i64 = 64;

fn first_failure(m: &RationalMapP1, grid: &[(Rational, Rational)]) -> Result<Option<usize>> {
    let results: Vec<Result<bool>> = grid
        .par_iter()
        .map(|(l, u)| binary_form_real_rooted_sturm(&m.member(l, u)))
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        if !r? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Decide real fiberedness of a map by definiteness of its Bézoutian, and
/// cross-check the verdict on a deterministic grid of pencil members.
pub fn classify_pair(m: &RationalMapP1) -> Result<PairClassification> {
    let b = m.bezoutian();
    let sig = b.signature();
    let grid = farey_projective_grid(PENCIL_GRID_HEIGHT);
    let failure = first_failure(m, &grid)?;
    if sig.is_definite() {
        if let Some(i) = failure {
            return Err(Error::Inconsistent(format!(
                "definite Bézoutian but pencil member ({}:{}) is not real-rooted",
                grid[i].0, grid[i].1
            )));
        }
        return Ok(PairClassification {
            verdict: PairVerdict::RealFiberedInterlacing,
            bezoutian: Some(b),
            signature: Some(sig),
            witness: None,
            samples_checked: grid.len(),
        });
    }
    let mut checked = grid.len();
    let witness = match failure {
        Some(i) => Some(grid[i].clone()),
        None => {
            let mut found = None;
            for h in (PENCIL_GRID_HEIGHT + 1)..=WITNESS_SEARCH_HEIGHT {
                let fresh: Vec<(Rational, Rational)> = farey_values(h)
                    .into_iter()
                    .filter(|x| height(x) == BigInt::from(h))
                    .map(|x| (x, Rational::one()))
                    .collect();
                checked += fresh.len();
                if let Some(i) = first_failure(m, &fresh)? {
                    found = Some(fresh[i].clone());
                    break;
                }
            }
            found
        }
    };
    match witness {
        Some(w) => Ok(PairClassification {
            verdict: PairVerdict::NotRealFibered,
            bezoutian: Some(b),
            signature: Some(sig),
            witness: Some(w),
            samples_checked: checked,
        }),
        None => Err(Error::Inconsistent(
            "indefinite Bézoutian but every sampled pencil member is real-rooted".into(),
        )),
    }
}

/// Classification entry point for raw forms that may share a zero.
pub fn classify_forms(f: &HomForm, g: &HomForm) -> Result<PairClassification> {
    match RationalMapP1::new(f.clone(), g.clone()) {
        Ok(m) => classify_pair(&m),
        Err(Error::CommonZero) => Ok(PairClassification {
            verdict: PairVerdict::CommonZero,
            bezoutian: bezoutian(f, g).ok(),
            signature: bezoutian(f, g).ok().map(|b| b.signature()),
            witness: None,
            samples_checked: 0,
        }),
        Err(e) => Err(e),
    }
}

/// m1 ∘ m2: (f1(f2, g2), g1(f2, g2)).
pub fn compose(m1: &RationalMapP1, m2: &RationalMapP1) -> Result<RationalMapP1> {
    let subs = [m2.f.poly().clone(), m2.g.poly().clone()];
    let f = HomForm::with_degree(m1.f.poly().substitute(&subs), m1.degree() * m2.degree())?;
    let g = HomForm::with_degree(m1.g.poly().substitute(&subs), m1.degree() * m2.degree())?;
    RationalMapP1::new(f, g)
}

/// The degree-k map conjugate to z ↦ z^k under the Cayley transform
/// z ↦ (z − i)/(z + i): (s:t) ↦ (Re (s + i t)^k : Im (s + i t)^k).
pub fn mobius_power_map(k: u32) -> Result<RationalMapP1> {
    if k == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let k = k as usize;
    let mut re = vec![Rational::zero(); k + 1];
    let mut im = vec![Rational::zero(); k + 1];
    for j in 0..=k {
        let c = Rational::from_integer(BigInt::from(binomial(k, j)));
        // i^j
        let sign = if (j / 2) % 2 == 0 { c } else { -c };
        if j.is_even() {
            re[j] = sign;
        } else {
            im[j] = sign;
        }
    }
    RationalMapP1::new(HomForm::binary(&re), HomForm::binary(&im))
}

/// A real point of ℙ¹: (x:1) with x isolated, or (1:0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectivePoint {
    Affine(RealRoot),
    Infinity,
}

/// Wronskian f_s g_t − f_t g_s, a form of degree 2n − 2.
pub fn wronskian(m: &RationalMapP1) -> MultiPoly {
    let (f, g) = (m.f.poly(), m.g.poly());
    &(&f.partial(0) * &g.partial(1)) - &(&f.partial(1) * &g.partial(0))
}

/// Real zeros of the Wronskian, i.e. the real ramification points.
pub fn real_ramification(m: &RationalMapP1) -> Result<Vec<ProjectivePoint>> {
    let w = wronskian(m);
    if w.is_zero() {
        return Err(Error::Inconsistent("vanishing Wronskian".into()));
    }
    let deg = 2 * m.degree() - 2;
    let wf = HomForm::with_degree(w, deg)?;
    let affine: UniPoly = wf.dehomogenize_t();
    let mut out: Vec<ProjectivePoint> = isolate_real_roots(&affine)?
        .into_iter()
        .map(ProjectivePoint::Affine)
        .collect();
    if affine.deg0() < deg as usize {
        out.push(ProjectivePoint::Infinity);
    }
    Ok(out)
}

/// (∏ (s − a_i t), ∏ (s − b_i t)).
pub fn map_from_roots(a: &[Rational], b: &[Rational]) -> Result<RationalMapP1> {
    let prod = |roots: &[Rational]| {
        let mut acc = MultiPoly::one(2);
        for r in roots {
            let lin = MultiPoly::linear(&[Rational::one(), -r.clone()]);
            acc = &acc * &lin;
        }
        HomForm::with_degree(acc, roots.len() as u32)
    };
    RationalMapP1::new(prod(a)?, prod(b)?)
}

/// Random map with strictly interlacing rational roots.
pub fn random_interlacing_map(rng: &mut SeededRng, degree: usize) -> Result<RationalMapP1> {
    let mut pts: Vec<Rational> = Vec::new();
    while pts.len() < 2 * degree {
        let x = random_rational(rng, 12);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.sort();
    let a: Vec<Rational> = pts.iter().step_by(2).cloned().collect();
    let b: Vec<Rational> = pts.iter().skip(1).step_by(2).cloned().collect();
    map_from_roots(&a, &b)
}

/// Random map with integer coefficients in [−bound, bound].
pub fn random_map(rng: &mut SeededRng, degree: usize, bound: i64) -> RationalMapP1 {
    loop {
        let f: Vec<Rational> = (0..=degree).map(|_| random_int(rng, bound)).collect();
        let g: Vec<Rational> = (0..=degree).map(|_| random_int(rng, bound)).collect();
        if f.iter().all(|x| x.is_zero()) || g.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Ok(m) = RationalMapP1::new(HomForm::binary(&f), HomForm::binary(&g)) {
            return m;
        }
    }
}
