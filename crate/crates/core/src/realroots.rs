//! Real root counting and isolation: Sturm sequences in integer arithmetic,
//! Hermite power-sum forms, and nonnegativity on ℝ.

use crate::algebra::rational::bigint_sign;
use crate::algebra::{signature, Matrix, Rational, SymMatrix, UniPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootVerdict {
    AllRealRoots,
    NotAllReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootMethod {
    Sturm,
    Hermite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRootCertificate {
    pub verdict: RootVerdict,
    pub distinct_real_roots: usize,
    pub distinct_complex_roots: usize,
    pub method: RootMethod,
}

impl RealRootCertificate {
    pub fn all_real(&self) -> bool {
        self.verdict == RootVerdict::AllRealRoots
    }
}

/// Sturm sequence of a polynomial, stored as primitive integer coefficient
/// vectors (lowest degree first).
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

fn int_degree(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn make_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|x| x / &g).collect()
}

/// Pseudo-remainder r ≡ lc(b)^steps · a (mod b), with the step count.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let db = int_degree(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        steps += 1;
        r = trim(r);
    }
    (r, steps)
}

/// Sign of Σ p_i x^i at a rational x, evaluated over the integers.
fn sign_at(p: &[BigInt], x: &Rational) -> i32 {
    let n = x.numer();
    let d = x.denom();
    let deg = p.len() - 1;
    let mut acc = p[deg].clone();
    let mut dpow = BigInt::one();
    for i in (0..deg).rev() {
        dpow *= d;
        acc = acc * n + &p[i] * &dpow;
    }
    bigint_sign(&acc)
}

impl SturmSequence {
    /// Sequence p, p', −prem(…) with signs corrected so each term is a positive
    /// multiple of the Euclidean remainder.
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.primitive_integer_coeffs();
        let mut seq = vec![p0.clone()];
        if p.is_constant() {
            return Ok(SturmSequence { seq });
        }
        let p1 = make_primitive(
            p0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        );
        seq.push(p1);
        loop {
            let n = seq.len();
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            if b.len() <= 1 {
                break;
            }
            let (r, steps) = pseudo_remainder(a, b);
            if r.is_empty() {
                break;
            }
            // r is lc(b)^steps times the Euclidean remainder; negate so the
            // new term is a positive multiple of −rem.
            let flip = bigint_sign(&b[b.len() - 1]) < 0 && steps % 2 == 1;
            let next: Vec<BigInt> = r.into_iter().map(|x| if flip { x } else { -x }).collect();
            seq.push(make_primitive(next));
        }
        Ok(SturmSequence { seq })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| sign_at(p, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| bigint_sign(&p[p.len() - 1])))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = bigint_sign(&p[p.len() - 1]);
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in (a, b].
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots.
pub fn sturm_count(p: &UniPoly) -> Result<usize> {
    Ok(SturmSequence::new(p)?.count_all())
}

/// A real root located either exactly or inside an open-closed interval
/// (lo, hi] containing no other root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

impl RealRoot {
    /// A rational approximation: the exact value or the interval midpoint.
    pub fn approx(&self) -> Rational {
        match self {
            RealRoot::Exact(r) => r.clone(),
            RealRoot::Interval { lo, hi } => (lo + hi) / Rational::from_integer(BigInt::from(2)),
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Interval { lo, .. } => lo,
        }
    }
}

/// Isolate the distinct real roots, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(vec![]);
    }
    let q = p.squarefree_part();
    let seq = SturmSequence::new(&q)?;
    let b = q.root_bound();
    let lo = -b.clone();
    let c = seq.count_in(&lo, &b);
    let mut out = Vec::new();
    isolate(&q, &seq, lo, b, c, &mut out);
    Ok(out)
}

fn isolate(q: &UniPoly, seq: &SturmSequence, lo: Rational, hi: Rational, c: usize, out: &mut Vec<RealRoot>) {
    if c == 0 {
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
    if c == 1 {
        if q.deg0() == 1 {
            out.push(RealRoot::Exact(-q.coeff(0) / q.coeff(1)));
        } else if q.eval(&hi).is_zero() {
            out.push(RealRoot::Exact(hi));
        } else if q.eval(&mid).is_zero() {
            out.push(RealRoot::Exact(mid));
        } else {
            out.push(RealRoot::Interval { lo, hi });
        }
        return;
    }
    let c1 = seq.count_in(&lo, &mid);
    isolate(q, seq, lo, mid.clone(), c1, out);
    isolate(q, seq, mid, hi, c - c1, out);
}

/// Shrink an isolating interval of a root of `p` below the given width.
pub fn refine_root(p: &UniPoly, root: &RealRoot, width: &Rational) -> Result<RealRoot> {
    let (mut lo, mut hi) = match root {
        RealRoot::Exact(_) => return Ok(root.clone()),
        RealRoot::Interval { lo, hi } => (lo.clone(), hi.clone()),
    };
    let q = p.squarefree_part();
    let seq = SturmSequence::new(&q)?;
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        if q.eval(&mid).is_zero() {
            return Ok(RealRoot::Exact(mid));
        }
        if seq.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RealRoot::Interval { lo, hi })
}

/// Power sums s_0, …, s_{count−1} of the roots of a monic polynomial.
pub fn power_sums(p: &UniPoly, count: usize) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.deg0();
    // p = t^n + c_1 t^(n-1) + … + c_n
    let c: Vec<Rational> = (0..=n).map(|k| p.coeff(n - k)).collect();
    let mut s: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(Rational::from_integer(BigInt::from(n)));
            continue;
        }
        let mut acc = Rational::zero();
        for i in 1..=k.min(n) {
            if i < k {
                acc += &c[i] * &s[k - i];
            }
        }
        if k <= n {
            acc += &c[k] * Rational::from_integer(BigInt::from(k));
        }
        s.push(-acc);
    }
    Ok(s)
}

/// Hankel matrix of power sums H[i][j] = s_{i+j}; input must be monic of
/// degree ≥ 1.
pub fn hermite_matrix(p: &UniPoly) -> Result<SymMatrix> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.deg0();
    if n == 0 {
        return Err(Error::Invalid("hermite matrix needs degree at least 1".into()));
    }
    let s = power_sums(p, 2 * n - 1)?;
    SymMatrix::new(Matrix::from_fn(n, n, |i, j| s[i + j].clone()))
}

/// Decide whether every complex root is real (multiplicity-insensitive).
/// Sturm and Hermite counts are both computed and must agree; the returned
/// certificate names Sturm as the primary method.
pub fn is_real_rooted(p: &UniPoly) -> Result<RealRootCertificate> {
    let sturm = is_real_rooted_sturm(p)?;
    if p.deg0() >= 1 {
        let h = hermite_matrix(&p.monic())?;
        let sig = signature(&h);
        let real = sig.index();
        if real != sturm.distinct_real_roots as i64 || sig.rank() != sturm.distinct_complex_roots {
            return Err(Error::Inconsistent(format!(
                "Sturm ({}, {}) and Hermite ({}, {}) root counts disagree",
                sturm.distinct_real_roots,
                sturm.distinct_complex_roots,
                real,
                sig.rank()
            )));
        }
    }
    Ok(sturm)
}

/// Sturm-only decision, for hot sampling loops.
pub fn is_real_rooted_sturm(p: &UniPoly) -> Result<RealRootCertificate> {
    let real = sturm_count(p)?;
    let complex = p.squarefree_part().deg0();
    Ok(certificate(real, complex, RootMethod::Sturm))
}

/// Hermite-only decision.
pub fn is_real_rooted_hermite(p: &UniPoly) -> Result<RealRootCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(certificate(0, 0, RootMethod::Hermite));
    }
    let sig = signature(&hermite_matrix(&p.monic())?);
    Ok(certificate(sig.index() as usize, sig.rank(), RootMethod::Hermite))
}

fn certificate(real: usize, complex: usize, method: RootMethod) -> RealRootCertificate {
    RealRootCertificate {
        verdict: if real == complex {
            RootVerdict::AllRealRoots
        } else {
            RootVerdict::NotAllReal
        },
        distinct_real_roots: real,
        distinct_complex_roots: complex,
        method,
    }
}

/// p(t) ≥ 0 for every real t.
pub fn nonneg_on_reals(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.leading_coeff().is_negative() {
        return Ok(false);
    }
    if p.deg0() % 2 == 1 {
        return Ok(false);
    }
    for (i, factor) in p.squarefree_decomposition().iter().enumerate() {
        if i % 2 == 0 && !factor.is_constant() && sturm_count(factor)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A real point where p < 0, if any.
pub fn negative_point(p: &UniPoly) -> Result<Option<Rational>> {
    if nonneg_on_reals(p)? {
        return Ok(None);
    }
    for x in candidate_points(p)? {
        if p.eval(&x).is_negative() {
            return Ok(Some(x));
        }
    }
    Err(Error::Inconsistent("no negative point found".into()))
}

/// Small-height rationals first (0, −1, 1, −2, 2, −1/2, 1/2, …), then one
/// point strictly between each pair of consecutive real roots and beyond the
/// extreme ones.
pub fn candidate_points(p: &UniPoly) -> Result<Vec<Rational>> {
    let mut pts = Vec::new();
    pts.push(Rational::zero());
    for h in 1..=4i64 {
        for q in 1..=h {
            for num in [-h, h] {
                let x = Rational::new(BigInt::from(num), BigInt::from(q));
                if !pts.contains(&x) {
                    pts.push(x);
                }
            }
            for num in 1..h {
                for sgn in [-1, 1] {
                    let x = Rational::new(BigInt::from(sgn * num), BigInt::from(h));
                    if !pts.contains(&x) {
                        pts.push(x);
                    }
                }
            }
        }
    }
    if !p.is_constant() {
        let roots = isolate_real_roots(p)?;
        let b = p.squarefree_part().root_bound();
        let mut fine = Vec::new();
        for r in &roots {
            fine.push(refine_root(p, r, &Rational::new(BigInt::one(), BigInt::from(1 << 20)))?);
        }
        let mut edges: Vec<Rational> = vec![-b.clone() - Rational::one()];
        for w in fine.windows(2) {
            // between consecutive roots: upper end of the left interval
            // lies strictly left of the right root
            let left_hi = match &w[0] {
                RealRoot::Exact(r) => r.clone(),
                RealRoot::Interval { hi, .. } => hi.clone(),
            };
            let right_lo = w[1].lower().clone();
            edges.push((left_hi + right_lo) / Rational::from_integer(BigInt::from(2)));
        }
        edges.push(b + Rational::one());
        pts.extend(edges);
    }
    Ok(pts)
}
