use super::rational::{int, Rational};
use super::ring::RingElem;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector; its length always equals the variable count.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over ℚ in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        MultiPoly::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Σ c_i x_i.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        MultiPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        assert_eq!(e.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d` (zero polynomial: `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                let mut p = Rational::one();
                for _ in 0..=m {
                    v.push(p.clone());
                    p *= x;
                }
                v
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `x_i ↦ subs[i]`; all substitutes share one variable count.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let target = subs.first().map_or(0, |s| s.nvars);
        assert!(subs.iter().all(|s| s.nvars == target));
        let mut cache: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::one(target), s.clone()]).collect();
        let mut acc = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k];
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * int(e[i] as i64))
            }),
        )
    }

    /// View as a univariate polynomial in `x_i`; other variables must be absent.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Coefficients of powers of `x_i`: `self = Σ_k out[k] · x_i^k`, where the
    /// `out[k]` no longer involve `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(self.nvars); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// For polynomials of total degree ≤ 1: constant term and the linear
    /// coefficients.
    pub fn affine_parts(&self) -> Option<(Rational, Vec<Rational>)> {
        if self.total_degree() > 1 {
            return None;
        }
        let lin = (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect();
        Some((self.constant_term(), lin))
    }

    /// Same polynomial with extra trailing variables that do not occur.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(nvars, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Render with the given variable names (must cover every variable).
    pub fn display_with(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // graded order, highest degree first
        let mut terms: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in terms {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MultiPoly::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "MultiPoly({})", self.display_with(&refs))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MultiPoly::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl RingElem for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Homogeneous form: a `MultiPoly` whose terms all have total degree `degree`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomForm {
    poly: MultiPoly,
    degree: u32,
}

impl HomForm {
    /// Infers the degree; the zero polynomial is rejected.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = poly
            .homogeneous_degree()
            .ok_or(Error::NotHomogeneous(poly.total_degree()))?;
        Ok(HomForm { poly, degree })
    }

    /// Accepts the zero polynomial as a form of any degree.
    pub fn with_degree(poly: MultiPoly, degree: u32) -> Result<Self> {
        if poly.is_homogeneous_of(degree) {
            Ok(HomForm { poly, degree })
        } else {
            Err(Error::NotHomogeneous(degree))
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        self.poly.eval(p)
    }

    /// Binary form from coefficients in the basis s^n, s^(n-1) t, …, t^n.
    pub fn binary(coeffs_desc_s: &[Rational]) -> HomForm {
        let n = coeffs_desc_s.len() as u32 - 1;
        let poly = MultiPoly::from_terms(
            2,
            coeffs_desc_s
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![n - i as u32, i as u32], c.clone())),
        );
        HomForm { poly, degree: n }
    }

    /// Coefficients of a binary form in the basis s^n, s^(n-1) t, …, t^n.
    pub fn binary_coeffs(&self) -> Vec<Rational> {
        assert_eq!(self.nvars(), 2, "binary form expected");
        let n = self.degree;
        (0..=n).map(|i| self.poly.coeff(&[n - i, i])).collect()
    }

    /// f(s, 1) as a univariate polynomial in s.
    pub fn dehomogenize_t(&self) -> UniPoly {
        let c = self.binary_coeffs();
        UniPoly::new(c.into_iter().rev().collect())
    }

    /// f(1, t) as a univariate polynomial in t.
    pub fn dehomogenize_s(&self) -> UniPoly {
        UniPoly::new(self.binary_coeffs())
    }

    pub fn scale(&self, c: &Rational) -> HomForm {
        HomForm {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }
}

/// t ↦ f(e + t·x).
pub fn restrict_to_line(f: &HomForm, e: &[Rational], x: &[Rational]) -> Result<UniPoly> {
    let n = f.nvars();
    if e.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: e.len(),
        });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let lines: Vec<UniPoly> = e
        .iter()
        .zip(x)
        .map(|(a, b)| UniPoly::new(vec![a.clone(), b.clone()]))
        .collect();
    let mut powers: Vec<Vec<UniPoly>> = lines.iter().map(|l| vec![UniPoly::one(), l.clone()]).collect();
    let mut acc = UniPoly::zero();
    for (exps, c) in f.poly().terms() {
        let mut t = UniPoly::constant(c.clone());
        for (i, &k) in exps.iter().enumerate() {
            let k = k as usize;
            while powers[i].len() <= k {
                let next = powers[i][powers[i].len() - 1].clone() * lines[i].clone();
                powers[i].push(next);
            }
            if k > 0 {
                t = t * powers[i][k].clone();
            }
        }
        acc = acc + t;
    }
    Ok(acc)
}
