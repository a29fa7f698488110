use super::rational::{int, Rational};
use super::ring::RingElem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial over ℚ, coefficients lowest degree first.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and `degree` is `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::new(vec![-r.clone(), Rational::one()])
    }

    /// ∏ (t − r_i).
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(UniPoly::one(), |acc, r| acc * UniPoly::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rational::one() / lc))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| acc * self.clone())
    }

    /// p(q(t)).
    pub fn compose(&self, q: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| acc * q.clone() + UniPoly::constant(c.clone()))
    }

    /// p(−t).
    pub fn reflect(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient; the remainder must vanish.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return if self.is_zero() { UniPoly::zero() } else { UniPoly::one() };
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Yun's squarefree decomposition: `self = lc · ∏ factors[i]^(i+1)` with
    /// each factor monic and squarefree (possibly constant 1).
    pub fn squarefree_decomposition(&self) -> Vec<UniPoly> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        if self.is_constant() {
            return vec![];
        }
        let mut out = Vec::new();
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a);
        let mut c = fp.exact_div(&a);
        let mut d = c - b.derivative();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.exact_div(&g);
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&g);
            d = c - b.derivative();
        }
        while out.last().is_some_and(|p| p.is_constant()) {
            out.pop();
        }
        out
    }

    /// Positive rescaling to coprime integer coefficients.
    pub fn primitive_rational(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.primitive_integer_coeffs();
        UniPoly::new(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// Integer coefficients obtained by a *positive* rational rescaling.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ints;
        }
        let g = g.abs();
        ints.into_iter().map(|x| x / &g).collect()
    }

    /// Cauchy bound: every complex root has modulus below it.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading_coeff();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| (c / &lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.display_var("t"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl RingElem for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn division_roundtrip() {
        let a = UniPoly::from_i64(&[1, 0, -3, 2, 5]);
        let b = UniPoly::from_i64(&[2, 1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b + r.clone(), a);
        assert!(r.deg0() < 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2)
        let p = UniPoly::from_roots(&[int(1), int(1), int(-2)]);
        assert_eq!(p.squarefree_part(), UniPoly::from_roots(&[int(1), int(-2)]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], UniPoly::linear_root(&int(-2)));
        assert_eq!(dec[1], UniPoly::linear_root(&int(1)));
    }

    #[test]
    fn squarefree_decomposition_reassembles() {
        let p = UniPoly::from_roots(&[frac(1, 2), frac(1, 2), frac(1, 2), int(3), int(-1), int(-1)])
            .scale(&int(-4));
        let dec = p.squarefree_decomposition();
        let back = dec
            .iter()
            .enumerate()
            .fold(UniPoly::constant(p.leading_coeff()), |acc, (i, f)| {
                acc * f.pow(i as u32 + 1)
            });
        assert_eq!(back, p);
    }

    #[test]
    fn compose_and_eval() {
        let p = UniPoly::from_i64(&[1, 0, 1]);
        let q = UniPoly::from_i64(&[1, 2]);
        let pq = p.compose(&q);
        for x in -3..4 {
            let x = int(x);
            assert_eq!(pq.eval(&x), p.eval(&q.eval(&x)));
        }
        assert_eq!(p.display_var("t"), "t^2 + 1");
    }
}
