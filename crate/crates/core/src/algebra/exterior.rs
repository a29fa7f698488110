//! Exterior and tensor algebras over ℚ^m with basis vectors indexed by
//! `usize`; elements are sparse maps from index words to coefficients.

use super::rational::Rational;
use super::ring::RingElem;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sign of the permutation sorting `word`, and the sorted word; `None` when
/// an index repeats.
pub fn sort_sign(word: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && w[j - 1] == w[j] {
            return None;
        }
    }
    Some((sign, w))
}

/// All k-subsets of {0, …, n−1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn insert_term(map: &mut BTreeMap<Vec<usize>, Rational>, key: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Element of the exterior algebra; keys are strictly increasing index sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExtElem {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl ExtElem {
    pub fn zero() -> Self {
        ExtElem::default()
    }

    pub fn scalar(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        ExtElem { terms }
    }

    /// Σ c_i e_i.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut e = ExtElem::zero();
        for (i, c) in coeffs.iter().enumerate() {
            insert_term(&mut e.terms, vec![i], c.clone());
        }
        e
    }

    /// c · e_{word}, reordered with its sign.
    pub fn monomial(word: &[usize], c: Rational) -> Self {
        let mut e = ExtElem::zero();
        if let Some((s, key)) = sort_sign(word) {
            insert_term(&mut e.terms, key, if s > 0 { c } else { -c });
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[usize]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(j)` when every term has degree j.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.len());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ExtElem::zero();
        }
        ExtElem {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &ExtElem) -> ExtElem {
        let mut out = ExtElem::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let word: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((s, key)) = sort_sign(&word) {
                    let c = ca * cb;
                    insert_term(&mut out.terms, key, if s > 0 { c } else { -c });
                }
            }
        }
        out
    }
}

impl Add for ExtElem {
    type Output = ExtElem;
    fn add(mut self, rhs: ExtElem) -> ExtElem {
        for (k, v) in rhs.terms {
            insert_term(&mut self.terms, k, v);
        }
        self
    }
}

impl Sub for ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: ExtElem) -> ExtElem {
        self + (-rhs)
    }
}

impl Neg for ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: ExtElem) -> ExtElem {
        self.wedge(&rhs)
    }
}

impl RingElem for ExtElem {
    fn zero_like(&self) -> Self {
        ExtElem::zero()
    }
    fn one_like(&self) -> Self {
        ExtElem::scalar(Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Element of the tensor algebra; keys are arbitrary index words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TensorElem {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut e = TensorElem::zero();
        for (i, c) in coeffs.iter().enumerate() {
            insert_term(&mut e.terms, vec![i], c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tensor(&self, other: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let word: Vec<usize> = a.iter().chain(b).copied().collect();
                insert_term(&mut out.terms, word, ca * cb);
            }
        }
        out
    }

    /// Image under the quotient map to the exterior algebra.
    pub fn antisymmetrize(&self) -> ExtElem {
        let mut out = ExtElem::zero();
        for (w, c) in &self.terms {
            out = out + ExtElem::monomial(w, c.clone());
        }
        out
    }
}

impl Add for TensorElem {
    type Output = TensorElem;
    fn add(mut self, rhs: TensorElem) -> TensorElem {
        for (k, v) in rhs.terms {
            insert_term(&mut self.terms, k, v);
        }
        self
    }
}

impl Sub for TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: TensorElem) -> TensorElem {
        self + (-rhs)
    }
}

impl Neg for TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        TensorElem {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for TensorElem {
    type Output = TensorElem;
    fn mul(self, rhs: TensorElem) -> TensorElem {
        self.tensor(&rhs)
    }
}

impl RingElem for TensorElem {
    fn zero_like(&self) -> Self {
        TensorElem::zero()
    }
    fn one_like(&self) -> Self {
        let mut e = TensorElem::zero();
        e.terms.insert(vec![], Rational::one());
        e
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, vec_of};

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn sort_signs() {
        assert_eq!(sort_sign(&[0, 1, 2]), Some((1, vec![0, 1, 2])));
        assert_eq!(sort_sign(&[1, 0, 2]), Some((-1, vec![0, 1, 2])));
        assert_eq!(sort_sign(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(sort_sign(&[1, 2, 1]), None);
    }

    #[test]
    fn wedge_is_alternating() {
        let a = ExtElem::linear(&vec_of(&[1, 2, 0]));
        let b = ExtElem::linear(&vec_of(&[0, 1, 3]));
        assert!(a.wedge(&a).is_zero());
        assert_eq!(a.wedge(&b), -b.wedge(&a));
        assert_eq!(a.wedge(&b).coeff(&[0, 1]), int(1));
        assert_eq!(a.wedge(&b).coeff(&[1, 2]), int(6));
    }

    #[test]
    fn antisymmetrization_is_multiplicative() {
        let a = TensorElem::linear(&vec_of(&[1, -1, 2]));
        let b = TensorElem::linear(&vec_of(&[3, 0, 1]));
        let c = TensorElem::linear(&vec_of(&[0, 5, 1]));
        let lhs = a.tensor(&b).tensor(&c).antisymmetrize();
        let rhs = a.antisymmetrize().wedge(&b.antisymmetrize()).wedge(&c.antisymmetrize());
        assert_eq!(lhs, rhs);
    }
}
