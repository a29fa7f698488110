//! Seeded random rationals, deterministic grids and structured random
//! matrices used by the sampling-based checks.

use crate::algebra::rational::height;
use crate::algebra::{int, Matrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream from a base seed and a task index.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}

pub fn random_int(rng: &mut SeededRng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// p/q with |p| ≤ height and 1 ≤ q ≤ height.
pub fn random_rational(rng: &mut SeededRng, height: i64) -> Rational {
    let p = rng.gen_range(-height..=height);
    let q = rng.gen_range(1..=height.max(1));
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_nonzero_rational(rng: &mut SeededRng, height: i64) -> Rational {
    loop {
        let x = random_rational(rng, height);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_vector(rng: &mut SeededRng, n: usize, height: i64) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, height)).collect()
}

pub fn random_nonzero_vector(rng: &mut SeededRng, n: usize, height: i64) -> Vec<Rational> {
    loop {
        let v = random_vector(rng, n, height);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn random_int_matrix(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_int(rng, bound))
}

pub fn random_symmetric(rng: &mut SeededRng, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = random_int(rng, bound);
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
    }
    m
}

pub fn random_invertible(rng: &mut SeededRng, n: usize, bound: i64) -> Matrix {
    loop {
        let m = random_int_matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Rational orthogonal matrix (I − K)(I + K)⁻¹ from a random skew K.
pub fn cayley_orthogonal(rng: &mut SeededRng, n: usize, height: i64) -> Matrix {
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = random_rational(rng, height);
            k.set(i, j, x.clone());
            k.set(j, i, -x);
        }
    }
    let id = Matrix::identity(n);
    let inv = id
        .add(&k)
        .inverse()
        .expect("I + K is invertible for skew K");
    id.sub(&k).mul(&inv)
}

/// Reduced fractions p/q with |p| ≤ h, 1 ≤ q ≤ h, in increasing order.
pub fn farey_values(h: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                out.push(Rational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Projective points (λ:μ) of ℙ¹: (0:1), (1:0), then (x:1) for the Farey
/// values of height ≤ h ordered by height and then by value.
pub fn farey_projective_grid(h: i64) -> Vec<(Rational, Rational)> {
    let mut vals: Vec<Rational> = farey_values(h).into_iter().filter(|x| !x.is_zero()).collect();
    vals.sort_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b)));
    let mut out = vec![
        (Rational::zero(), Rational::one()),
        (Rational::one(), Rational::zero()),
    ];
    out.extend(vals.into_iter().map(|x| (x, Rational::one())));
    out
}

/// Integer vectors with entries in [-r, r] and max-norm exactly r, in
/// lexicographic order.
pub fn integer_shell(n: usize, r: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let width = (2 * r + 1) as u64;
    let total = width.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut v = Vec::with_capacity(n);
        let mut maxabs = 0;
        for _ in 0..n {
            let x = (c % width) as i64 - r;
            c /= width;
            maxabs = maxabs.max(x.abs());
            v.push(int(x));
        }
        if maxabs == r {
            v.reverse();
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_is_orthogonal() {
        let mut r = rng(7);
        for n in 1..5 {
            let q = cayley_orthogonal(&mut r, n, 5);
            assert_eq!(q.mul(&q.transpose()), Matrix::identity(n));
        }
    }

    #[test]
    fn farey_grid_size() {
        let g = farey_projective_grid(7);
        assert!(g.len() >= 50);
        assert!(g.contains(&(Rational::zero(), Rational::one())));
        assert!(g.contains(&(Rational::one(), Rational::zero())));
    }

    #[test]
    fn shells() {
        assert_eq!(integer_shell(2, 1).len(), 8);
        assert_eq!(integer_shell(3, 2).len(), 125 - 27);
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let a: Vec<Rational> = random_vector(&mut rng(3), 5, 9);
        let b: Vec<Rational> = random_vector(&mut rng(3), 5, 9);
        assert_eq!(a, b);
    }
}
