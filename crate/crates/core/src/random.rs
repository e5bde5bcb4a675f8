//! Seeded samplers. Every sampler draws from a caller-supplied RNG so runs
//! are reproducible from a single `u64` seed.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::BasisParams;
use crate::qutrit::{Operator, Unitary};

/// Smallest entry modulus a "generic" unitary may have.
pub const GENERIC_MIN_MODULUS: f64 = 0.05;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly random normalized `(α, β, γ)`.
pub fn random_qutrit_coeffs<R: Rng + ?Sized>(rng: &mut R) -> [C64; 3] {
    loop {
        let v = [(); 3].map(|_| gaussian_complex(rng));
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.map(|z| z / n);
        }
    }
}

/// Haar-distributed 3×3 unitary: Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary {
    loop {
        let g = DMatrix::<C64>::from_fn(3, 3, |_, _| gaussian_complex(rng));
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(3);
        let mut degenerate = false;
        for j in 0..3 {
            let mut v: Vec<C64> = (0..3).map(|i| g[(i, j)]).collect();
            for q in &cols {
                let ip: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= ip * qi;
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-6 {
                degenerate = true;
                break;
            }
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
        if degenerate {
            continue;
        }
        let m = DMatrix::from_fn(3, 3, |i, j| cols[j][i]);
        if let Ok(u) = Unitary::new(Operator::from_matrix(m)) {
            return u;
        }
    }
}

/// Random unitary with every entry modulus at least [`GENERIC_MIN_MODULUS`],
/// which keeps it clear of every zero-pattern family.
pub fn generic_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary {
    loop {
        let u = random_unitary(rng);
        if u.to_rows().iter().all(|z| z.norm() >= GENERIC_MIN_MODULUS) {
            return u;
        }
    }
}

pub fn random_angles<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Random `(x1, y1, τ1, τ2)` on the constraint surface
/// `|x1|² + |y1|² + |x1+y1|² = 1`.
pub fn random_basis_params<R: Rng + ?Sized>(rng: &mut R) -> BasisParams {
    loop {
        let (x, y) = (gaussian_complex(rng), gaussian_complex(rng));
        let q = x.norm_sqr() + y.norm_sqr() + (x + y).norm_sqr();
        if q < 1e-6 {
            continue;
        }
        let s = 1.0 / q.sqrt();
        let taus = random_angles(rng, 2);
        if let Ok(p) = BasisParams::new(x * s, y * s, taus[0], taus[1]) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_samples_are_unitary() {
        let mut rng = seeded(1);
        for _ in 0..200 {
            assert!(random_unitary(&mut rng).unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn generic_samples_respect_floor() {
        let mut rng = seeded(2);
        for _ in 0..50 {
            let u = generic_unitary(&mut rng);
            assert!(u.to_rows().iter().all(|z| z.norm() >= GENERIC_MIN_MODULUS));
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a = random_qutrit_coeffs(&mut seeded(9));
        let b = random_qutrit_coeffs(&mut seeded(9));
        assert_eq!(a, b);
    }
}
