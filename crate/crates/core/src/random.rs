//! Seeded sampling of states and unitaries.
//!
//! All ensembles draw from ChaCha8 (`rand_chacha::ChaCha8Rng`), a
//! counter-based stream cipher generator, seeded through `seed_from_u64`.
//! Same seed, same samples, on every platform.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{inner, norm, CMatrix};
use crate::state::{DensityMatrix, PureState};

/// Caller-owned sampler; the only source of randomness in the crate.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self) -> f64 {
        use rand::Rng;
        self.rng.gen::<f64>()
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        use rand::Rng;
        self.rng.gen_range(0..n)
    }

    fn gaussian(&mut self) -> C64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        C64::new(re, im)
    }

    fn gaussian_vec(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.gaussian()).collect()
    }

    /// Haar-random pure state: a normalized complex Gaussian vector.
    pub fn pure_state(&mut self, dim: usize) -> PureState {
        loop {
            let v = self.gaussian_vec(dim);
            if let Ok(s) = PureState::normalized(v) {
                return s;
            }
        }
    }

    /// Reduced state of a Haar-random pure state on `dim x rank`.
    pub fn density_matrix(&mut self, dim: usize, rank: usize) -> Result<DensityMatrix> {
        if rank == 0 || rank > dim {
            return Err(Error::BadRank { dim, rank });
        }
        let psi = self.pure_state(dim * rank);
        let amps = psi.amplitudes();
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = (0..rank).map(|k| amps[i * rank + k] * amps[j * rank + k].conj()).sum();
            }
        }
        // clean rounding on the trace before validation
        let tr = m.trace().re;
        DensityMatrix::new(m.scale_real(1.0 / tr))
    }

    /// Haar-random unitary via Gram-Schmidt on Gaussian columns.
    pub fn unitary(&mut self, dim: usize) -> CMatrix {
        let cols = self.orthonormal_columns(dim, dim);
        let mut u = CMatrix::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..dim {
                u[(i, j)] = col[i];
            }
        }
        u
    }

    /// `cols` orthonormal vectors of length `rows` (requires `cols <= rows`).
    pub fn orthonormal_columns(&mut self, rows: usize, cols: usize) -> Vec<Vec<C64>> {
        assert!(cols <= rows);
        let mut out: Vec<Vec<C64>> = Vec::with_capacity(cols);
        while out.len() < cols {
            let mut v = self.gaussian_vec(rows);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for q in &out {
                    let c = inner(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= c * qi;
                    }
                }
            }
            let n = norm(&v);
            if n > 1e-8 {
                out.push(v.into_iter().map(|z| z / n).collect());
            }
        }
        out
    }

    /// Random Hermitian matrix with Gaussian entries.
    pub fn hermitian(&mut self, dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(self.gaussian().re, 0.0);
            for j in i + 1..dim {
                let z = self.gaussian();
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}

/// One-shot Haar pure state for `seed`.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    Sampler::new(seed).pure_state(dim)
}

/// One-shot random density matrix for `seed`.
pub fn random_density_matrix(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    Sampler::new(seed).density_matrix(dim, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_pure_state(2, 7), random_pure_state(2, 7));
        assert_ne!(random_pure_state(2, 7), random_pure_state(2, 8));
        let n = norm(random_pure_state(2, 7).amplitudes());
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_first_moment() {
        // E |<0|psi>|^2 = 1/d for Haar states
        let mut s = Sampler::new(11);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| s.pure_state(2).amplitudes()[0].norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn density_rank_and_trace() {
        let rho = random_density_matrix(3, 1, 5).unwrap();
        let spec = eig_hermitian(rho.matrix()).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-10);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(matches!(
            random_density_matrix(2, 3, 0),
            Err(Error::BadRank { dim: 2, rank: 3 })
        ));
    }

    #[test]
    fn hilbert_schmidt_purity_moment() {
        // For the induced measure on d x k with d = k = 2 the mean purity is
        // (d + k) / (d k + 1) = 4 / 5.
        let mut s = Sampler::new(3);
        let n = 20_000;
        let mean: f64 = (0..n)
            .map(|_| {
                let rho = s.density_matrix(2, 2).unwrap();
                rho.matrix().trace_product(rho.matrix()).re
            })
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.8).abs() < 0.005, "mean purity = {mean}");
    }

    #[test]
    fn unitary_is_unitary() {
        let u = Sampler::new(1).unitary(4);
        assert!(u.unitarity_defect() < 1e-12);
    }
}
