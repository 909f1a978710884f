//! Unified `(alpha, beta)` entropy kernels, quantum and classical, plus the
//! scalar helpers the divergence closed forms are assembled from.
//!
//! With `k = (1 - alpha) * beta`:
//!
//! | quantity | value |
//! |---|---|
//! | `S(rho)` | `((Tr rho^a)^b - 1) / k` |
//! | `D(rho‖sigma)` | `(1 - (Tr rho^a sigma^(1-a))^b) / k` |
//! | `H(p)` | `((sum p_i^a)^b - 1) / k` |
//!
//! Matrix powers are taken on the support only, so a zero eigenvalue stays
//! zero under a negative exponent.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, power_from_spectrum};
use crate::params::ParamPair;
use crate::state::DensityMatrix;

/// Probability entries in `[-PROB_CLAMP, 0)` are clamped to zero.
pub const PROB_CLAMP: f64 = 1e-12;
pub const PROB_SUM_TOL: f64 = 1e-10;
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
pub const KERNEL_FLOOR: f64 = 1e-300;

/// Non-negative vector summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(probs.len());
        for p in probs {
            if !p.is_finite() || p < -PROB_CLAMP {
                return Err(Error::BadProbabilities(format!("entry {p}")));
            }
            cleaned.push(p.max(0.0));
        }
        let total: f64 = cleaned.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::BadProbabilities(format!("sum {total}")));
        }
        Ok(Self { probs: cleaned })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// `sum_i lambda_i^alpha` over positive entries.
fn power_sum(values: impl IntoIterator<Item = f64>, alpha: f64) -> f64 {
    values.into_iter().filter(|&l| l > 0.0).map(|l| l.powf(alpha)).sum()
}

/// `Tr rho^alpha` over the support eigenvalues.
pub fn tr_alpha_power(rho: &DensityMatrix, alpha: f64) -> f64 {
    let spec = eig_hermitian(rho.matrix()).expect("density matrices are Hermitian");
    let cut = spec.support_threshold();
    power_sum(spec.eigenvalues.iter().copied().filter(|&l| l > cut), alpha)
}

/// Quantum unified entropy `S_{alpha,beta}(rho)`.
pub fn quantum_entropy(rho: &DensityMatrix, p: ParamPair) -> f64 {
    unified_from_power_sum(tr_alpha_power(rho, p.alpha()), p)
}

/// Relative entropy value plus a flag for the `alpha > 1` regime where
/// `rho` has weight outside the support of `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeEntropy {
    pub value: f64,
    /// `Tr(rho^a sigma^(1-a))`
    pub kernel: f64,
    pub support_mismatch: bool,
}

/// Quantum unified relative entropy `D_{alpha,beta}(rho‖sigma)`.
pub fn quantum_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, p: ParamPair) -> Result<RelativeEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let alpha = p.alpha();
    let rho_spec = eig_hermitian(rho.matrix())?;
    let sigma_spec = eig_hermitian(sigma.matrix())?;
    let rho_pow = power_from_spectrum(&rho_spec, alpha);
    let sigma_pow = power_from_spectrum(&sigma_spec, 1.0 - alpha);
    let z = rho_pow.trace_product(&sigma_pow);
    // residue scales with the kernel, which grows like sigma_min^(1-a) for a > 1
    if z.im.abs() > IMAG_RESIDUE_TOL * z.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue(z.im));
    }
    let kernel = z.re;
    if kernel <= KERNEL_FLOOR {
        return Err(Error::DegenerateKernel(kernel));
    }

    let support_mismatch = alpha > 1.0 && {
        // weight of rho on the null space of sigma
        let cut = sigma_spec.support_threshold();
        let null_proj = sigma_spec.map(|l| if l > cut { 0.0 } else { 1.0 });
        rho.matrix().trace_product(&null_proj).re > 1e-10
    };

    Ok(RelativeEntropy {
        value: (1.0 - kernel.powf(p.beta())) / p.denominator(),
        kernel,
        support_mismatch,
    })
}

/// Classical unified entropy `H_{alpha,beta}(p)`.
pub fn unified_entropy(probs: &ProbVector, p: ParamPair) -> f64 {
    unified_from_power_sum(power_sum(probs.probs().iter().copied(), p.alpha()), p)
}

/// Binary Tsallis entropy `(l^a + (1-l)^a - 1) / (1 - a)`.
pub fn tsallis_entropy(lambda: f64, alpha: f64) -> f64 {
    (binary_power_sum(lambda, alpha) - 1.0) / (1.0 - alpha)
}

/// `g(x) = (x^beta - 1) / ((1 - alpha) beta)`: maps a power sum to the
/// unified entropy value.
pub fn unified_from_power_sum(x: f64, p: ParamPair) -> f64 {
    (x.powf(p.beta()) - 1.0) / p.denominator()
}

/// `f(l) = l^alpha + (1 - l)^alpha`, with `0^alpha` dropped.
pub fn binary_power_sum(lambda: f64, alpha: f64) -> f64 {
    power_sum([lambda, 1.0 - lambda], alpha)
}

/// `w(x) = cos^{2 alpha} x + sin^{2 alpha} x`.
pub fn angular_power_sum(x: f64, alpha: f64) -> f64 {
    x.cos().abs().powf(2.0 * alpha) + x.sin().abs().powf(2.0 * alpha)
}

/// Binary Shannon entropy in bits, `0 log 0 = 0`.
pub fn binary_shannon_base2(lambda: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(lambda) + term(1.0 - lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;

    fn pp(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    #[test]
    fn trace_power_examples() {
        let pure = PureState::basis(3, 1).projector();
        for a in [0.3, 0.5, 1.7, 4.0] {
            assert!((tr_alpha_power(&pure, a) - 1.0).abs() < 1e-14);
        }
        let half = DensityMatrix::maximally_mixed(2);
        assert!((tr_alpha_power(&half, 2.0) - 0.5).abs() < 1e-15);
        let d = DensityMatrix::from_diag(&[0.75, 0.25]).unwrap();
        let expected = 0.75f64.sqrt() + 0.5;
        assert!((tr_alpha_power(&d, 0.5) - expected).abs() < 1e-14);
        assert!((tr_alpha_power(&d, 0.5) - 1.366025).abs() < 1e-6);
    }

    #[test]
    fn entropy_examples() {
        let pure = PureState::basis(2, 0).projector();
        for (a, b) in [(0.5, 1.0), (2.0, -3.0), (1.5, 0.5)] {
            assert!(quantum_entropy(&pure, pp(a, b)).abs() < 1e-14);
        }
        let half = DensityMatrix::maximally_mixed(2);
        assert!((quantum_entropy(&half, pp(2.0, 1.0)) - 0.5).abs() < 1e-15);
        assert!((quantum_entropy(&half, pp(2.0, 2.0)) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn relative_entropy_examples() {
        let d = DensityMatrix::from_diag(&[0.75, 0.25]).unwrap();
        assert!(quantum_relative_entropy(&d, &d, pp(0.5, 1.0)).unwrap().value.abs() < 1e-14);
        assert!(quantum_relative_entropy(&d, &d, pp(3.0, -2.0)).unwrap().value.abs() < 1e-13);

        let zero = PureState::basis(2, 0).projector();
        let half = DensityMatrix::maximally_mixed(2);
        let r = quantum_relative_entropy(&zero, &half, pp(0.5, 1.0)).unwrap();
        assert!((r.value - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!(!r.support_mismatch);

        let e = DensityMatrix::from_diag(&[0.25, 0.75]).unwrap();
        let r = quantum_relative_entropy(&d, &e, pp(2.0, 1.0)).unwrap();
        let expected = 0.75f64.powi(2) / 0.25 + 0.25f64.powi(2) / 0.75 - 1.0;
        assert!((r.value - expected).abs() < 1e-13);
        assert!((r.value - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_support_mismatch_flag() {
        let plus = PureState::new(vec![
            num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap()
        .projector();
        let zero = PureState::basis(2, 0).projector();
        let r = quantum_relative_entropy(&plus, &zero, pp(1.5, 1.0)).unwrap();
        assert!(r.support_mismatch);
        // orthogonal supports with alpha < 1 leave an empty kernel
        let one = PureState::basis(2, 1).projector();
        assert!(matches!(
            quantum_relative_entropy(&zero, &one, pp(0.5, 1.0)),
            Err(Error::DegenerateKernel(_))
        ));
    }

    #[test]
    fn unified_entropy_examples() {
        let p = ProbVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(unified_entropy(&p, pp(0.5, 2.0)), 0.0);
        let u = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert!((unified_entropy(&u, pp(2.0, 1.0)) - 0.5).abs() < 1e-15);
        // (sqrt(a) + sqrt(b))^2 - 1 for (alpha, beta) = (1/2, 2)
        let (a, b) = (0.794341, 0.205659);
        let v = ProbVector::new(vec![a, b]).unwrap();
        let oracle = (a.sqrt() + b.sqrt()).powi(2) - 1.0;
        assert!((unified_entropy(&v, pp(0.5, 2.0)) - oracle).abs() < 1e-14);
        assert!((oracle - 0.808365).abs() < 1e-6);
    }

    #[test]
    fn prob_vector_clamping() {
        let p = ProbVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
        assert!(ProbVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.4]).is_err());
    }

    #[test]
    fn scalar_helpers() {
        assert_eq!(tsallis_entropy(0.0, 2.0), 0.0);
        assert!((tsallis_entropy(0.5, 2.0) - 0.5).abs() < 1e-15);
        let oracle = (0.9f64.powf(1.5) + 0.1f64.powf(1.5) - 1.0) / -0.5;
        assert!((tsallis_entropy(0.9, 1.5) - oracle).abs() < 1e-15);

        assert_eq!(unified_from_power_sum(1.0, pp(0.7, 3.0)), 0.0);
        assert!((unified_from_power_sum(2.0, pp(0.5, 1.0)) - 2.0).abs() < 1e-15);
        assert!((unified_from_power_sum(0.75, pp(2.0, 2.0)) - 0.21875).abs() < 1e-15);

        assert!((binary_power_sum(0.5, 2.0) - 0.5).abs() < 1e-15);
        assert_eq!(binary_power_sum(1.0, 0.3), 1.0);
        assert!((binary_power_sum(0.944037, 0.5) - 1.208181).abs() < 1e-6);

        assert_eq!(angular_power_sum(0.0, 1.3), 1.0);
        let q = std::f64::consts::FRAC_PI_4;
        assert!((angular_power_sum(q, 2.0) - 0.5).abs() < 1e-15);
        let x = std::f64::consts::PI / 32.0;
        let oracle = x.cos().powi(3) + x.sin().powi(3);
        assert!((angular_power_sum(x, 1.5) - oracle).abs() < 1e-15);

        assert_eq!(binary_shannon_base2(0.0), 0.0);
        assert_eq!(binary_shannon_base2(0.5), 1.0);
        assert!((binary_shannon_base2(0.9037) - 0.4571).abs() < 1e-4);
    }
}
