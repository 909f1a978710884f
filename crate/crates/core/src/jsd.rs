//! The two quantum `(alpha, beta)` Jensen-Shannon divergences.
//!
//! * `jsd` (entropic form): `S((rho + sigma)/2) - S(rho)/2 - S(sigma)/2`
//! * `jsd_prime` (relative form): `(D(rho‖mid) + D(sigma‖mid)) / 2`
//!
//! For two pure states the mixture `(|psi><psi| + |phi><phi|)/2` has at most
//! two nonzero eigenvalues `(1 +- |<psi|phi>|)/2`, which gives closed forms
//! for both divergences in terms of the overlap alone.

use num_complex::Complex64 as C64;

use crate::entropy::{quantum_entropy, quantum_relative_entropy, unified_from_power_sum};
use crate::error::{Error, Result};
use crate::linalg::{inner, overlap_defect, CMatrix};
use crate::params::ParamPair;
use crate::state::{DensityMatrix, PureState};

/// Overlaps within this distance of 1 make the pair spectrum degenerate.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Overlaps below this magnitude get phase 0.
pub const PHASE_FLOOR: f64 = 1e-14;

/// Eigen-data of the equal mixture of two pure states.
#[derive(Debug, Clone)]
pub struct PairSpectrum {
    pub lambda1: f64,
    pub lambda2: f64,
    pub xi1: PureState,
    /// Absent when the two states coincide up to phase.
    pub xi2: Option<PureState>,
    pub overlap_abs: f64,
    /// Phase of `<phi|psi>` in `(-pi, pi]`.
    pub phase_theta: f64,
    pub degenerate: bool,
}

impl PairSpectrum {
    /// `lambda1 xi1 xi1^dagger + lambda2 xi2 xi2^dagger`
    pub fn reconstruct(&self) -> CMatrix {
        let mut m = CMatrix::outer(self.xi1.amplitudes()).scale_real(self.lambda1);
        if let Some(xi2) = &self.xi2 {
            m = &m + &CMatrix::outer(xi2.amplitudes()).scale_real(self.lambda2);
        }
        m
    }
}

pub fn pair_spectrum(psi: &PureState, phi: &PureState) -> Result<PairSpectrum> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimMismatch(psi.dim(), phi.dim()));
    }
    let s = inner(phi.amplitudes(), psi.amplitudes());
    let overlap_abs = s.norm().min(1.0);
    let phase_theta = if overlap_abs <= PHASE_FLOOR { 0.0 } else { s.arg() };
    let defect = overlap_defect(phi.amplitudes(), psi.amplitudes());
    let lambda2 = defect / 2.0;
    let lambda1 = 1.0 - lambda2;
    let rot = C64::from_polar(1.0, phase_theta);
    let combine = |sign: f64| -> Vec<C64> {
        psi.amplitudes()
            .iter()
            .zip(phi.amplitudes())
            .map(|(a, b)| a + rot * b * sign)
            .collect()
    };
    let degenerate = defect <= DEGENERATE_TOL;
    let xi1 = PureState::normalized(combine(1.0))?;
    let xi2 = if degenerate {
        None
    } else {
        Some(PureState::normalized(combine(-1.0))?)
    };
    Ok(PairSpectrum {
        lambda1,
        lambda2,
        xi1,
        xi2,
        overlap_abs,
        phase_theta,
        degenerate,
    })
}

/// Entropic divergence `J_{alpha,beta}(rho, sigma)`.
pub fn jsd(rho: &DensityMatrix, sigma: &DensityMatrix, p: ParamPair) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let mid = DensityMatrix::midpoint(rho, sigma)?;
    Ok(quantum_entropy(&mid, p) - 0.5 * quantum_entropy(rho, p) - 0.5 * quantum_entropy(sigma, p))
}

/// Relative divergence `J'_{alpha,beta}(rho, sigma)`.
pub fn jsd_prime(rho: &DensityMatrix, sigma: &DensityMatrix, p: ParamPair) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let mid = DensityMatrix::midpoint(rho, sigma)?;
    let a = quantum_relative_entropy(rho, &mid, p)?.value;
    let b = quantum_relative_entropy(sigma, &mid, p)?.value;
    Ok(0.5 * (a + b))
}

/// Entropic divergence of two pure states from their overlap `s`:
/// the unified entropy of `((1+s)/2, (1-s)/2)`.
pub fn jsd_pure_from_overlap(s: f64, p: ParamPair) -> f64 {
    jsd_pure_from_defect(1.0 - s, p)
}

/// As [`jsd_pure_from_overlap`], taking `d = 1 - s` directly.
pub fn jsd_pure_from_defect(d: f64, p: ParamPair) -> f64 {
    let l2 = d / 2.0;
    let l1 = 1.0 - l2;
    unified_from_power_sum(pos_pow(l1, p.alpha()) + pos_pow(l2, p.alpha()), p)
}

/// Relative divergence of two pure states from their overlap `s`:
/// `(1 - (l1^{2-a} + l2^{2-a})^b) / ((1-a) b)`.
pub fn jsd_prime_pure_from_overlap(s: f64, p: ParamPair) -> f64 {
    jsd_prime_pure_from_defect(1.0 - s, p)
}

pub fn jsd_prime_pure_from_defect(d: f64, p: ParamPair) -> f64 {
    let l2 = d / 2.0;
    let l1 = 1.0 - l2;
    let e = 2.0 - p.alpha();
    let x = pos_pow(l1, e) + pos_pow(l2, e);
    (1.0 - x.powf(p.beta())) / p.denominator()
}

/// `x^e` for `x > 0`, zero otherwise (support convention).
fn pos_pow(x: f64, e: f64) -> f64 {
    if x > 0.0 {
        x.powf(e)
    } else {
        0.0
    }
}

pub fn jsd_pure(psi: &PureState, phi: &PureState, p: ParamPair) -> Result<f64> {
    let spec = pair_spectrum(psi, phi)?;
    Ok(jsd_pure_from_defect(2.0 * spec.lambda2, p))
}

pub fn jsd_prime_pure(psi: &PureState, phi: &PureState, p: ParamPair) -> Result<f64> {
    let spec = pair_spectrum(psi, phi)?;
    Ok(jsd_prime_pure_from_defect(2.0 * spec.lambda2, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, norm};
    use crate::random::Sampler;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn pp(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    fn plus() -> PureState {
        PureState::new(vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)]).unwrap()
    }

    #[test]
    fn pair_spectrum_examples() {
        let z = PureState::basis(2, 0);
        let s = pair_spectrum(&z, &z).unwrap();
        assert!(s.degenerate && s.xi2.is_none());
        assert_eq!((s.lambda1, s.lambda2), (1.0, 0.0));

        let s = pair_spectrum(&z, &PureState::basis(2, 1)).unwrap();
        assert_eq!((s.lambda1, s.lambda2), (0.5, 0.5));
        assert!(!s.degenerate);

        let s = pair_spectrum(&z, &plus()).unwrap();
        assert!((s.lambda1 - (1.0 + FRAC_1_SQRT_2) / 2.0).abs() < 1e-15);
        assert!((s.lambda1 - 0.853553).abs() < 1e-6);
    }

    #[test]
    fn pair_spectrum_matches_eigensolver() {
        let mut smp = Sampler::new(21);
        for dim in 2..=4 {
            for _ in 0..50 {
                let (a, b) = (smp.pure_state(dim), smp.pure_state(dim));
                let spec = pair_spectrum(&a, &b).unwrap();
                let mid = DensityMatrix::midpoint(&a.projector(), &b.projector()).unwrap();
                assert!(spec.reconstruct().max_abs_diff(mid.matrix()) < 1e-10);
                let e = eig_hermitian(mid.matrix()).unwrap();
                assert!((e.eigenvalues[0] - spec.lambda1).abs() < 1e-12);
                assert!((e.eigenvalues[1] - spec.lambda2).abs() < 1e-12);
                let xi2 = spec.xi2.as_ref().unwrap();
                assert!(inner(spec.xi1.amplitudes(), xi2.amplitudes()).norm() < 1e-10);
                assert!((norm(xi2.amplitudes()) - 1.0).abs() < 1e-12);
                assert!((spec.lambda1 + spec.lambda2 - 1.0).abs() < 1e-12);
                assert!(spec.phase_theta > -std::f64::consts::PI && spec.phase_theta <= std::f64::consts::PI);
            }
        }
    }

    #[test]
    fn jsd_examples() {
        let z = PureState::basis(2, 0).projector();
        let o = PureState::basis(2, 1).projector();
        let p = pp(2.0, 1.0);
        assert!(jsd(&z, &z, p).unwrap().abs() < 1e-14);
        assert!((jsd(&z, &o, p).unwrap() - 0.5).abs() < 1e-14);
        // lambda1^2 + lambda2^2 = (1 + s^2)/2 = 3/4, so J = 1 - 3/4
        assert!((jsd(&z, &plus().projector(), p).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn jsd_prime_examples() {
        let z = PureState::basis(2, 0).projector();
        let o = PureState::basis(2, 1).projector();
        assert!(jsd_prime(&z, &z, pp(0.5, 1.0)).unwrap().abs() < 1e-14);
        assert!((jsd_prime(&z, &o, pp(0.5, 1.0)).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-13);

        // alpha = 3/2, beta = 1: [1 - (l1^{1/2} + l2^{1/2})] / (-1/2)
        let l1 = (1.0 + FRAC_1_SQRT_2) / 2.0;
        let l2 = 1.0 - l1;
        let oracle = (1.0 - (l1.sqrt() + l2.sqrt())) / -0.5;
        let got = jsd_prime(&z, &plus().projector(), pp(1.5, 1.0)).unwrap();
        assert!((got - oracle).abs() < 1e-12);
    }

    #[test]
    fn pure_closed_forms() {
        let z = PureState::basis(2, 0);
        let o = PureState::basis(2, 1);
        assert!(jsd_pure(&z, &z, pp(0.3, 4.0)).unwrap().abs() < 1e-15);
        assert!((jsd_pure(&z, &o, pp(2.0, 2.0)).unwrap() - 0.375).abs() < 1e-15);
        let l1 = (1.0 + FRAC_1_SQRT_2) / 2.0;
        let oracle = (l1.sqrt() + (1.0 - l1).sqrt()).powi(2) - 1.0;
        assert!((jsd_pure(&z, &plus(), pp(0.5, 2.0)).unwrap() - oracle).abs() < 1e-14);

        assert!(jsd_prime_pure(&z, &z, pp(0.5, 1.0)).unwrap().abs() < 1e-15);
        assert!((jsd_prime_pure(&z, &o, pp(0.5, 1.0)).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        let p = pp(1.5, 0.5);
        let matrix = jsd_prime(&z.projector(), &plus().projector(), p).unwrap();
        assert!((jsd_prime_pure(&z, &plus(), p).unwrap() - matrix).abs() < 1e-10);
    }

    #[test]
    fn identical_states_with_large_alpha() {
        // lambda2 = 0 is dropped rather than raised to a negative power
        let z = PureState::basis(2, 0);
        assert!(jsd_prime_pure(&z, &z, pp(3.0, 1.0)).unwrap().abs() < 1e-15);
    }
}
