//! Magic quantifiers built from the two divergences.
//!
//! For a pure state both quantifiers depend only on the best stabilizer
//! overlap `c = max |<psi|phi>|`:
//!
//! ```text
//! M(psi) = ((l1^a + l2^a)^b - 1) / ((1-a) b)
//! m(psi) = (1 - (l1^{2-a} + l2^{2-a})^b) / ((1-a) b)      l_{1,2} = (1 +- c)/2
//! ```
//!
//! Mixed states only get an upper bound on the convex roof, from sampled
//! pure-state decompositions.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::entropy::binary_shannon_base2;
use crate::error::{Error, Result};
use crate::jsd::{jsd_prime_pure, jsd_prime_pure_from_defect, jsd_pure, jsd_pure_from_defect, jsd_pure_from_overlap};
use crate::linalg::{eig_hermitian, CMatrix};
use crate::params::ParamPair;
use crate::random::Sampler;
use crate::stabilizer::{max_overlap, qubit_robustness, stabilizer_fidelity, StabilizerSet};
use crate::state::{DensityMatrix, PureState};

/// `sqrt((3 + sqrt 3)/6)`: the best stabilizer overlap of a T-type state,
/// and the smallest value it takes over pure qubit states.
pub fn t_type_overlap() -> f64 {
    ((3.0 + 3f64.sqrt()) / 6.0).sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct MagicResult {
    pub value: f64,
    pub c_psi: f64,
    pub argmax_label: String,
    pub params: ParamPair,
}

/// `max_{phi in S} |<psi|phi>|` with the lowest-index witness and all ties.
#[derive(Debug, Clone, Serialize)]
pub struct BestOverlap {
    pub value: f64,
    #[serde(skip)]
    pub defect: f64,
    pub witness: String,
    pub ties: Vec<String>,
}

pub fn c_psi(psi: &PureState, set: &StabilizerSet) -> Result<BestOverlap> {
    let best = max_overlap(psi, set)?;
    Ok(BestOverlap {
        value: best.value,
        defect: best.defect,
        witness: best.label,
        ties: best.ties.iter().map(|&i| set.labels[i].clone()).collect(),
    })
}

/// Magic from the entropic divergence.
pub fn magic_entropic(psi: &PureState, p: ParamPair, set: &StabilizerSet) -> Result<MagicResult> {
    let best = c_psi(psi, set)?;
    Ok(MagicResult {
        value: jsd_pure_from_defect(best.defect, p),
        c_psi: best.value,
        argmax_label: best.witness,
        params: p,
    })
}

/// Magic from the relative divergence.
pub fn magic_relative(psi: &PureState, p: ParamPair, set: &StabilizerSet) -> Result<MagicResult> {
    let best = c_psi(psi, set)?;
    Ok(MagicResult {
        value: jsd_prime_pure_from_defect(best.defect, p),
        c_psi: best.value,
        argmax_label: best.witness,
        params: p,
    })
}

/// `min_{phi in S} J(psi, phi)` evaluated state by state.
pub fn magic_entropic_brute_force(psi: &PureState, p: ParamPair, set: &StabilizerSet) -> Result<f64> {
    if psi.dim() != set.dim() {
        return Err(Error::DimMismatch(psi.dim(), set.dim()));
    }
    set.states
        .iter()
        .map(|phi| jsd_pure(psi, phi, p))
        .try_fold(f64::INFINITY, |acc, v| v.map(|v| acc.min(v)))
}

/// `min_{phi in S} J'(psi, phi)` evaluated state by state.
pub fn magic_relative_brute_force(psi: &PureState, p: ParamPair, set: &StabilizerSet) -> Result<f64> {
    if psi.dim() != set.dim() {
        return Err(Error::DimMismatch(psi.dim(), set.dim()));
    }
    set.states
        .iter()
        .map(|phi| jsd_prime_pure(psi, phi, p))
        .try_fold(f64::INFINITY, |acc, v| v.map(|v| acc.min(v)))
}

/// Best qubit stabilizer overlap of `cos(t/2)|0> + e^{i p} sin(t/2)|1>`,
/// from the six closed-form overlaps.
pub fn qubit_qmax(theta: f64, phi: f64) -> f64 {
    let s = theta.sin();
    [
        (theta / 2.0).cos().abs(),
        (theta / 2.0).sin().abs(),
        ((1.0 + s * phi.cos()) / 2.0).max(0.0).sqrt(),
        ((1.0 - s * phi.cos()) / 2.0).max(0.0).sqrt(),
        ((1.0 + s * phi.sin()) / 2.0).max(0.0).sqrt(),
        ((1.0 - s * phi.sin()) / 2.0).max(0.0).sqrt(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Upper bound on `M` over pure qubit states, attained at T-type states.
pub fn qubit_magic_bound(p: ParamPair) -> f64 {
    jsd_pure_from_overlap(t_type_overlap(), p)
}

/// Knobs for the mixed-state upper bound.
#[derive(Debug, Clone, Copy)]
pub struct MixedBoundOptions {
    pub trials: usize,
    pub seed: u64,
    /// Decomposition length is `rank + extra_terms`.
    pub extra_terms: usize,
    /// Also try an exact decomposition into stabilizer projectors.
    pub stabilizer_candidate: bool,
}

impl Default for MixedBoundOptions {
    fn default() -> Self {
        Self {
            trials: 200,
            seed: 0,
            extra_terms: 0,
            stabilizer_candidate: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedBound {
    /// Smallest average magic over the candidate decompositions.
    pub value: f64,
    /// Average magic of the eigendecomposition.
    pub eigen_baseline: f64,
    /// A decomposition into stabilizer projectors was found.
    pub stabilizer_decomposition: bool,
    /// Running minimum after each randomized trial (trial 0 = eigendecomposition).
    pub history: Vec<f64>,
}

/// Heuristic upper bound on the convex-roof magic of a mixed state.
///
/// Every decomposition of `rho` of length `K` is `v_j = sum_i U_{ji}
/// sqrt(l_i) e_i` for a `K x r` isometry `U`; trials draw Haar isometries.
pub fn magic_mixed_upper_bound(
    rho: &DensityMatrix,
    p: ParamPair,
    set: &StabilizerSet,
    opts: MixedBoundOptions,
) -> Result<MixedBound> {
    if rho.dim() != set.dim() {
        return Err(Error::DimMismatch(rho.dim(), set.dim()));
    }
    let trials = opts.trials.max(1);
    let spec = eig_hermitian(rho.matrix())?;
    let cut = spec.support_threshold().max(1e-14);
    let support: Vec<usize> = (0..spec.eigenvalues.len())
        .filter(|&k| spec.eigenvalues[k] > cut)
        .collect();
    let weighted: Vec<Vec<C64>> = support
        .iter()
        .map(|&k| {
            let s = spec.eigenvalues[k].sqrt();
            spec.eigenvector(k).into_iter().map(|z| z * s).collect()
        })
        .collect();
    let rank = weighted.len();

    let average = |vectors: &[Vec<C64>]| -> Result<f64> {
        let mut acc = 0.0;
        for v in vectors {
            let w: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if w <= 1e-300 {
                continue;
            }
            let psi = PureState::normalized(v.clone())?;
            acc += w * magic_entropic(&psi, p, set)?.value;
        }
        Ok(acc)
    };

    let eigen_baseline = average(&weighted)?;
    if rank == 1 {
        return Ok(MixedBound {
            value: eigen_baseline,
            eigen_baseline,
            stabilizer_decomposition: false,
            history: vec![eigen_baseline; trials],
        });
    }

    let mut best = eigen_baseline;
    let mut history = Vec::with_capacity(trials);
    history.push(best);
    let mut sampler = Sampler::new(opts.seed);
    let len = rank + opts.extra_terms;
    for _ in 1..trials {
        let cols = sampler.orthonormal_columns(len, rank);
        let vectors: Vec<Vec<C64>> = (0..len)
            .map(|j| {
                let mut v = vec![C64::new(0.0, 0.0); rho.dim()];
                for (i, w) in weighted.iter().enumerate() {
                    let u = cols[i][j];
                    for (vk, wk) in v.iter_mut().zip(w) {
                        *vk += u * wk;
                    }
                }
                v
            })
            .collect();
        best = best.min(average(&vectors)?);
        history.push(best);
    }

    let mut stabilizer_decomposition = false;
    if opts.stabilizer_candidate {
        if let Some(weights) = stabilizer_decomposition_weights(rho, set) {
            let mut acc = 0.0;
            for (w, phi) in weights.iter().zip(&set.states) {
                if *w > 0.0 {
                    acc += w * magic_entropic(phi, p, set)?.value;
                }
            }
            stabilizer_decomposition = true;
            best = best.min(acc);
        }
    }

    Ok(MixedBound {
        value: best,
        eigen_baseline,
        stabilizer_decomposition,
        history,
    })
}

/// Upper bound for the mixture `sum_j p_j |psi_j><psi_j|`, with the given
/// ensemble itself among the candidate decompositions.
pub fn magic_mixed_upper_bound_from_ensemble(
    ensemble: &[(f64, PureState)],
    p: ParamPair,
    set: &StabilizerSet,
    opts: MixedBoundOptions,
) -> Result<MixedBound> {
    let projectors: Vec<DensityMatrix> = ensemble.iter().map(|(_, s)| s.projector()).collect();
    let parts: Vec<(f64, &DensityMatrix)> = ensemble
        .iter()
        .zip(&projectors)
        .map(|((w, _), proj)| (*w, proj))
        .collect();
    let rho = DensityMatrix::mixture(&parts)?;
    let mut bound = magic_mixed_upper_bound(&rho, p, set, opts)?;
    let mut own = 0.0;
    for (w, psi) in ensemble {
        own += w * magic_entropic(psi, p, set)?.value;
    }
    if own < bound.value {
        bound.value = own;
        if let Some(last) = bound.history.last_mut() {
            *last = own;
        }
    }
    Ok(bound)
}

/// Non-negative weights `w` with `sum_j w_j |phi_j><phi_j| = rho`, if the LP
/// is feasible and the reconstruction is accurate.
pub fn stabilizer_decomposition_weights(rho: &DensityMatrix, set: &StabilizerSet) -> Option<Vec<f64>> {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};

    let d = rho.dim();
    let projectors: Vec<CMatrix> = set.states.iter().map(|s| CMatrix::outer(s.amplitudes())).collect();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = projectors
        .iter()
        .map(|_| lp.add_var(0.0, (0.0, f64::INFINITY)))
        .collect();
    let target = rho.matrix();
    for i in 0..d {
        for j in i..d {
            let re: Vec<_> = vars.iter().zip(&projectors).map(|(&v, m)| (v, m[(i, j)].re)).collect();
            lp.add_constraint(re.as_slice(), ComparisonOp::Eq, target[(i, j)].re);
            if i != j {
                let im: Vec<_> = vars.iter().zip(&projectors).map(|(&v, m)| (v, m[(i, j)].im)).collect();
                lp.add_constraint(im.as_slice(), ComparisonOp::Eq, target[(i, j)].im);
            }
        }
    }
    let sol = lp.solve().ok()?;
    let weights: Vec<f64> = vars.iter().map(|&v| sol[v].max(0.0)).collect();
    let mut recon = CMatrix::zeros(d);
    for (w, m) in weights.iter().zip(&projectors) {
        recon = &recon + &m.scale_real(*w);
    }
    (recon.max_abs_diff(target) <= 1e-8).then_some(weights)
}

/// Root of `l = (1 - l) 16^{2l - 1}` in `(1/2, 1)` and the constant
/// `t0 = (2 l - 1)^2 + H2(l)` built from it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TradeoffConstants {
    pub lambda0: f64,
    pub t0: f64,
}

impl TradeoffConstants {
    pub fn residual(&self) -> f64 {
        stationarity(self.lambda0)
    }
}

fn stationarity(l: f64) -> f64 {
    l - (1.0 - l) * 16f64.powf(2.0 * l - 1.0)
}

pub fn tradeoff_constants() -> TradeoffConstants {
    // l = 1/2 is a trivial root; the function is negative on (1/2, 0.9)
    // and positive at 1, so bracket away from it.
    let (mut lo, mut hi) = (0.75, 1.0);
    debug_assert!(stationarity(lo) < 0.0 && stationarity(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if stationarity(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda0 = if stationarity(lo).abs() < stationarity(hi).abs() {
        lo
    } else {
        hi
    };
    TradeoffConstants {
        lambda0,
        t0: (2.0 * lambda0 - 1.0).powi(2) + binary_shannon_base2(lambda0),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TradeoffCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
    pub magic: f64,
    pub robustness: f64,
    pub fidelity: f64,
}

/// Checks `M(psi) + 1/(1 + R(psi)) <= t0` for a qubit pure state, `beta > 1`.
pub fn tradeoff_bound_check(psi: &PureState, p: ParamPair, constants: &TradeoffConstants) -> Result<TradeoffCheck> {
    if psi.dim() != 2 {
        return Err(Error::DimMismatch(psi.dim(), 2));
    }
    if p.beta() <= 1.0 {
        return Err(Error::BadParams(format!("beta = {} must exceed 1", p.beta())));
    }
    let set = StabilizerSet::new(2, 1)?;
    let magic = magic_entropic(psi, p, &set)?.value;
    let robustness = qubit_robustness(&psi.projector())?.value;
    let fidelity = stabilizer_fidelity(psi, &set)?.fidelity;
    let lhs = magic + 1.0 / (1.0 + robustness);
    Ok(TradeoffCheck {
        lhs,
        rhs: constants.t0,
        ok: lhs <= constants.t0 + 1e-9,
        magic,
        robustness,
        fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{qutrit_t_state, t_type_state};
    use std::f64::consts::PI;

    fn pp(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    #[test]
    fn c_psi_examples() {
        let q = StabilizerSet::new(2, 1).unwrap();
        let r = c_psi(&PureState::basis(2, 1), &q).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witness, "|1⟩");
        let r = c_psi(&t_type_state(0, 0), &q).unwrap();
        assert!((r.value - t_type_overlap()).abs() < 1e-12);
        assert!((r.value - 0.888074).abs() < 1e-6);
    }

    #[test]
    fn qutrit_t_overlap_witnesses() {
        let s = StabilizerSet::new(3, 1).unwrap();
        let r = c_psi(&qutrit_t_state(), &s).unwrap();
        assert_eq!(r.ties, vec!["ψ_{0,0}", "ψ_{0,2}", "ψ_{2,2}"]);
        assert_eq!(r.witness, "ψ_{0,0}");
        // |1 + 2 cos(2 pi / 9)| / 3 from <psi_00|T>
        let oracle = (1.0 + 2.0 * (2.0 * PI / 9.0).cos()) / 3.0;
        assert!((r.value - oracle).abs() < 1e-12);
    }

    #[test]
    fn magic_examples() {
        let q = StabilizerSet::new(2, 1).unwrap();
        for s in &q.states {
            assert!(magic_entropic(s, pp(0.5, 2.0), &q).unwrap().value.abs() < 1e-15);
            assert!(magic_relative(s, pp(1.5, -1.0), &q).unwrap().value.abs() < 1e-15);
        }
        let l1 = (1.0 + t_type_overlap()) / 2.0;
        let oracle = (l1.sqrt() + (1.0 - l1).sqrt()).powi(2) - 1.0;
        let got = magic_entropic(&t_type_state(0, 0), pp(0.5, 2.0), &q).unwrap();
        assert!((got.value - oracle).abs() < 1e-12);
        assert!((got.value - 0.459701).abs() < 1e-6);

        let m = magic_relative(&t_type_state(0, 0), pp(1.5, 1.0), &q).unwrap().value;
        let dual = magic_entropic(&t_type_state(0, 0), pp(0.5, 1.0), &q).unwrap().value;
        assert!((m - dual).abs() < 1e-12);
    }

    #[test]
    fn qutrit_t_magic() {
        // pipeline oracle from the directly computed overlap
        let s = StabilizerSet::new(3, 1).unwrap();
        let c = (1.0 + 2.0 * (2.0 * PI / 9.0).cos()) / 3.0;
        let l1 = (1.0 + c) / 2.0;
        let oracle = (l1.sqrt() + (1.0 - l1).sqrt()).powi(2) - 1.0;
        let got = magic_entropic(&qutrit_t_state(), pp(0.5, 2.0), &s).unwrap().value;
        assert!((got - oracle).abs() < 1e-12);
        assert!((got - 0.536296).abs() < 1e-6);
    }

    #[test]
    fn qmax_examples() {
        assert!((qubit_qmax(0.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((qubit_qmax(PI / 2.0, 0.0) - 1.0).abs() < 1e-15);
        let t = (1.0 / 3f64.sqrt()).acos();
        assert!((qubit_qmax(t, PI / 4.0) - t_type_overlap()).abs() < 1e-12);
        let q = StabilizerSet::new(2, 1).unwrap();
        for (th, ph) in [(0.3, 1.1), (2.0, 5.0), (1.2, 3.3)] {
            let c = c_psi(&PureState::bloch(th, ph), &q).unwrap().value;
            assert!((qubit_qmax(th, ph) - c).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_force_matches_closed_form() {
        let q = StabilizerSet::new(2, 1).unwrap();
        let mut s = Sampler::new(4);
        for _ in 0..50 {
            let psi = s.pure_state(2);
            for p in [pp(0.5, 2.0), pp(1.7, -0.5), pp(3.0, 0.4)] {
                let a = magic_entropic(&psi, p, &q).unwrap().value;
                let b = magic_entropic_brute_force(&psi, p, &q).unwrap();
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mixed_bound_pure_input_is_exact() {
        let q = StabilizerSet::new(2, 1).unwrap();
        let psi = t_type_state(0, 1);
        let p = pp(1.5, 0.5);
        let b = magic_mixed_upper_bound(
            &psi.projector(),
            p,
            &q,
            MixedBoundOptions {
                trials: 17,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((b.value - magic_entropic(&psi, p, &q).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn mixed_bound_stabilizer_state_vanishes() {
        let q = StabilizerSet::new(2, 1).unwrap();
        let rho = DensityMatrix::from_diag(&[0.7, 0.3]).unwrap();
        let rho = rho.conjugate_by(&Sampler::new(2).unitary(2)).unwrap();
        let inside = crate::stabilizer::qubit_is_stabilizer(&rho).unwrap();
        let b = magic_mixed_upper_bound(&rho, pp(0.5, 2.0), &q, MixedBoundOptions::default()).unwrap();
        if inside {
            assert!(b.value <= 1e-6);
            assert!(b.stabilizer_decomposition);
        }
        assert!(b.value <= b.eigen_baseline);
        assert!(b.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn tradeoff_root() {
        let c = tradeoff_constants();
        assert!(c.residual().abs() <= 1e-12);
        assert!((c.lambda0 - 0.9036257791953972).abs() < 1e-12);
        assert!((c.t0 - 1.1090507037296855).abs() < 1e-12);
    }

    #[test]
    fn tradeoff_checks() {
        let c = tradeoff_constants();
        let r = tradeoff_bound_check(&PureState::basis(2, 0), pp(1.5, 2.0), &c).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15 && r.ok);
        let r = tradeoff_bound_check(&t_type_state(0, 0), pp(1.5, 2.0), &c).unwrap();
        assert!(r.ok);
        assert!(tradeoff_bound_check(&t_type_state(0, 0), pp(1.5, 1.0), &c).is_err());
    }
}
